#include "ghshot/batch.hpp"
#include "ghshot/oracle_stats.hpp"
#include "support.hpp"

#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace ghshot;

namespace {

constexpr double kPi = std::numbers::pi;

// std::cyl_bessel_k rejects negative orders; K is even in the order.
double bessel_k(double nu, double z) { return std::cyl_bessel_k(std::abs(nu), z); }

// E[U^k] for U ~ GIG(lambda, delta, gamma).
double gig_moment(const GigParams& p, int k)
{
    const double w = p.delta * p.gamma;
    return std::pow(p.delta / p.gamma, k) * bessel_k(p.lambda + k, w) / bessel_k(p.lambda, w);
}

double pdf_integral(const GHParams& p, double a, double b)
{
    using gk = boost::math::quadrature::gauss_kronrod<double, 61>;
    return gk::integrate([&](double x) { return gh_pdf(p, x); }, a, b, 15, 1e-12);
}

double pdf_total(const GHParams& p)
{
    boost::math::quadrature::exp_sinh<double> es;
    auto f = [&](double x) { return gh_pdf(p, x); };
    return es.integrate(f, p.mu, INFINITY, 1e-13) +
           es.integrate([&](double t) { return f(2 * p.mu - t); }, p.mu, INFINITY, 1e-13);
}

}  // namespace

TEST_CASE("inverse Gaussian mean")
{
    RandomStream rng(51);
    const GigParams p{-0.5, 1.0, 2.0};
    std::vector<double> u(100000);
    for (double& v : u)
        v = gig_variate(p, rng);
    // Var = delta / gamma^3.
    CHECK(std::abs(testing::mean(u) - 0.5) < 4 * std::sqrt(0.125 / u.size()));
}

TEST_CASE("GIG moments on a parameter grid")
{
    const GigParams grid[] = {{-2.5, 1.0, 0.5}, {-0.8, 1.0, 0.1}, {-0.3, 0.5, 1.0},
                              {0.4, 1.0, 1.0},  {1.5, 2.0, 1.0},  {3.0, 0.2, 4.0}};
    for (const GigParams& p : grid) {
        RandomStream rng(52);
        std::vector<double> u(100000);
        for (double& v : u)
            v = gig_variate(p, rng);
        const double m1 = gig_moment(p, 1), m2 = gig_moment(p, 2);
        const double se = std::sqrt((m2 - m1 * m1) / u.size());
        CAPTURE(p.lambda);
        CHECK(std::abs(testing::mean(u) - m1) < 4 * se);
        std::vector<double> sq(u.size());
        for (std::size_t i = 0; i < u.size(); ++i)
            sq[i] = u[i] * u[i];
        CHECK(std::abs(testing::mean(sq) - m2) < 4 * std::sqrt(testing::variance(sq) / sq.size()));
    }
}

TEST_CASE("both standard GIG generators agree")
{
    for (double lambda : {0.0, 0.3, 1.0, 2.5})
        for (double omega : {0.05, 0.6, 3.0}) {
            RandomStream r1(53), r2(54);
            const int n = 20000;
            std::vector<double> a(n), b(n);
            for (int i = 0; i < n; ++i) {
                a[i] = gig_standard_devroye(lambda, omega, r1);
                b[i] = gig_standard_hormann_leydold(lambda, omega, r2);
            }
            CAPTURE(lambda);
            CAPTURE(omega);
            CHECK(ks_two_sample(a, b) < testing::ks_critical(0.01, n, n));
            const double m = std::cyl_bessel_k(lambda + 1, omega) / std::cyl_bessel_k(lambda, omega);
            CHECK(testing::rel_err(testing::mean(a), m) < 0.05);
        }
    RandomStream rng(55);
    CHECK_THROWS(gig_standard_devroye(-0.1, 1.0, rng));
    CHECK_THROWS(gig_standard_hormann_leydold(0.5, 0.0, rng));
}

TEST_CASE("zero gamma gives the reciprocal gamma law")
{
    RandomStream rng(56);
    const GigParams p{-2.5, std::sqrt(5.0), 0.0};
    std::vector<double> u(50000);
    for (double& v : u)
        v = gig_variate(p, rng);
    // P(U <= u) = P(G >= delta^2 / (2u)), G ~ Gamma(2.5, 1).
    const double d = testing::ks_one_sample(u, [&](double x) {
        return boost::math::gamma_q(2.5, p.delta * p.delta / (2 * x));
    });
    CHECK(d < 1.63 / std::sqrt(double(u.size())));
}

TEST_CASE("GH variates: symmetry and skew")
{
    const int n = 100000;
    for (double beta : {0.0, 1.5}) {
        GHParams p;
        p.gig = {-0.8, 1.0, 1.0};
        p.beta = beta;
        RandomStream rng(57);
        std::vector<double> w(n);
        for (double& v : w)
            v = gh_variate(p, rng);
        const double m = testing::mean(w), sd = std::sqrt(testing::variance(w));
        std::vector<double> cubes(n);
        for (int i = 0; i < n; ++i)
            cubes[i] = std::pow((w[i] - m) / sd, 3);
        const double skew = testing::mean(cubes);
        const double skew_se = std::sqrt(testing::variance(cubes) / n);
        const double eu = gig_moment(p.gig, 1);
        CAPTURE(beta);
        CHECK(std::abs(m - beta * eu) < 4 * sd / std::sqrt(double(n)));
        if (beta == 0.0)
            CHECK(std::abs(skew) < 4 * skew_se);
        else
            CHECK(skew > 4 * skew_se);
    }
}

TEST_CASE("vanishing sigma reduces to the GIG variate")
{
    GHParams p;
    p.gig = {-0.8, 1.0, 0.4};
    p.beta = 1.0;
    p.sigma = 1e-14;
    RandomStream a(60), b(60);
    for (int i = 0; i < 100; ++i) {
        const double u = gig_variate(p.gig, a);
        a.normal();
        CHECK(gh_variate(p, b) == doctest::Approx(u).epsilon(1e-12));
    }
}

TEST_CASE("GH density integrates to one")
{
    std::vector<GHParams> cases;
    for (double lambda : {-2.5, -0.8, -0.5, 0.4, 2.0})
        for (double beta : {0.0, 0.7}) {
            GHParams p;
            p.gig = {lambda, 0.8, 1.3};
            p.beta = beta;
            p.mu = 0.2;
            p.sigma = 1.1;
            cases.push_back(p);
        }
    GHParams t;
    t.gig = {-2.5, std::sqrt(5.0), 0.0};
    cases.push_back(t);
    t.beta = 0.6;
    cases.push_back(t);
    for (const GHParams& p : cases) {
        CAPTURE(p.gig.lambda);
        CAPTURE(p.beta);
        CHECK(std::abs(pdf_total(p) - 1.0) < 1e-6);
    }

    const GHParams sym = GHParams::from_alpha(-0.8, 1.0, 0.0, 1.0);
    CHECK(std::abs(pdf_integral(sym, -50.0, 50.0) - 1.0) < 1e-6);
    for (double d : {0.1, 1.0, 7.0})
        CHECK(gh_pdf(sym, d) == gh_pdf(sym, -d));
}

TEST_CASE("normal inverse Gaussian closed form")
{
    const GHParams p = GHParams::from_alpha(-0.5, 2.0, 0.8, 1.3, 0.1);
    const double alpha = 2.0, beta = 0.8, delta = 1.3, gamma = p.gig.gamma;
    for (double x : {-4.0, -1.0, 0.1, 0.5, 3.0, 9.0}) {
        const double q = std::sqrt(delta * delta + (x - 0.1) * (x - 0.1));
        const double want = alpha * delta * std::cyl_bessel_k(1.0, alpha * q) / (kPi * q) *
                            std::exp(delta * gamma + beta * (x - 0.1));
        CAPTURE(x);
        CHECK(testing::rel_err(gh_pdf(p, x), want) < 1e-10);
    }
}

TEST_CASE("GH density against sampled histogram")
{
    GHParams p;
    p.gig = {1.5, 2.0, 1.0};
    p.beta = -0.4;
    RandomStream rng(58);
    const int n = 100000;
    std::vector<double> w(n);
    for (double& v : w)
        v = gh_variate(p, rng);
    // 50 equal-width bins on [-6, 4] with both tails folded into the end bins.
    const int bins = 50;
    const double lo = -6.0, hi = 4.0, h = (hi - lo) / bins;
    std::vector<int> count(bins);
    for (double v : w)
        ++count[std::clamp(int(std::floor((v - lo) / h)), 0, bins - 1)];
    double chi2 = 0;
    for (int k = 0; k < bins; ++k) {
        const double a = k == 0 ? -80.0 : lo + k * h;
        const double b = k == bins - 1 ? 80.0 : lo + (k + 1) * h;
        const double e = n * pdf_integral(p, a, b);
        REQUIRE(e > 5);
        chi2 += (count[k] - e) * (count[k] - e) / e;
    }
    CHECK(chi2 < testing::chi2_critical(bins - 1, 0.01));
}

TEST_CASE("exact variates agree with simulated path endpoints")
{
    BatchSpec spec;
    spec.params.gig = {-0.5, 1.0, 1.0};
    spec.params.beta = 0.5;
    spec.envelope = default_envelope(spec.params.gig);
    spec.seed = 61;
    const int n = 10000;
    const auto sim = endpoint_batch(spec, n);
    const auto ref = oracle_batch(spec.params, spec.seed, n);
    CHECK(ks_two_sample(sim, ref) < testing::ks_critical(0.01, n, n));
}

TEST_CASE("two-sample KS statistic")
{
    CHECK(ks_two_sample({1, 2, 3}, {3, 1, 2}) == 0.0);
    CHECK(ks_two_sample({0}, {1}) == 1.0);
    CHECK(ks_two_sample({0, 1}, {1}) == doctest::Approx(0.5));
    CHECK_THROWS(ks_two_sample({}, {1}));

    RandomStream rng(59);
    const int n = 10000;
    int below = 0;
    for (int r = 0; r < 100; ++r) {
        std::vector<double> a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = rng.normal();
            b[i] = rng.normal();
        }
        below += ks_two_sample(a, b) < 1.95 * std::sqrt(2.0 / n);
    }
    CHECK(below >= 95);
}

TEST_CASE("quantile pairs")
{
    std::vector<double> a(1000), b(1000);
    for (int i = 0; i < 1000; ++i) {
        a[i] = i;
        b[999 - i] = i + 5.0;
    }
    const auto qq = qq_points(a, b, 50);
    REQUIRE(qq.size() == 50);
    for (auto [x, y] : qq)
        CHECK(y - x == doctest::Approx(5.0));
    CHECK(qq.front().first < qq.back().first);
    for (auto [x, y] : qq_points(a, a, 10))
        CHECK(x == y);
    std::vector<double> twice(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        twice[i] = 2 * a[i];
    for (auto [x, y] : qq_points(a, twice, 20))
        CHECK(y == doctest::Approx(2 * x));
    CHECK_THROWS(qq_points({}, a, 10));
}
