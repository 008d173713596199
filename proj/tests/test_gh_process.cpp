#include "ghshot/gh_process.hpp"
#include "ghshot/oracle_stats.hpp"
#include "support.hpp"

#include <doctest.h>

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <numeric>

using namespace ghshot;

namespace {

GHParams nig(double beta = 0.0)
{
    GHParams p;
    p.gig = {-0.5, 1.0, 1.0};
    p.beta = beta;
    return p;
}

}  // namespace

TEST_CASE("GIG jumps map to normal mixture jumps")
{
    RandomStream rng(41);
    JumpSet g;
    for (int i = 0; i < 50000; ++i)
        g.sizes.push_back(std::exp(4.0 * rng.uniform() - 3.0));
    g.times.assign(g.sizes.size(), 0.25);
    GHParams p = nig(2.0);
    p.sigma = 0.7;
    p.mu = 0.1;
    const JumpSet w = gh_jumps_from_gig(g, p, rng);
    REQUIRE(w.size() == g.size());
    CHECK(w.times == g.times);

    std::vector<double> z(w.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        z[i] = (w.sizes[i] - p.mu - p.beta * g.sizes[i]) / (p.sigma * std::sqrt(g.sizes[i]));
    boost::math::normal_distribution<> std_normal;
    const double d = testing::ks_one_sample(z, [&](double v) { return boost::math::cdf(std_normal, v); });
    CHECK(d < 1.63 / std::sqrt(double(z.size())));

    // Least-squares slope of w on x.
    const double mx = testing::mean(g.sizes), mw = testing::mean(w.sizes);
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        sxy += (g.sizes[i] - mx) * (w.sizes[i] - mw);
        sxx += (g.sizes[i] - mx) * (g.sizes[i] - mx);
    }
    CHECK(std::abs(sxy / sxx - 2.0) < 0.05);

    JumpSet bad;
    bad.sizes = {0.0};
    bad.times = {0.0};
    CHECK_THROWS(gh_jumps_from_gig(bad, p, rng));
}

TEST_CASE("alpha parameterisation")
{
    const GHParams p = GHParams::from_alpha(-0.8, 2.0, 1.2, 0.5, 0.3);
    CHECK(p.gig.gamma == doctest::Approx(1.6).epsilon(1e-14));
    CHECK(p.alpha() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(p.sigma == 1.0);
    CHECK(p.mu == 0.3);
    CHECK_THROWS(GHParams::from_alpha(-0.8, 1.0, 1.0, 0.5));
    CHECK_THROWS(GHParams::from_alpha(-0.8, 1.0, -2.0, 0.5));
}

TEST_CASE("validation and location warning")
{
    GHParams p = nig();
    CHECK_NOTHROW(validate(p));
    CHECK_FALSE(parameter_warning(p).has_value());
    p.mu = 0.2;
    CHECK(parameter_warning(p).has_value());
    p.sigma = 0.0;
    CHECK_THROWS(validate(p));
    p.sigma = 1.0;
    p.beta = NAN;
    CHECK_THROWS(validate(p));
}

TEST_CASE("path values on a grid")
{
    TruncationConfig tc;
    const GHParams p = nig(0.5);
    const EnvelopeConfig cfg = default_envelope(p.gig);
    RandomStream rng(42);
    for (int i = 0; i < 50; ++i) {
        const GHPath path = simulate_gh_path(p, tc, cfg, 2.0, rng);
        CHECK(path_values(path, {0.0}, rng) == std::vector<double>{0.0});
        const auto v = path_values(path, {0.0, 2.0}, rng);
        REQUIRE(v.size() == 2);
        CHECK(v[0] == 0.0);
        CHECK(std::isfinite(v[1]));
        for (double t : path.jumps.times)
            REQUIRE((t >= 0.0 && t <= 2.0));
        CHECK_THROWS(path_values(path, {0.0, 2.5}, rng));
        CHECK_THROWS(path_values(path, {-0.1}, rng));
        CHECK_THROWS(path_values(path, {1.0, 0.5}, rng));
    }

    tc.inject_residual = false;
    const GHPath path = simulate_gh_path(p, tc, cfg, 1.0, rng);
    const double jumps = std::accumulate(path.jumps.sizes.begin(), path.jumps.sizes.end(), 0.0);
    CHECK(path_values(path, {1.0}, rng)[0] == doctest::Approx(jumps).epsilon(1e-12));
    CHECK(path_endpoint(path, rng) == doctest::Approx(jumps).epsilon(1e-12));
}

TEST_CASE("increments over disjoint halves are independent and identically distributed")
{
    TruncationConfig tc;
    const GHParams p = nig(0.5);
    const EnvelopeConfig cfg = default_envelope(p.gig);
    const int n = 5000;
    std::vector<double> first(n), second(n);
    for (int i = 0; i < n; ++i) {
        RandomStream rng(43, StreamKind::path, i);
        const GHPath path = simulate_gh_path(p, tc, cfg, 2.0, rng);
        const auto v = path_values(path, {1.0, 2.0}, rng);
        first[i] = v[0];
        second[i] = v[1] - v[0];
    }
    const double m1 = testing::mean(first), m2 = testing::mean(second);
    double cov = 0;
    for (int i = 0; i < n; ++i)
        cov += (first[i] - m1) * (second[i] - m2);
    const double corr = cov / (n * std::sqrt(testing::variance(first) * testing::variance(second)));
    CHECK(std::abs(corr) < 4 / std::sqrt(double(n)));
    CHECK(ks_two_sample(first, second) < testing::ks_critical(0.01, n, n));
}

TEST_CASE("vanishing sigma with unit beta reproduces the subordinator")
{
    TruncationConfig tc;
    tc.inject_residual = false;
    GHParams p = nig(1.0);
    p.sigma = 1e-12;
    const EnvelopeConfig cfg = default_envelope(p.gig);
    RandomStream a(44), b(44);
    for (int i = 0; i < 20; ++i) {
        const GigSample g = sample_gig(p.gig, tc, cfg, a);
        const double want = std::accumulate(g.jumps.sizes.begin(), g.jumps.sizes.end(), 0.0);
        const GHPath path = simulate_gh_path(p, tc, cfg, 1.0, b);
        const double got = std::accumulate(path.jumps.sizes.begin(), path.jumps.sizes.end(), 0.0);
        CHECK(got == doctest::Approx(want).epsilon(1e-9));
        // Keep the two streams aligned: the path also drew times and normals.
        a = b;
    }
}

TEST_CASE("symmetric process has zero mean")
{
    TruncationConfig tc;
    const GHParams p = nig();
    const EnvelopeConfig cfg = default_envelope(p.gig);
    const int n = 20000;
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
        RandomStream rng(45, StreamKind::path, i);
        w[i] = path_endpoint(simulate_gh_path(p, tc, cfg, 1.0, rng), rng);
    }
    // Var W(1) = E U = delta / gamma for the inverse Gaussian subordinator.
    CHECK(std::abs(testing::mean(w)) < 4 * std::sqrt(1.0 / n));
}
