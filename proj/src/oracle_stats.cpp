#include "ghshot/oracle_stats.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ghshot {

namespace {

constexpr double kPi = std::numbers::pi;

// log K_nu(z) + z, switching to the large-argument expansion where K underflows.
double log_bessel_k_scaled(double nu, double z)
{
    nu = std::abs(nu);
    if (z < 600.0)
        return std::log(boost::math::cyl_bessel_k(nu, z)) + z;
    const double mu = 4.0 * nu * nu;
    const double e = 1.0 + (mu - 1.0) / (8.0 * z) + (mu - 1.0) * (mu - 9.0) / (128.0 * z * z);
    return 0.5 * std::log(kPi / (2.0 * z)) + std::log(e);
}

double log_bessel_k(double nu, double z) { return log_bessel_k_scaled(nu, z) - z; }

// beta d - |beta| q with q = sqrt(delta^2 + d^2), without cancellation when beta and d
// share a sign.
double skew_exponent(double beta, double d, double q, double delta)
{
    const double ad = std::abs(d);
    if (beta * d > 0.0)
        return -std::abs(beta) * delta * delta / (q + ad);
    return -std::abs(beta) * (q + ad);
}

double gig_mode(double lambda, double omega)
{
    if (lambda >= 1.0)
        return (std::sqrt((lambda - 1.0) * (lambda - 1.0) + omega * omega) + (lambda - 1.0)) / omega;
    return omega / (std::sqrt((1.0 - lambda) * (1.0 - lambda) + omega * omega) + (1.0 - lambda));
}

// Ratio-of-uniforms with mode shift; lambda >= 1 or omega > 1.
double rou_shift(double lambda, double omega, RandomStream& rng)
{
    const double t = 0.5 * (lambda - 1.0);
    const double s = 0.25 * omega;
    const double xm = gig_mode(lambda, omega);
    const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);

    // Roots of the cubic giving the extent of the bounding rectangle.
    const double a = -(2.0 * (lambda + 1.0) / omega + xm);
    const double b = 2.0 * (lambda - 1.0) * xm / omega - 1.0;
    const double c = xm;
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double fi = std::acos(-q / (2.0 * std::sqrt(-p * p * p / 27.0)));
    const double fak = 2.0 * std::sqrt(-p / 3.0);
    const double y1 = fak * std::cos(fi / 3.0) - a / 3.0;
    const double y2 = fak * std::cos(fi / 3.0 + 4.0 / 3.0 * kPi) - a / 3.0;
    const double uplus = (y1 - xm) * std::exp(t * std::log(y1) - s * (y1 + 1.0 / y1) - nc);
    const double uminus = (y2 - xm) * std::exp(t * std::log(y2) - s * (y2 + 1.0 / y2) - nc);

    for (;;) {
        const double U = uminus + rng.uniform() * (uplus - uminus);
        const double V = rng.uniform_open();
        const double X = U / V + xm;
        if (X > 0.0 && std::log(V) <= t * std::log(X) - s * (X + 1.0 / X) - nc)
            return X;
    }
}

// Ratio-of-uniforms without shift; lambda < 1, moderate omega.
double rou_noshift(double lambda, double omega, RandomStream& rng)
{
    const double t = 0.5 * (lambda - 1.0);
    const double s = 0.25 * omega;
    const double xm = gig_mode(lambda, omega);
    const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);
    const double ym = ((lambda + 1.0) + std::sqrt((lambda + 1.0) * (lambda + 1.0) + omega * omega)) / omega;
    const double um = std::exp(0.5 * (lambda + 1.0) * std::log(ym) - s * (ym + 1.0 / ym) - nc);
    for (;;) {
        const double U = um * rng.uniform_open();
        const double V = rng.uniform_open();
        const double X = U / V;
        if (std::log(V) <= t * std::log(X) - s * (X + 1.0 / X) - nc)
            return X;
    }
}

// Rejection from a three-piece hat; lambda < 1, small omega (not log-concave).
double three_piece_hat(double lambda, double omega, RandomStream& rng)
{
    const double xm = gig_mode(lambda, omega);
    const double x0 = omega / (1.0 - lambda);
    const double k0 = std::exp((lambda - 1.0) * std::log(xm) - 0.5 * omega * (xm + 1.0 / xm));
    const double A0 = k0 * x0;
    double k1, A1, k2, A2;
    if (x0 >= 2.0 / omega) {
        k1 = 0.0;
        A1 = 0.0;
        k2 = std::pow(x0, lambda - 1.0);
        A2 = k2 * 2.0 * std::exp(-omega * x0 / 2.0) / omega;
    } else {
        k1 = std::exp(-omega);
        A1 = lambda == 0.0
                 ? k1 * std::log(2.0 / (omega * omega))
                 : k1 / lambda * (std::pow(2.0 / omega, lambda) - std::pow(x0, lambda));
        k2 = std::pow(2.0 / omega, lambda - 1.0);
        A2 = k2 * 2.0 * std::exp(-1.0) / omega;
    }
    const double Atot = A0 + A1 + A2;
    for (;;) {
        double V = Atot * rng.uniform();
        double X, hx;
        if (V <= A0) {
            X = x0 * V / A0;
            hx = k0;
        } else if ((V -= A0) <= A1) {
            if (lambda == 0.0) {
                X = omega * std::exp(std::exp(omega) * V);
                hx = k1 / X;
            } else {
                X = std::pow(std::pow(x0, lambda) + lambda / k1 * V, 1.0 / lambda);
                hx = k1 * std::pow(X, lambda - 1.0);
            }
        } else {
            V -= A1;
            const double a = std::max(x0, 2.0 / omega);
            X = -2.0 / omega * std::log(std::exp(-omega / 2.0 * a) - omega / (2.0 * k2) * V);
            hx = k2 * std::exp(-omega / 2.0 * X);
        }
        if (!(X > 0.0))
            continue;
        const double U = rng.uniform_open() * hx;
        if (std::log(U) <= (lambda - 1.0) * std::log(X) - omega / 2.0 * (X + 1.0 / X))
            return X;
    }
}

}  // namespace

double gig_standard_hormann_leydold(double lambda, double omega, RandomStream& rng)
{
    if (!(lambda >= 0.0) || !(omega > 0.0))
        throw std::invalid_argument("gig_standard_hormann_leydold: need lambda >= 0, omega > 0");
    if (lambda >= 1.0 || omega > 1.0)
        return rou_shift(lambda, omega, rng);
    if (omega >= std::min(0.5, 2.0 / 3.0 * std::sqrt(1.0 - lambda)))
        return rou_noshift(lambda, omega, rng);
    return three_piece_hat(lambda, omega, rng);
}

double gig_standard_devroye(double lambda, double omega, RandomStream& rng)
{
    if (!(lambda >= 0.0) || !(omega > 0.0))
        throw std::invalid_argument("gig_standard_devroye: need lambda >= 0, omega > 0");
    // Works on log(y / m) with m the mode-like scale below; psi is the log density.
    const double alpha = std::sqrt(omega * omega + lambda * lambda) - lambda;
    auto psi = [&](double x) {
        return -alpha * (std::cosh(x) - 1.0) - lambda * (std::exp(x) - x - 1.0);
    };
    auto dpsi = [&](double x) { return -alpha * std::sinh(x) - lambda * (std::exp(x) - 1.0); };

    double t = 1.0, s = 1.0;
    double lc = -psi(1.0);
    if (lc > 2.0)
        t = std::sqrt(2.0 / (alpha + lambda));
    else if (lc < 0.5)
        t = std::log(4.0 / (alpha + 2.0 * lambda));
    lc = -psi(-1.0);
    if (lc > 2.0)
        s = std::sqrt(4.0 / (alpha * std::cosh(1.0) + lambda));
    else if (lc < 0.5)
        s = std::min(1.0 / lambda, std::log(1.0 + 1.0 / alpha +
                                            std::sqrt(1.0 / (alpha * alpha) + 2.0 / alpha)));

    const double eta = -psi(t), zeta = -dpsi(t), theta = -psi(-s), xi = dpsi(-s);
    const double p = 1.0 / xi, r = 1.0 / zeta;
    const double td = t - r * eta, sd = s - p * theta;
    const double q = td + sd;
    auto chi = [&](double x) {
        if (x >= -sd && x <= td)
            return 1.0;
        if (x > td)
            return std::exp(-eta - zeta * (x - t));
        return std::exp(-theta + xi * (x + s));
    };
    double cand;
    for (;;) {
        const double u = rng.uniform(), v = rng.uniform_open(), w = rng.uniform();
        if (u < q / (p + q + r))
            cand = -sd + q * v;
        else if (u < (q + r) / (p + q + r))
            cand = td - r * std::log(v);
        else
            cand = -sd + p * std::log(v);
        if (w * chi(cand) <= std::exp(psi(cand)))
            break;
    }
    return (lambda / omega + std::sqrt(1.0 + lambda * lambda / (omega * omega))) * std::exp(cand);
}

double gig_variate(const GigParams& p, RandomStream& rng)
{
    validate(p);
    if (p.gamma == 0.0)
        return p.delta * p.delta / (2.0 * rng.gamma(-p.lambda, 1.0));
    const double omega = p.delta * p.gamma;
    const double nu = p.nu();
    const double y = nu >= 1.0 ? gig_standard_devroye(nu, omega, rng)
                               : gig_standard_hormann_leydold(nu, omega, rng);
    const double scale = p.delta / p.gamma;
    return p.lambda > 0.0 ? scale * y : scale / y;
}

double gh_variate(const GHParams& p, RandomStream& rng)
{
    const double u = gig_variate(p.gig, rng);
    return p.mu + p.beta * u + p.sigma * std::sqrt(u) * rng.normal();
}

double gh_pdf(const GHParams& p, double x)
{
    validate(p);
    // Absorb sigma: sigma^2 U ~ GIG(lambda, sigma delta, gamma / sigma).
    const double lambda = p.gig.lambda;
    const double delta = p.sigma * p.gig.delta;
    const double gamma = p.gig.gamma / p.sigma;
    const double beta = p.beta / (p.sigma * p.sigma);
    const double d = x - p.mu;
    const double q = std::sqrt(delta * delta + d * d);

    if (gamma == 0.0) {
        if (beta == 0.0) {
            const double l = std::lgamma(0.5 - lambda) - 0.5 * std::log(kPi) - std::log(delta) -
                             std::lgamma(-lambda) +
                             (lambda - 0.5) * std::log1p(d * d / (delta * delta));
            return std::exp(l);
        }
        const double ab = std::abs(beta);
        const double l = -lambda * std::log(0.5 * delta * delta) - std::lgamma(-lambda) -
                         0.5 * std::log(2.0 * kPi) + std::log(2.0) +
                         (lambda - 0.5) * (std::log(q) - std::log(ab)) +
                         log_bessel_k_scaled(lambda - 0.5, ab * q) + skew_exponent(beta, d, q, delta);
        return std::exp(l);
    }
    const double alpha = std::sqrt(gamma * gamma + beta * beta);
    const double la = lambda * std::log(gamma) - 0.5 * std::log(2.0 * kPi) -
                      (lambda - 0.5) * std::log(alpha) - lambda * std::log(delta) -
                      log_bessel_k(lambda, delta * gamma);
    const double l = la + (lambda - 0.5) * std::log(q) +
                     log_bessel_k_scaled(lambda - 0.5, alpha * q) + beta * d - alpha * q;
    return std::exp(l);
}

double ks_two_sample(std::vector<double> a, std::vector<double> b)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_two_sample: samples must be nonempty");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double n = static_cast<double>(a.size()), m = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v)
            ++i;
        while (j < b.size() && b[j] == v)
            ++j;
        d = std::max(d, std::abs(i / n - j / m));
    }
    return d;
}

namespace {

double quantile_sorted(const std::vector<double>& s, double prob)
{
    const double h = (static_cast<double>(s.size()) - 1.0) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, s.size() - 1);
    return s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

}  // namespace

std::vector<std::pair<double, double>> qq_points(std::vector<double> a, std::vector<double> b,
                                                 std::size_t n_quantiles)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("qq_points: samples must be nonempty");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<std::pair<double, double>> out;
    out.reserve(n_quantiles);
    for (std::size_t i = 0; i < n_quantiles; ++i) {
        const double prob = (static_cast<double>(i) + 0.5) / static_cast<double>(n_quantiles);
        out.emplace_back(quantile_sorted(a, prob), quantile_sorted(b, prob));
    }
    return out;
}

}  // namespace ghshot
