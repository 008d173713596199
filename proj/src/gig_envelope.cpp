#include "ghshot/gig_envelope.hpp"

#include "ghshot/pp_core.hpp"
#include "ghshot/specfun.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ghshot {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

bool single_component(const EnvelopeConfig& cfg) { return cfg.z1 == 0.0; }

// Gamma(0.5, a) - Gamma(0.5, b) for 0 <= a <= b, without cancellation.
double half_gamma_diff(double a, double b)
{
    const double sa = std::sqrt(a), sb = std::sqrt(b);
    if (a > 0.5)
        return std::sqrt(kPi) * (boost::math::erfc(sa) - boost::math::erfc(sb));
    return std::sqrt(kPi) * (boost::math::erf(sb) - boost::math::erf(sa));
}

// gamma(s, b) - gamma(s, a) for 0 <= a <= b.
double lower_gamma_diff(double s, double a, double b)
{
    if (a < 1.0)
        return lower_inc_gamma(s, b) - lower_inc_gamma(s, a);
    return upper_inc_gamma(s, a) - upper_inc_gamma(s, b);
}

// log Gamma(s, a); switches to the large-a asymptotic series once the direct value
// underflows.
double log_upper_gamma(double s, double a)
{
    const double direct = upper_inc_gamma(s, a);
    if (direct > 1e-280)
        return std::log(direct);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        term *= (s - k) / a;
        sum += term;
        if (std::abs(term) < 1e-17 * sum)
            break;
    }
    return (s - 1.0) * std::log(a) - a + std::log(sum);
}

}  // namespace

void validate(const GigParams& p)
{
    if (!std::isfinite(p.lambda) || p.lambda == 0.0)
        throw std::invalid_argument("GIG lambda must be finite and nonzero");
    if (!(p.delta > 0.0) || !std::isfinite(p.delta))
        throw std::invalid_argument("GIG delta must be positive");
    if (!(p.gamma >= 0.0) || !std::isfinite(p.gamma))
        throw std::invalid_argument("GIG gamma must be nonnegative");
    if (p.gamma == 0.0 && p.lambda > 0.0)
        throw std::invalid_argument("GIG gamma = 0 requires lambda < 0");
}

double z1_max(double nu)
{
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw std::domain_error("z1_max: nu must be positive");
    if (nu == 0.5)
        throw std::domain_error("z1_max: singular at nu = 0.5");
    const double e = 1.0 - 2.0 * nu;
    const double num = e * std::log(2.0) + std::log(kPi) - 2.0 * std::lgamma(nu);
    return std::exp(num / e);
}

Regime sampler_regime(const GigParams& p) { return p.nu() >= 0.5 ? Regime::A : Regime::B; }

EnvelopeConfig make_envelope(const GigParams& p, double z1, double z0, bool squeeze)
{
    validate(p);
    const double nu = p.nu();
    EnvelopeConfig cfg;
    cfg.squeeze = squeeze;
    if (nu == 0.5) {
        cfg.z1 = 0.0;
        cfg.z0 = z0 > 0.0 ? z0 : 0.5 * std::exp(-std::numbers::egamma);
        cfg.H0 = kTwoOverPi;
        return cfg;
    }
    const double zmax = z1_max(nu);
    if (!(z1 >= 0.0) || z1 > zmax * (1.0 + 1e-12))
        throw std::invalid_argument("envelope corner z1 must lie in [0, z1_max]");
    if (!(z0 > 0.0) || !std::isfinite(z0))
        throw std::invalid_argument("envelope corner z0 must be positive");
    if (p.gamma == 0.0)
        z1 = 0.0;
    if (z1 == 0.0 && nu < 0.5)
        throw std::invalid_argument("z1 = 0 requires |lambda| >= 0.5");
    cfg.z1 = std::min(z1, zmax);
    cfg.z0 = z0;
    cfg.H0 = scaled_hankel_sq(nu, z0);
    return cfg;
}

EnvelopeConfig default_envelope(const GigParams& p, bool squeeze)
{
    validate(p);
    const double nu = p.nu();
    if (nu == 0.5)
        return make_envelope(p, 0.0, 0.0, squeeze);
    if (p.gamma == 0.0 && nu < 0.5)
        throw std::invalid_argument("gamma = 0 is supported only for |lambda| >= 0.5");
    const double z = z1_max(nu);
    return make_envelope(p, p.gamma == 0.0 ? 0.0 : z, z, squeeze);
}

double log_bound_A(double z, double nu, double z1)
{
    if (z < z1)
        return std::log(kTwoOverPi) + (2.0 * nu - 1.0) * std::log(z1 / z);
    return std::log(kTwoOverPi);
}

double log_bound_B(double z, double nu, double z0, double H0)
{
    if (z < z0)
        return std::log(H0) + (2.0 * nu - 1.0) * std::log(z0 / z);
    return std::log(H0);
}

double bound_A(double z, double nu, double z1)
{
    if (!(z > 0.0))
        throw std::domain_error("bound_A: z must be positive");
    return z < z1 ? kTwoOverPi * std::pow(z1 / z, 2.0 * nu - 1.0) : kTwoOverPi;
}

double bound_B(double z, double nu, double z0, double H0)
{
    if (!(z > 0.0))
        throw std::domain_error("bound_B: z must be positive");
    return z < z0 ? H0 * std::pow(z0 / z, 2.0 * nu - 1.0) : H0;
}

double q_gig_xz(double x, double z, const GigParams& p)
{
    if (!(x > 0.0) || !(z > 0.0))
        throw std::domain_error("q_gig_xz: x and z must be positive");
    const double l = std::log(2.0) - 2.0 * std::log(kPi) - std::log(x) -
                     0.5 * x * p.gamma * p.gamma -
                     z * z * x / (2.0 * p.delta * p.delta) - log_scaled_hankel_sq(p.nu(), z);
    return std::exp(l);
}

double q_gig(double x, const GigParams& p)
{
    if (!(x > 0.0))
        throw std::domain_error("q_gig: x must be positive");
    double total = 0.0;
    if (p.nu() == 0.5) {
        total = std::exp(-0.5 * x * p.gamma * p.gamma) * p.delta /
                (std::sqrt(2.0 * kPi) * std::pow(x, 1.5));
    } else {
        auto f = [&](double z) { return z > 0.0 ? q_gig_xz(x, z, p) : 0.0; };
        const double split = p.delta / std::sqrt(x);
        boost::math::quadrature::tanh_sinh<double> ts;
        boost::math::quadrature::exp_sinh<double> es;
        total = ts.integrate(f, 0.0, split, 1e-12) + es.integrate(f, split, kInf, 1e-12);
    }
    if (p.lambda > 0.0)
        total += p.lambda * std::exp(-0.5 * x * p.gamma * p.gamma) / x;
    return total;
}

double envelope_xz(double x, double z, const GigParams& p, const EnvelopeConfig& cfg, Regime which)
{
    if (!(x > 0.0) || !(z > 0.0))
        throw std::domain_error("envelope_xz: x and z must be positive");
    const double nu = p.nu();
    const double lb = which == Regime::A ? log_bound_A(z, nu, cfg.z1)
                                         : log_bound_B(z, nu, cfg.z0, cfg.H0);
    const double l = std::log(2.0) - 2.0 * std::log(kPi) - std::log(x) -
                     0.5 * x * p.gamma * p.gamma - z * z * x / (2.0 * p.delta * p.delta) - lb;
    return std::exp(l);
}

double dominating_marginal(double x, const GigParams& p, const EnvelopeConfig& cfg, Regime regime,
                           Component comp)
{
    if (!(x > 0.0))
        throw std::domain_error("dominating_marginal: x must be positive");
    const double nu = p.nu();
    const double d2 = 2.0 * p.delta * p.delta;
    const double damp = std::exp(-0.5 * x * p.gamma * p.gamma);
    if (regime == Regime::A) {
        const double y = cfg.z1 * cfg.z1 * x / d2;
        if (comp == Component::N1) {
            if (cfg.z1 == 0.0)
                return 0.0;
            return damp * cfg.z1 * lower_inc_gamma_scaled(nu, y) / (2.0 * kPi * x);
        }
        return damp * std::sqrt(d2) * upper_inc_gamma(0.5, y) / (2.0 * kPi * std::pow(x, 1.5));
    }
    const double y = cfg.z0 * cfg.z0 * x / d2;
    if (comp == Component::N1)
        return damp * cfg.z0 * lower_inc_gamma_scaled(nu, y) / (kPi * kPi * x * cfg.H0);
    return damp * std::sqrt(d2) * upper_inc_gamma(0.5, y) /
           (kPi * kPi * std::pow(x, 1.5) * cfg.H0);
}

double thinning_ratio(double z, const GigParams& p, const EnvelopeConfig& cfg, Regime regime,
                      Component comp)
{
    if (!(z > 0.0) || !std::isfinite(z))
        throw std::domain_error("thinning_ratio: z must be positive");
    const double nu = p.nu();
    const double corner = regime == Regime::A ? cfg.z1 : cfg.z0;
    const bool inside = comp == Component::N1 ? z < corner : z >= corner;
    if (!inside)
        throw std::domain_error("thinning_ratio: z outside the component support");
    if (nu == 0.5)
        return 1.0;
    const double lb = regime == Regime::A ? log_bound_A(z, nu, cfg.z1)
                                          : log_bound_B(z, nu, cfg.z0, cfg.H0);
    return std::exp(lb - log_scaled_hankel_sq(nu, z));
}

double squeeze_constant(const GigParams& p, const EnvelopeConfig& cfg)
{
    const double nu = p.nu();
    if (nu == 0.5)
        return 1.0;
    if (single_component(cfg))
        return 0.0;
    // Both bounds are power laws between the corners, so the extreme ratio sits at a
    // corner or on one of the constant outer pieces.
    const double lo = std::min(cfg.z0, cfg.z1), hi = std::max(cfg.z0, cfg.z1);
    const double probes[] = {0.5 * lo, cfg.z0, cfg.z1, 2.0 * hi};
    double best = kInf;
    for (double z : probes) {
        const double la = log_bound_A(z, nu, cfg.z1);
        const double lb = log_bound_B(z, nu, cfg.z0, cfg.H0);
        best = std::min(best, nu > 0.5 ? std::exp(la - lb) : std::exp(lb - la));
    }
    return std::min(best, 1.0);
}

double acceptance_lower_bound(double x, const GigParams& p, double z0, double z1, Component comp)
{
    if (!(x > 0.0) || !(z0 > 0.0) || !(z1 >= 0.0))
        throw std::domain_error("acceptance_lower_bound: need x > 0, z0 > 0, z1 >= 0");
    const double nu = p.nu();
    const double d2 = 2.0 * p.delta * p.delta;
    const double a0 = z0 * z0 * x / d2;
    const double a1 = z1 * z1 * x / d2;
    const double H0 = scaled_hankel_sq(nu, z0);
    const double lead = kTwoOverPi / H0;
    double val;
    if (comp == Component::N1) {
        if (z1 == 0.0)
            throw std::domain_error("acceptance_lower_bound: N1 needs z1 > 0");
        if (z0 < z1) {
            const double g1 = lower_inc_gamma_scaled(nu, a1);
            const double t1 = (z0 / z1) * lower_inc_gamma_scaled(nu, a0) / g1;
            const double t2 = half_gamma_diff(a0, a1) / (std::sqrt(a1) * g1);
            val = lead * (t1 + t2);
        } else {
            val = lead * std::pow(z1 / z0, 2.0 * nu - 1.0);
        }
    } else {
        if (z0 < z1) {
            val = lead;
        } else {
            double t1, t2;
            if (a1 < 600.0) {
                const double u1 = upper_inc_gamma(0.5, a1);
                t1 = upper_inc_gamma(0.5, a0) / u1;
                t2 = std::pow(a0, 0.5 - nu) * lower_gamma_diff(nu, a1, a0) / u1;
            } else {
                // Gamma(0.5, a1) underflows; work with ratios of logs.
                const double lu1 = log_upper_gamma(0.5, a1);
                const double lg1 = log_upper_gamma(nu, a1);
                t1 = std::exp(log_upper_gamma(0.5, a0) - lu1);
                t2 = std::exp((0.5 - nu) * std::log(a0) + lg1 - lu1) *
                     -std::expm1(log_upper_gamma(nu, a0) - lg1);
            }
            val = lead * (t1 + t2);
        }
    }
    return std::clamp(val, 0.0, 1.0);
}

Z0Optimum optimize_z0(double x, const GigParams& p, double z1, Component comp)
{
    const double ref = z1 > 0.0 ? z1 : z1_max(p.nu());
    auto f = [&](double lz) { return acceptance_lower_bound(x, p, std::exp(lz), z1, comp); };
    const double lo = std::log(ref * 1e-3), hi = std::log(ref * 1e3);

    // Coarse scan brackets the global maximum, golden section refines it.
    constexpr int kGrid = 120;
    const double step = (hi - lo) / kGrid;
    int best_i = 0;
    double best = -1.0;
    for (int i = 0; i <= kGrid; ++i) {
        const double v = f(lo + i * step);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    double a = lo + std::max(best_i - 1, 0) * step;
    double b = lo + std::min(best_i + 1, kGrid) * step;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-6) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    const double lz = 0.5 * (a + b);
    const double v = f(lz);
    if (v >= best)
        return {std::exp(lz), v};
    return {std::exp(lo + best_i * step), best};
}

}  // namespace ghshot
