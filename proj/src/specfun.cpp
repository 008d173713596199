#include "ghshot/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace ghshot {

namespace {

void require_positive_finite(double z, const char* what)
{
    if (!(z > 0.0) || !std::isfinite(z))
        throw std::domain_error(std::string(what) + ": argument must be positive and finite");
}

void require_order(double nu, const char* what)
{
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw std::domain_error(std::string(what) + ": order must be finite and nonnegative");
}

// Large-argument expansion of the Hankel modulus:
//   z (J^2 + Y^2) ~ (2/pi) sum_k t_k,  t_k = t_{k-1} (2k-1)/(2k) (mu - (2k-1)^2) / (2z)^2,
// with mu = 4 nu^2.  Used for z >= max(25, nu^2); there the smallest term is below
// 1e-20 and the result agrees with the Temme/Steed route to about 2e-16.
bool modulus_asymptotic(double nu, double z, double& out)
{
    const double mu = 4.0 * nu * nu;
    const double inv = 1.0 / (4.0 * z * z);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 80; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * (odd / (2.0 * k)) * (mu - odd * odd) * inv;
        if (std::abs(next) > std::abs(term))
            return false;
        sum += next;
        term = next;
        if (std::abs(term) < 1e-18 * std::abs(sum)) {
            out = sum * 2.0 / std::numbers::pi;
            return true;
        }
    }
    return false;
}

double modulus_crossover(double nu)
{
    return std::max(25.0, nu * nu);
}

}  // namespace

double bessel_j(double nu, double z)
{
    require_order(nu, "bessel_j");
    require_positive_finite(z, "bessel_j");
    return boost::math::cyl_bessel_j(nu, z);
}

double bessel_y(double nu, double z)
{
    require_order(nu, "bessel_y");
    require_positive_finite(z, "bessel_y");
    return boost::math::cyl_neumann(nu, z);
}

double bessel_k(double nu, double z)
{
    if (!std::isfinite(nu))
        throw std::domain_error("bessel_k: order must be finite");
    require_positive_finite(z, "bessel_k");
    return boost::math::cyl_bessel_k(std::abs(nu), z);
}

double log_scaled_hankel_sq(double nu, double z)
{
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw std::domain_error("scaled_hankel_sq: order must be positive and finite");
    require_positive_finite(z, "scaled_hankel_sq");
    if (nu == 0.5)
        return std::log(2.0 / std::numbers::pi);
    if (z >= modulus_crossover(nu)) {
        double v;
        if (modulus_asymptotic(nu, z, v))
            return std::log(v);
    }
    double j = 0.0, y = 0.0;
    try {
        boost::math::detail::bessel_jy(nu, z, &j, &y,
                                       boost::math::detail::need_j | boost::math::detail::need_y,
                                       boost::math::policies::policy<>());
    } catch (const std::overflow_error&) {
        // Only reachable for tiny z: Y_nu ~ -Gamma(nu)/pi (2/z)^nu dominates.
        return std::log(z) + 2.0 * (std::lgamma(nu) - std::log(std::numbers::pi) +
                                    nu * std::log(2.0 / z));
    }
    const double ay = std::abs(y);
    if (ay >= std::abs(j)) {
        const double r = j / y;
        return std::log(z) + 2.0 * std::log(ay) + std::log1p(r * r);
    }
    const double r = y / j;
    return std::log(z) + 2.0 * std::log(std::abs(j)) + std::log1p(r * r);
}

double scaled_hankel_sq(double nu, double z)
{
    if (nu == 0.5) {
        require_positive_finite(z, "scaled_hankel_sq");
        return 2.0 / std::numbers::pi;
    }
    return std::exp(log_scaled_hankel_sq(nu, z));
}

double lower_inc_gamma(double s, double x)
{
    if (!(s > 0.0) || !(x >= 0.0) || std::isnan(x))
        throw std::domain_error("lower_inc_gamma: need s > 0 and x >= 0");
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return std::tgamma(s);
    return boost::math::tgamma_lower(s, x);
}

double upper_inc_gamma(double s, double x)
{
    if (!(s > 0.0) || !(x >= 0.0) || std::isnan(x))
        throw std::domain_error("upper_inc_gamma: need s > 0 and x >= 0");
    if (x == 0.0)
        return std::tgamma(s);
    if (std::isinf(x))
        return 0.0;
    return boost::math::tgamma(s, x);
}

double lower_inc_gamma_scaled(double s, double x)
{
    if (!(s > 0.0) || !(x >= 0.0) || std::isnan(x))
        throw std::domain_error("lower_inc_gamma_scaled: need s > 0 and x >= 0");
    if (x == 0.0)
        return 1.0 / s;
    if (x < 2.0) {
        // e^{-x} sum_k x^k / (s (s+1) ... (s+k)); all terms positive.
        double term = 1.0 / s;
        double sum = term;
        for (int k = 1; k < 200; ++k) {
            term *= x / (s + k);
            sum += term;
            if (term < 1e-17 * sum)
                break;
        }
        return std::exp(-x) * sum;
    }
    if (std::isinf(x))
        return 0.0;
    return std::exp(std::log(boost::math::tgamma_lower(s, x)) - s * std::log(x));
}

double erfcx_sqrt(double y)
{
    if (!(y >= 0.0))
        throw std::domain_error("erfcx_sqrt: need y >= 0");
    if (y < 600.0)
        return boost::math::erfc(std::sqrt(y)) * std::exp(y);
    const double inv = 1.0 / (2.0 * y);
    return (1.0 - inv + 3.0 * inv * inv - 15.0 * inv * inv * inv) /
           std::sqrt(std::numbers::pi * y);
}

double sample_sqrt_gamma_truncated(double shape, double rate, double bound, TruncSide side,
                                   RandomStream& rng)
{
    if (!(shape > 0.0) || !(rate > 0.0) || !(bound >= 0.0) || std::isnan(bound))
        throw std::domain_error("sample_sqrt_gamma_truncated: parameters must be positive");

    const double yb = rate * bound * bound;  // truncation point for the Gamma(shape, 1) variable

    if (side == TruncSide::right) {
        if (!(bound > 0.0))
            throw std::domain_error("sample_sqrt_gamma_truncated: right bound must be positive");
        if (std::isinf(yb)) {
            return std::sqrt(rng.gamma(shape, rate));
        }
        if (yb <= 1.0) {
            // Power-law proposal on (0, yb) with exponential acceptance; rate >= e^{-1}.
            for (;;) {
                const double y = yb * std::exp(std::log(rng.uniform_open()) / shape);
                if (y > 0.0 && y < yb && rng.uniform() < std::exp(-y))
                    return std::sqrt(y / rate);
            }
        }
        const double mass = boost::math::gamma_p(shape, yb);
        if (mass > 0.5) {
            for (;;) {
                const double y = rng.gamma(shape, 1.0);
                if (y < yb && y > 0.0)
                    return std::sqrt(y / rate);
            }
        }
        if (mass < 1e-300)
            throw TruncationUnderflow("sample_sqrt_gamma_truncated: truncation mass underflow");
        for (;;) {
            const double y = boost::math::gamma_p_inv(shape, rng.uniform_open() * mass);
            if (y > 0.0 && y < yb)
                return std::sqrt(y / rate);
        }
    }

    if (yb == 0.0)
        return std::sqrt(rng.gamma(shape, rate));
    const double mass = boost::math::gamma_q(shape, yb);
    if (mass > 0.5) {
        for (;;) {
            const double y = rng.gamma(shape, 1.0);
            if (y >= yb)
                return std::sqrt(y / rate);
        }
    }
    if (shape <= 1.0) {
        // Shifted exponential proposal; density ratio (y/yb)^{shape-1} <= 1.
        for (;;) {
            const double y = yb + rng.exponential();
            if (rng.uniform() < std::pow(y / yb, shape - 1.0))
                return std::sqrt(y / rate);
        }
    }
    if (mass < 1e-300)
        throw TruncationUnderflow("sample_sqrt_gamma_truncated: truncation mass underflow");
    for (;;) {
        const double y = boost::math::gamma_q_inv(shape, rng.uniform_open() * mass);
        if (y >= yb)
            return std::sqrt(y / rate);
    }
}

}  // namespace ghshot
