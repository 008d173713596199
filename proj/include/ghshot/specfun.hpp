#pragma once

#include "ghshot/random.hpp"

#include <stdexcept>

namespace ghshot {

// Raised when a truncated draw has a normalising mass too small to invert.
class TruncationUnderflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double bessel_j(double nu, double z);
double bessel_y(double nu, double z);
// Symmetric in the sign of nu.
double bessel_k(double nu, double z);

// z * (J_nu(z)^2 + Y_nu(z)^2).  Exactly 2/pi at nu = 0.5.
double scaled_hankel_sq(double nu, double z);
// log of the above; stays finite where the product itself would overflow.
double log_scaled_hankel_sq(double nu, double z);

double lower_inc_gamma(double s, double x);
double upper_inc_gamma(double s, double x);
// gamma(s, x) / x^s, with the x -> 0 limit 1/s.
double lower_inc_gamma_scaled(double s, double x);
// Gamma(0.5, y) * e^y / sqrt(pi) = erfcx(sqrt(y)).
double erfcx_sqrt(double y);

enum class TruncSide { right, left };

// Draws z > 0 with z^2 ~ Gamma(shape, rate) restricted to z < bound (right)
// or z >= bound (left).
double sample_sqrt_gamma_truncated(double shape, double rate, double bound, TruncSide side,
                                   RandomStream& rng);

}  // namespace ghshot
