#pragma once

#include "ghshot/gh_process.hpp"
#include "ghshot/gig_envelope.hpp"
#include "ghshot/random.hpp"

#include <utility>
#include <vector>

namespace ghshot {

// Exact GIG(lambda, delta, gamma) draw.  gamma = 0 (lambda < 0) gives the
// reciprocal gamma limit.
double gig_variate(const GigParams& p, RandomStream& rng);

// Standardised GIG with density proportional to y^{lambda-1} exp(-omega (y + 1/y) / 2),
// lambda >= 0, omega > 0.
double gig_standard_devroye(double lambda, double omega, RandomStream& rng);
double gig_standard_hormann_leydold(double lambda, double omega, RandomStream& rng);

double gh_variate(const GHParams& p, RandomStream& rng);

// Density of the GH law; gamma = 0 uses the (skewed) Student-t limit.
double gh_pdf(const GHParams& p, double x);

double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Quantile pairs at probabilities (i + 0.5) / n, linear interpolation between order
// statistics.
std::vector<std::pair<double, double>> qq_points(std::vector<double> a, std::vector<double> b,
                                                 std::size_t n_quantiles);

}  // namespace ghshot
