#pragma once

#include "ghshot/gig_envelope.hpp"
#include "ghshot/pp_core.hpp"
#include "ghshot/random.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghshot {

// Raised when no level of the truncation schedule satisfies the stop test.
class ScheduleExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TruncationConfig {
    double tau = 0.01;
    double p_T = 0.05;
    // Explicit decreasing levels; when empty the geometric schedule
    // eps_first * eps_ratio^(n-1), n <= max_levels, is used.
    std::vector<double> schedule;
    double eps_first = 1.0;
    double eps_ratio = 0.5;
    std::size_t max_levels = 400;
    double beta0 = 2.0;
    bool optimize_beta0 = false;
    bool use_mean_adjust = true;
    // Add the Brownian approximation of the truncated small jumps to GH paths.
    bool inject_residual = true;

    // n >= 1.  Throws ScheduleExhausted past the end.
    double eps_at(std::size_t n) const;
    void validate() const;
};

struct Moments {
    double mu = 0.0;
    double var = 0.0;
};

// Bounds on the mean and variance of the sum of jumps below eps over the horizon.
struct ResidualMoments {
    double mu_upper = 0.0;
    double var_upper = 0.0;
    double mu_lower = 0.0;
    double var_lower = 0.0;

    ResidualMoments& operator+=(const ResidualMoments& o)
    {
        mu_upper += o.mu_upper;
        var_upper += o.var_upper;
        mu_lower += o.mu_lower;
        var_lower += o.var_lower;
        return *this;
    }
};

enum class Family { gamma, tempered_stable, stable };

// (t/T) times the mean and variance of the sum of jumps below eps of the given
// family (Levy density C x^{-1-alpha} e^{-beta x}; alpha = 0 for gamma).
// eps may be +inf when beta > 0.
Moments family_residual_moments(Family family, double C, double alpha, double beta, double eps,
                                double t, double T);

enum class GigComponent { n1, n2, extra };

// Per-component bounds at time t when the process runs over horizon T.  Lower bounds
// of N1 and N2 are only split per component when z0 = z1 (otherwise zero).
// beta0 <= 0 selects the maximum over beta0 in (1, 50].
Moments gig_component_upper(const GigParams& p, const EnvelopeConfig& cfg, GigComponent c,
                            double eps, double t, double T);
Moments gig_component_lower(const GigParams& p, const EnvelopeConfig& cfg, GigComponent c,
                            double eps, double t, double T, double beta0);
bool gig_lower_splits(const GigParams& p, const EnvelopeConfig& cfg);

ResidualMoments gig_residual_upper(const GigParams& p, const EnvelopeConfig& cfg, double eps,
                                   double t, double T);
ResidualMoments gig_residual_lower(const GigParams& p, const EnvelopeConfig& cfg, double eps,
                                   double t, double T, double beta0);
// Lower bounds with beta0 maximised over (1, 50] separately for mean and variance.
ResidualMoments gig_residual_lower_best(const GigParams& p, const EnvelopeConfig& cfg, double eps,
                                        double t, double T);

// Mean and second central moment of the sum of GIG jumps below eps over unit time,
// by quadrature of the defining integral.  Diagnostics only.
Moments gig_residual_quadrature(const GigParams& p, double eps);

// Chebyshev bound on Pr(R >= E), or on Pr(R - mu_lower >= E) with mean adjustment.
double exceedance_bound(double E, const ResidualMoments& m, bool use_mean_adjust = false);

struct TruncationComponent {
    std::string name;
    // Jumps with sizes in (lo, hi], descending.
    std::function<std::vector<double>(double lo, double hi, RandomStream&)> sample;
    std::function<Moments(double eps)> upper;
    std::function<Moments(double eps)> lower;
};

struct AdaptiveResult {
    std::vector<double> sizes;  // descending union over components
    std::vector<double> eps_final;
    std::vector<ResidualMoments> residual;  // per component, at its eps_final
    ResidualMoments total;
    double accumulated = 0.0;
    std::size_t levels = 0;
};

// Simulates each component slice by slice down the schedule; component k stops at
// the first level whose exceedance bound at tau * (sum over all components so far)
// is <= p_T.
AdaptiveResult adaptive_sample(const std::vector<TruncationComponent>& components,
                               const TruncationConfig& tc, RandomStream& rng,
                               double initial_sum = 0.0);

Moments gh_residual_moments(const ResidualMoments& gig_m, double beta, double sigma, double t,
                            double T);

// Drift mu * t/T plus a Brownian motion with variance var * t/T sampled on the grid.
std::vector<double> gaussian_residual_path(const Moments& gh_m, double T,
                                           const std::vector<double>& grid, RandomStream& rng);
void inject_gaussian_residual(std::vector<double>& values, const Moments& gh_m, double T,
                              const std::vector<double>& grid, RandomStream& rng);

}  // namespace ghshot
