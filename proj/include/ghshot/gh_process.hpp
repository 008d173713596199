#pragma once

#include "ghshot/gig_envelope.hpp"
#include "ghshot/gig_sampler.hpp"
#include "ghshot/pp_core.hpp"
#include "ghshot/random.hpp"
#include "ghshot/truncation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ghshot {

// GH law as the normal variance-mean mixture mu + beta U + sigma sqrt(U) N(0,1),
// U ~ GIG(lambda, delta, gamma).
struct GHParams {
    GigParams gig;
    double mu = 0.0;
    double beta = 0.0;
    double sigma = 1.0;

    // (lambda, alpha, beta, delta, mu) form with sigma = 1 and gamma = sqrt(alpha^2 - beta^2).
    static GHParams from_alpha(double lambda, double alpha, double beta, double delta,
                               double mu = 0.0);
    double alpha() const;
};

void validate(const GHParams& p);
// Non-fatal parameter notes (currently: a nonzero per-jump location mu).
std::optional<std::string> parameter_warning(const GHParams& p);

struct GHPath {
    JumpSet jumps;  // arrival times and GH jump sizes
    double residual_drift = 0.0;
    double residual_var = 0.0;  // variance of the Brownian residual at T
    double T = 1.0;
    std::vector<GigComponent> components;
    std::vector<double> eps_final;
    ResidualMoments gig_residual;
    SamplerStats stats;
};

// w_i = mu + beta x_i + sigma sqrt(x_i) u_i.  Times are carried over.
JumpSet gh_jumps_from_gig(const JumpSet& gig_jumps, const GHParams& p, RandomStream& rng);

GHPath simulate_gh_path(const GHParams& p, const TruncationConfig& tc, const EnvelopeConfig& cfg,
                        double T, RandomStream& rng);

// W(t) on an increasing grid within [0, T]: jump sum plus the Brownian residual.
std::vector<double> path_values(const GHPath& path, const std::vector<double>& grid,
                                RandomStream& rng);
double path_endpoint(const GHPath& path, RandomStream& rng);

}  // namespace ghshot
