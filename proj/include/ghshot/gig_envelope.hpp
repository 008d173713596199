#pragma once

namespace ghshot {

// GIG(lambda, delta, gamma): density proportional to
// x^{lambda-1} exp(-(delta^2/x + gamma^2 x)/2).
struct GigParams {
    double lambda = -0.5;
    double delta = 1.0;
    double gamma = 0.1;

    double nu() const { return lambda < 0 ? -lambda : lambda; }
};

// Throws std::invalid_argument for lambda = 0, delta <= 0, gamma < 0, or
// gamma = 0 with lambda > 0.
void validate(const GigParams& p);

// Corner points of the piecewise bounds on z|H_nu(z)|^2.  H0 caches
// scaled_hankel_sq(nu, z0).  z1 = 0 marks the single-component route (gamma = 0 or nu = 0.5).
struct EnvelopeConfig {
    double z1 = 0.0;
    double z0 = 0.0;
    double H0 = 0.0;
    bool squeeze = true;
};

// z1 = z0 = z1_max(|lambda|) (z1 = 0 when gamma = 0 or |lambda| = 0.5).
EnvelopeConfig default_envelope(const GigParams& p, bool squeeze = true);
// Same, with explicit corners; H0 recomputed.
EnvelopeConfig make_envelope(const GigParams& p, double z1, double z0, bool squeeze = true);

enum class Regime { A, B };
enum class Component { N1, N2 };

// Regime used by the sampler: A for |lambda| >= 0.5, B below.
Regime sampler_regime(const GigParams& p);

double z1_max(double nu);

double bound_A(double z, double nu, double z1);
double bound_B(double z, double nu, double z0, double H0);
double log_bound_A(double z, double nu, double z1);
double log_bound_B(double z, double nu, double z0, double H0);

// Bivariate density whose z-marginal is the GIG Levy density (lambda <= 0 part).
double q_gig_xz(double x, double z, const GigParams& p);
// Q_GIG(x): the bivariate density integrated over z by quadrature, plus the
// gamma term for lambda > 0.
double q_gig(double x, const GigParams& p);

double envelope_xz(double x, double z, const GigParams& p, const EnvelopeConfig& cfg, Regime which);

double dominating_marginal(double x, const GigParams& p, const EnvelopeConfig& cfg, Regime regime,
                           Component comp);

// Envelope ratio for the z stage; depends on z only.  Throws std::domain_error when
// z lies outside the component's support.
double thinning_ratio(double z, const GigParams& p, const EnvelopeConfig& cfg, Regime regime,
                      Component comp);

// Smallest value of the z-stage ratio over all z; 1 on the exact route.
double squeeze_constant(const GigParams& p, const EnvelopeConfig& cfg);

// Lower bound on the expected z-stage acceptance at x for |lambda| >= 0.5, using
// the B-corner z0 (z1 may be 0 for the legacy single-component envelope).
double acceptance_lower_bound(double x, const GigParams& p, double z0, double z1, Component comp);

struct Z0Optimum {
    double z0;
    double bound;
};
Z0Optimum optimize_z0(double x, const GigParams& p, double z1, Component comp);

}  // namespace ghshot
