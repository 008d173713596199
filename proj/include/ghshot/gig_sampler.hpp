#pragma once

#include "ghshot/gig_envelope.hpp"
#include "ghshot/pp_core.hpp"
#include "ghshot/random.hpp"
#include "ghshot/truncation.hpp"

#include <cstdint>
#include <vector>

namespace ghshot {

// Per-stage thinning counts.  `dominating` is the tempering of the gamma / stable
// proposals, `marginal` the incomplete-gamma acceptance, `z_stage` the conditional
// Hankel-ratio acceptance.  `squeeze_skips` counts z-stage points accepted by the
// constant pre-test without drawing z.
struct SamplerStats {
    StageCounter dominating;
    StageCounter marginal;
    StageCounter z_stage;
    std::uint64_t squeeze_skips = 0;

    SamplerStats& operator+=(const SamplerStats& o)
    {
        dominating += o.dominating;
        marginal += o.marginal;
        z_stage += o.z_stage;
        squeeze_skips += o.squeeze_skips;
        return *this;
    }
};

// GIG jump generator over a horizon T: point intensities are T times the Levy density.
class GigSampler {
public:
    GigSampler(const GigParams& p, const EnvelopeConfig& cfg, double horizon = 1.0);

    const GigParams& params() const { return p_; }
    const EnvelopeConfig& envelope() const { return cfg_; }
    Regime regime() const { return regime_; }
    double horizon() const { return T_; }
    double squeeze_level() const { return squeeze_; }

    bool has_n1() const { return cfg_.z1 > 0.0; }
    bool has_extra() const { return p_.lambda > 0.0; }

    JumpSet sample_n1(Interval iv, RandomStream& rng, SamplerStats* stats = nullptr) const;
    JumpSet sample_n2(Interval iv, RandomStream& rng, SamplerStats* stats = nullptr) const;
    JumpSet sample_extra(Interval iv, RandomStream& rng, SamplerStats* stats = nullptr) const;

    // Marginal acceptance probability for a dominating point x.
    double marginal_acceptance(double x, Component comp) const;
    // Conditional z draw followed by the ratio test (with the squeeze when enabled).
    bool thin_point(double x, Component comp, RandomStream& rng, SamplerStats* stats) const;

    // Components for the adaptive truncation loop: N1 (if present), N2, extra (if present).
    std::vector<TruncationComponent> components(const TruncationConfig& tc,
                                                SamplerStats* stats) const;
    std::vector<GigComponent> component_ids() const;

private:
    GigParams p_;
    EnvelopeConfig cfg_;
    Regime regime_;
    double T_;
    double nu_;
    double squeeze_;
    double corner_;  // split point of z between N1 and N2
};

JumpSet sample_N1(const GigParams& p, const EnvelopeConfig& cfg, Interval iv, RandomStream& rng,
                  SamplerStats* stats = nullptr);
JumpSet sample_N2(const GigParams& p, const EnvelopeConfig& cfg, Interval iv, RandomStream& rng,
                  SamplerStats* stats = nullptr);
JumpSet sample_positive_lambda_extra(const GigParams& p, Interval iv, RandomStream& rng);

struct GigSample {
    JumpSet jumps;  // sizes only
    std::vector<GigComponent> components;
    std::vector<double> eps_final;
    std::vector<ResidualMoments> residual;  // per component
    ResidualMoments total;                  // lower part valid for the whole process
    SamplerStats stats;
};

// Adaptive truncated GIG jumps over horizon T.
GigSample sample_gig(const GigParams& p, const TruncationConfig& tc, const EnvelopeConfig& cfg,
                     RandomStream& rng, double T = 1.0);

}  // namespace ghshot
