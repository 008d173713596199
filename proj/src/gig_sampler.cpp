#include "ghshot/gig_sampler.hpp"

#include "ghshot/specfun.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ghshot {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

GigSampler::GigSampler(const GigParams& p, const EnvelopeConfig& cfg, double horizon)
    : p_(p), cfg_(cfg), T_(horizon)
{
    validate(p_);
    if (!(T_ > 0.0) || !std::isfinite(T_))
        throw std::invalid_argument("GigSampler: horizon must be positive");
    nu_ = p_.nu();
    if (p_.gamma == 0.0 && nu_ < 0.5)
        throw std::invalid_argument("gamma = 0 is supported only for |lambda| >= 0.5");
    if (p_.gamma == 0.0 || nu_ == 0.5)
        cfg_.z1 = 0.0;
    if (nu_ == 0.5)
        cfg_.H0 = 2.0 / kPi;
    if (nu_ < 0.5 && !(cfg_.z1 > 0.0))
        throw std::invalid_argument("|lambda| < 0.5 needs a positive corner z1");
    if (nu_ != 0.5 && (!(cfg_.z0 > 0.0) || !(cfg_.H0 > 0.0)))
        throw std::invalid_argument("envelope corner z0 / H0 must be positive");
    regime_ = sampler_regime(p_);
    corner_ = regime_ == Regime::A ? cfg_.z1 : cfg_.z0;
    squeeze_ = cfg_.squeeze ? squeeze_constant(p_, cfg_) : 0.0;
}

double GigSampler::marginal_acceptance(double x, Component comp) const
{
    const double y = corner_ * corner_ * x / (2.0 * p_.delta * p_.delta);
    if (comp == Component::N1) {
        // Exact value is <= 1; rounding overshoots by an ulp as y -> 0.
        const double r = lower_inc_gamma_scaled(nu_, y) * nu_ * (1.0 + nu_) / (1.0 + nu_ * std::exp(-y));
        return std::min(r, 1.0);
    }
    if (regime_ == Regime::A)
        return erfcx_sqrt(y);
    return boost::math::erfc(std::sqrt(y));
}

bool GigSampler::thin_point(double x, Component comp, RandomStream& rng, SamplerStats* stats) const
{
    const double w = rng.uniform();
    bool keep;
    bool skipped = false;
    if (w < squeeze_) {
        keep = true;
        skipped = true;
    } else {
        const double rate = x / (2.0 * p_.delta * p_.delta);
        const double z =
            comp == Component::N1
                ? sample_sqrt_gamma_truncated(nu_, rate, corner_, TruncSide::right, rng)
                : sample_sqrt_gamma_truncated(0.5, rate, corner_, TruncSide::left, rng);
        keep = w < thinning_ratio(z, p_, cfg_, regime_, comp);
    }
    if (stats) {
        ++stats->z_stage.proposed;
        stats->z_stage.accepted += keep;
        stats->squeeze_skips += skipped;
    }
    return keep;
}

JumpSet GigSampler::sample_n1(Interval iv, RandomStream& rng, SamplerStats* stats) const
{
    JumpSet out;
    if (!has_n1())
        return out;
    const double d2 = 2.0 * p_.delta * p_.delta;
    const double g2 = 0.5 * p_.gamma * p_.gamma;
    const double scale = regime_ == Regime::A ? corner_ / (2.0 * kPi)
                                              : corner_ / (kPi * kPi * cfg_.H0);
    StageCounter* dom = stats ? &stats->dominating : nullptr;
    const JumpSet first =
        sample_gamma_process(T_ * scale / (nu_ * (1.0 + nu_)), g2, iv, rng, dom);
    const JumpSet second =
        sample_gamma_process(T_ * scale / (1.0 + nu_), g2 + corner_ * corner_ / d2, iv, rng, dom);
    const std::vector<double> cand = merge_descending(first.sizes, second.sizes);
    out.sizes.reserve(cand.size());
    for (double x : cand) {
        const bool pass = rng.uniform() < marginal_acceptance(x, Component::N1);
        if (stats) {
            ++stats->marginal.proposed;
            stats->marginal.accepted += pass;
        }
        if (pass && thin_point(x, Component::N1, rng, stats))
            out.sizes.push_back(x);
    }
    return out;
}

JumpSet GigSampler::sample_n2(Interval iv, RandomStream& rng, SamplerStats* stats) const
{
    const double d2 = 2.0 * p_.delta * p_.delta;
    const double g2 = 0.5 * p_.gamma * p_.gamma;
    double C, beta;
    if (regime_ == Regime::A) {
        C = p_.delta / std::sqrt(2.0 * kPi);
        beta = g2 + cfg_.z1 * cfg_.z1 / d2;
    } else {
        C = std::sqrt(2.0 * kPi) * p_.delta / (kPi * kPi * cfg_.H0);
        beta = g2;
    }
    const JumpSet cand =
        sample_tempered_stable(T_ * C, 0.5, beta, iv, rng, stats ? &stats->dominating : nullptr);
    JumpSet out;
    out.sizes.reserve(cand.size());
    for (double x : cand.sizes) {
        const bool pass = rng.uniform() < marginal_acceptance(x, Component::N2);
        if (stats) {
            ++stats->marginal.proposed;
            stats->marginal.accepted += pass;
        }
        if (pass && thin_point(x, Component::N2, rng, stats))
            out.sizes.push_back(x);
    }
    return out;
}

JumpSet GigSampler::sample_extra(Interval iv, RandomStream& rng, SamplerStats* stats) const
{
    if (!has_extra())
        return {};
    return sample_gamma_process(T_ * p_.lambda, 0.5 * p_.gamma * p_.gamma, iv, rng,
                                stats ? &stats->dominating : nullptr);
}

std::vector<GigComponent> GigSampler::component_ids() const
{
    std::vector<GigComponent> ids;
    if (has_n1())
        ids.push_back(GigComponent::n1);
    ids.push_back(GigComponent::n2);
    if (has_extra())
        ids.push_back(GigComponent::extra);
    return ids;
}

std::vector<TruncationComponent> GigSampler::components(const TruncationConfig& tc,
                                                        SamplerStats* stats) const
{
    std::vector<TruncationComponent> out;
    const double beta0 = tc.optimize_beta0 ? 0.0 : tc.beta0;
    for (GigComponent id : component_ids()) {
        TruncationComponent c;
        switch (id) {
        case GigComponent::n1:
            c.name = "N1";
            c.sample = [this, stats](double lo, double hi, RandomStream& rng) {
                return sample_n1({lo, hi}, rng, stats).sizes;
            };
            break;
        case GigComponent::n2:
            c.name = "N2";
            c.sample = [this, stats](double lo, double hi, RandomStream& rng) {
                return sample_n2({lo, hi}, rng, stats).sizes;
            };
            break;
        case GigComponent::extra:
            c.name = "extra";
            c.sample = [this, stats](double lo, double hi, RandomStream& rng) {
                return sample_extra({lo, hi}, rng, stats).sizes;
            };
            break;
        }
        c.upper = [this, id](double eps) { return gig_component_upper(p_, cfg_, id, eps, T_, T_); };
        c.lower = [this, id, beta0](double eps) {
            return gig_component_lower(p_, cfg_, id, eps, T_, T_, beta0);
        };
        out.push_back(std::move(c));
    }
    return out;
}

JumpSet sample_N1(const GigParams& p, const EnvelopeConfig& cfg, Interval iv, RandomStream& rng,
                  SamplerStats* stats)
{
    if (!(p.gamma > 0.0))
        throw std::invalid_argument("sample_N1: needs gamma > 0");
    return GigSampler(p, cfg).sample_n1(iv, rng, stats);
}

JumpSet sample_N2(const GigParams& p, const EnvelopeConfig& cfg, Interval iv, RandomStream& rng,
                  SamplerStats* stats)
{
    return GigSampler(p, cfg).sample_n2(iv, rng, stats);
}

JumpSet sample_positive_lambda_extra(const GigParams& p, Interval iv, RandomStream& rng)
{
    if (!(p.lambda > 0.0) || !(p.gamma > 0.0))
        throw std::invalid_argument("sample_positive_lambda_extra: needs lambda > 0 and gamma > 0");
    return sample_gamma_process(p.lambda, 0.5 * p.gamma * p.gamma, iv, rng);
}

GigSample sample_gig(const GigParams& p, const TruncationConfig& tc, const EnvelopeConfig& cfg,
                     RandomStream& rng, double T)
{
    const GigSampler sampler(p, cfg, T);
    GigSample out;
    const auto comps = sampler.components(tc, &out.stats);
    AdaptiveResult r = adaptive_sample(comps, tc, rng);
    out.jumps.sizes = std::move(r.sizes);
    out.components = sampler.component_ids();
    out.eps_final = r.eps_final;
    out.residual = r.residual;
    out.total = r.total;
    if (!gig_lower_splits(p, sampler.envelope())) {
        // Per-component lower bounds are unavailable; bound the whole residual below
        // the smallest stopping level instead.
        const double eps_min = *std::min_element(r.eps_final.begin(), r.eps_final.end());
        const ResidualMoments lo = tc.optimize_beta0
                                       ? gig_residual_lower_best(p, sampler.envelope(), eps_min, T, T)
                                       : gig_residual_lower(p, sampler.envelope(), eps_min, T, T,
                                                            tc.beta0);
        out.total.mu_lower = lo.mu_lower;
        out.total.var_lower = lo.var_lower;
    }
    return out;
}

}  // namespace ghshot
