#include "ghshot/gh_process.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ghshot {

GHParams GHParams::from_alpha(double lambda, double alpha, double beta, double delta, double mu)
{
    if (!(std::abs(beta) < alpha))
        throw std::invalid_argument("GH alpha form needs |beta| < alpha");
    GHParams p;
    p.gig = {lambda, delta, std::sqrt(alpha * alpha - beta * beta)};
    p.mu = mu;
    p.beta = beta;
    p.sigma = 1.0;
    return p;
}

double GHParams::alpha() const
{
    const double g = gig.gamma / sigma;
    const double b = beta / (sigma * sigma);
    return std::sqrt(g * g + b * b);
}

void validate(const GHParams& p)
{
    validate(p.gig);
    if (!(p.sigma > 0.0) || !std::isfinite(p.sigma))
        throw std::invalid_argument("GH sigma must be positive");
    if (!std::isfinite(p.mu) || !std::isfinite(p.beta))
        throw std::invalid_argument("GH mu and beta must be finite");
}

std::optional<std::string> parameter_warning(const GHParams& p)
{
    if (p.mu != 0.0)
        return "mu is added to every jump; with infinitely many jumps a nonzero mu makes "
               "the path degenerate as the truncation level decreases";
    return std::nullopt;
}

JumpSet gh_jumps_from_gig(const JumpSet& gig_jumps, const GHParams& p, RandomStream& rng)
{
    JumpSet out;
    out.times = gig_jumps.times;
    out.sizes.resize(gig_jumps.sizes.size());
    for (std::size_t i = 0; i < gig_jumps.sizes.size(); ++i) {
        const double x = gig_jumps.sizes[i];
        if (!(x > 0.0))
            throw std::domain_error("gh_jumps_from_gig: GIG jump sizes must be positive");
        out.sizes[i] = p.mu + p.beta * x + p.sigma * std::sqrt(x) * rng.normal();
    }
    return out;
}

GHPath simulate_gh_path(const GHParams& p, const TruncationConfig& tc, const EnvelopeConfig& cfg,
                        double T, RandomStream& rng)
{
    validate(p);
    GigSample g = sample_gig(p.gig, tc, cfg, rng, T);
    const JumpSet timed = assign_times(std::move(g.jumps.sizes), T, rng);
    GHPath path;
    path.jumps = gh_jumps_from_gig(timed, p, rng);
    path.T = T;
    path.components = std::move(g.components);
    path.eps_final = std::move(g.eps_final);
    path.gig_residual = g.total;
    path.stats = g.stats;
    if (tc.inject_residual) {
        const Moments m = gh_residual_moments(g.total, p.beta, p.sigma, T, T);
        path.residual_drift = m.mu;
        path.residual_var = m.var;
    }
    return path;
}

std::vector<double> path_values(const GHPath& path, const std::vector<double>& grid,
                                RandomStream& rng)
{
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0) || grid[i] > path.T)
            throw std::domain_error("path_values: grid point outside [0, T]");
        if (i > 0 && grid[i] < grid[i - 1])
            throw std::domain_error("path_values: grid must be sorted");
    }
    const std::size_t n = path.jumps.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return path.jumps.times[a] < path.jumps.times[b]; });

    std::vector<double> out(grid.size());
    std::size_t k = 0;
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        while (k < n && path.jumps.times[order[k]] <= grid[i])
            acc += path.jumps.sizes[order[k++]];
        out[i] = acc;
    }
    inject_gaussian_residual(out, {path.residual_drift, path.residual_var}, path.T, grid, rng);
    return out;
}

double path_endpoint(const GHPath& path, RandomStream& rng)
{
    double acc = std::accumulate(path.jumps.sizes.begin(), path.jumps.sizes.end(), 0.0);
    acc += path.residual_drift;
    if (path.residual_var > 0.0)
        acc += std::sqrt(path.residual_var) * rng.normal();
    return acc;
}

}  // namespace ghshot
