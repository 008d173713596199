#include "ghshot/batch.hpp"

#include "ghshot/oracle_stats.hpp"

#include <omp.h>

#include <numeric>

namespace ghshot {

namespace {

struct PathOutput {
    double endpoint = 0.0;
    std::vector<double> values;
    GHPath path;
};

PathOutput run_path(const BatchSpec& spec, std::size_t i, const std::vector<double>* grid)
{
    RandomStream rng(spec.seed, StreamKind::path, i);
    PathOutput out;
    out.path = simulate_gh_path(spec.params, spec.truncation, spec.envelope, spec.T, rng);
    if (grid)
        out.values = path_values(out.path, *grid, rng);
    else
        out.endpoint = path_endpoint(out.path, rng);
    return out;
}

void accumulate(BatchSummary& s, const GHPath& p, std::size_t jumps)
{
    s.stats += p.stats;
    s.jumps += jumps;
    if (s.eps_final_mean.size() < p.eps_final.size())
        s.eps_final_mean.resize(p.eps_final.size(), 0.0);
    for (std::size_t k = 0; k < p.eps_final.size(); ++k)
        s.eps_final_mean[k] += p.eps_final[k];
}

void finish(BatchSummary& s, std::size_t n)
{
    for (double& e : s.eps_final_mean)
        e /= static_cast<double>(n ? n : 1);
}

// Per-path results are stored by index and reduced in index order afterwards, so the
// parallel and serial kernels agree bit for bit.
template <bool Parallel>
std::vector<double> endpoints(const BatchSpec& spec, std::size_t n, BatchSummary* summary)
{
    std::vector<double> out(n);
    std::vector<GHPath> meta(summary ? n : 0);
    std::vector<std::size_t> njumps(summary ? n : 0);
    const auto count = static_cast<std::int64_t>(n);
    if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (std::int64_t i = 0; i < count; ++i) {
            PathOutput r = run_path(spec, static_cast<std::size_t>(i), nullptr);
            out[i] = r.endpoint;
            if (summary) {
                njumps[i] = r.path.jumps.size();
                r.path.jumps = {};
                meta[i] = std::move(r.path);
            }
        }
    } else {
        for (std::int64_t i = 0; i < count; ++i) {
            PathOutput r = run_path(spec, static_cast<std::size_t>(i), nullptr);
            out[i] = r.endpoint;
            if (summary) {
                njumps[i] = r.path.jumps.size();
                r.path.jumps = {};
                meta[i] = std::move(r.path);
            }
        }
    }
    if (summary) {
        *summary = {};
        for (std::size_t i = 0; i < n; ++i) {
            accumulate(*summary, meta[i], njumps[i]);
        }
        finish(*summary, n);
    }
    return out;
}

template <bool Parallel>
PathBatch paths(const BatchSpec& spec, std::size_t n, const std::vector<double>& grid,
                bool keep_paths)
{
    PathBatch b;
    b.values.resize(n);
    std::vector<GHPath> all(n);
    const auto count = static_cast<std::int64_t>(n);
    if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < count; ++i) {
            PathOutput r = run_path(spec, static_cast<std::size_t>(i), &grid);
            b.values[i] = std::move(r.values);
            all[i] = std::move(r.path);
        }
    } else {
        for (std::int64_t i = 0; i < count; ++i) {
            PathOutput r = run_path(spec, static_cast<std::size_t>(i), &grid);
            b.values[i] = std::move(r.values);
            all[i] = std::move(r.path);
        }
    }
    b.records.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const GHPath& p = all[i];
        accumulate(b.summary, p, p.jumps.size());
        b.records[i] = {p.eps_final, p.gig_residual, p.residual_drift, p.residual_var,
                        p.jumps.size()};
    }
    finish(b.summary, n);
    if (n > 0)
        b.components = all[0].components;
    if (keep_paths)
        b.paths = std::move(all);
    return b;
}

template <bool Parallel>
std::vector<double> oracles(const GHParams& p, std::uint64_t seed, std::size_t n)
{
    std::vector<double> out(n);
    const auto count = static_cast<std::int64_t>(n);
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < count; ++i) {
            RandomStream rng(seed, StreamKind::oracle, static_cast<std::uint64_t>(i));
            out[i] = gh_variate(p, rng);
        }
    } else {
        for (std::int64_t i = 0; i < count; ++i) {
            RandomStream rng(seed, StreamKind::oracle, static_cast<std::uint64_t>(i));
            out[i] = gh_variate(p, rng);
        }
    }
    return out;
}

}  // namespace

std::vector<double> endpoint_batch(const BatchSpec& spec, std::size_t n, BatchSummary* summary)
{
    return endpoints<true>(spec, n, summary);
}

std::vector<double> endpoint_batch_serial(const BatchSpec& spec, std::size_t n,
                                          BatchSummary* summary)
{
    return endpoints<false>(spec, n, summary);
}

PathBatch path_batch(const BatchSpec& spec, std::size_t n, const std::vector<double>& grid,
                     bool keep_paths)
{
    return paths<true>(spec, n, grid, keep_paths);
}

PathBatch path_batch_serial(const BatchSpec& spec, std::size_t n, const std::vector<double>& grid,
                            bool keep_paths)
{
    return paths<false>(spec, n, grid, keep_paths);
}

std::vector<double> oracle_batch(const GHParams& p, std::uint64_t seed, std::size_t n)
{
    return oracles<true>(p, seed, n);
}

std::vector<double> oracle_batch_serial(const GHParams& p, std::uint64_t seed, std::size_t n)
{
    return oracles<false>(p, seed, n);
}

std::vector<double> gig_sum_batch(const BatchSpec& spec, std::size_t n, BatchSummary* summary)
{
    std::vector<double> out(n);
    std::vector<SamplerStats> stats(n);
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < count; ++i) {
        RandomStream rng(spec.seed, StreamKind::path, static_cast<std::uint64_t>(i));
        GigSample g = sample_gig(spec.params.gig, spec.truncation, spec.envelope, rng, spec.T);
        out[i] = std::accumulate(g.jumps.sizes.begin(), g.jumps.sizes.end(), 0.0);
        stats[i] = g.stats;
    }
    if (summary) {
        *summary = {};
        for (const auto& s : stats)
            summary->stats += s;
    }
    return out;
}

int max_threads() { return omp_get_max_threads(); }

void set_threads(int n)
{
    if (n > 0)
        omp_set_num_threads(n);
}

}  // namespace ghshot
