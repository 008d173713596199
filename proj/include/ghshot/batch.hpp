#pragma once

#include "ghshot/gh_process.hpp"
#include "ghshot/gig_sampler.hpp"
#include "ghshot/truncation.hpp"

#include <cstdint>
#include <vector>

namespace ghshot {

// Path i always draws from substream (seed, path, i) and oracle draw i from
// (seed, oracle, i), so results do not depend on the thread count.
struct BatchSpec {
    GHParams params;
    TruncationConfig truncation;
    EnvelopeConfig envelope;
    double T = 1.0;
    std::uint64_t seed = 0;
};

struct BatchSummary {
    SamplerStats stats;
    std::vector<double> eps_final_mean;  // per component
    std::uint64_t jumps = 0;
};

// Truncation outcome of one path, without its jumps.
struct PathRecord {
    std::vector<double> eps_final;  // per component
    ResidualMoments gig_residual;
    double residual_drift = 0.0;
    double residual_var = 0.0;
    std::size_t jumps = 0;
};

struct PathBatch {
    std::vector<std::vector<double>> values;  // [path][grid point]
    std::vector<PathRecord> records;
    std::vector<GigComponent> components;
    std::vector<GHPath> paths;  // kept only when requested
    BatchSummary summary;
};

// Endpoints W(T) of n paths.
std::vector<double> endpoint_batch(const BatchSpec& spec, std::size_t n,
                                   BatchSummary* summary = nullptr);
std::vector<double> endpoint_batch_serial(const BatchSpec& spec, std::size_t n,
                                          BatchSummary* summary = nullptr);

PathBatch path_batch(const BatchSpec& spec, std::size_t n, const std::vector<double>& grid,
                     bool keep_paths = false);
PathBatch path_batch_serial(const BatchSpec& spec, std::size_t n, const std::vector<double>& grid,
                            bool keep_paths = false);

// n exact GH variates.
std::vector<double> oracle_batch(const GHParams& p, std::uint64_t seed, std::size_t n);
std::vector<double> oracle_batch_serial(const GHParams& p, std::uint64_t seed, std::size_t n);

// Sum of GIG jump sizes (no residual) for n independent runs; used to compare samplers.
std::vector<double> gig_sum_batch(const BatchSpec& spec, std::size_t n,
                                  BatchSummary* summary = nullptr);

int max_threads();
void set_threads(int n);

}  // namespace ghshot
