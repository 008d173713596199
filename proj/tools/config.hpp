#pragma once

#include "ghshot/gh_process.hpp"
#include "ghshot/gig_envelope.hpp"
#include "ghshot/truncation.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghcli {

// Carries the JSON pointer of the offending field and its 1-based source line
// (0 when unknown).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, int line, const std::string& what);
    const std::string& field() const { return field_; }
    int line() const { return line_; }

private:
    std::string field_;
    int line_;
};

struct GigTriple {
    double lambda, delta, gamma;
};

struct SimulateOptions {
    std::size_t n_paths = 1;
    std::vector<double> grid;  // empty: {0, T}
};

struct MarginalOptions {
    std::size_t n = 100000;
    int histogram_bins = 50;  // 0 disables the histogram file
    int qq_quantiles = 99;    // 0 disables the QQ file
};

struct DiagnosticsOptions {
    std::vector<double> bound_nus{0.8, 0.3};
    double z_min = 1e-3;
    double z_max = 20.0;
    int z_points = 200;
    std::vector<double> acceptance_nus{0.6, 0.8, 2.5};
    std::vector<double> acceptance_x{0.01, 0.1, 1.0, 10.0};
    std::size_t proposals_per_x = 100000;
    std::vector<GigTriple> sandwich_sets;  // empty: the run parameters
    std::vector<double> sandwich_eps{1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0};
};

struct RunConfig {
    std::optional<std::uint64_t> seed;
    ghshot::GHParams params;
    ghshot::TruncationConfig truncation;
    bool squeeze = true;
    std::optional<double> z1, z0;
    double T = 1.0;
    int threads = 0;  // 0: runtime default
    SimulateOptions simulate;
    MarginalOptions marginal;
    DiagnosticsOptions diagnostics;

    ghshot::EnvelopeConfig envelope() const;
};

// `source` names the document in messages.  Unknown fields are errors.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

// Line of the value at a JSON pointer such as "/params/lambda" or "/simulate/grid/3";
// 0 when the pointer is not present.
int line_of(const std::string& text, const std::string& pointer);

}  // namespace ghcli
