#pragma once

#include "ghshot/random.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace ghshot {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct JumpRecord {
    double time;
    double size;
};

// Jump magnitudes in (a, b].
struct Interval {
    double a = 0.0;
    double b = kInf;
};

// Sizes are kept in descending order.  `times` is empty until assign_times.
struct JumpSet {
    std::vector<double> sizes;
    std::vector<double> times;

    std::size_t size() const { return sizes.size(); }
    bool empty() const { return sizes.empty(); }
    JumpRecord operator[](std::size_t i) const { return {times.empty() ? 0.0 : times[i], sizes[i]}; }
};

using EpochStream = std::vector<double>;

// Proposed / accepted point counts for one thinning stage.
struct StageCounter {
    std::uint64_t proposed = 0;
    std::uint64_t accepted = 0;

    StageCounter& operator+=(const StageCounter& o)
    {
        proposed += o.proposed;
        accepted += o.accepted;
        return *this;
    }
    double rate() const { return proposed ? double(accepted) / double(proposed) : 1.0; }
};

// Poisson(hi - lo) epochs placed uniformly on (lo, hi], ascending.
EpochStream epochs_in_range(double gamma_lo, double gamma_hi, RandomStream& rng);

double ts_inverse_tail(double C, double alpha, double gamma);
double gamma_inverse_tail(double C, double beta, double gamma);

// Tail masses of the dominating measures, Q0+(x) = measure of (x, inf).
double stable_tail(double C, double alpha, double x);
double gamma_dominating_tail(double C, double beta, double x);

// Jumps of the tempered stable process C x^{-1-alpha} e^{-beta x} restricted to iv.
// beta = 0 gives the stable process.  `counter` (optional) records the tempering stage.
JumpSet sample_tempered_stable(double C, double alpha, double beta, Interval iv, RandomStream& rng,
                               StageCounter* counter = nullptr);

// Jumps of the gamma process C x^{-1} e^{-beta x} restricted to iv.
JumpSet sample_gamma_process(double C, double beta, Interval iv, RandomStream& rng,
                             StageCounter* counter = nullptr);

// Attaches i.i.d. U(0, T) arrival times.
JumpSet assign_times(std::vector<double> sizes, double T, RandomStream& rng);

// Merges two descending size lists.
std::vector<double> merge_descending(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace ghshot
