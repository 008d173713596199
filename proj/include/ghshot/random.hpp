#pragma once

#include <cstdint>
#include <random>

namespace ghshot {

// Substream families derived from one master seed.
enum class StreamKind : std::uint64_t { path = 1, oracle = 2, auxiliary = 3 };

std::uint64_t splitmix64(std::uint64_t& state);

// Seed for substream `index` of family `kind`; distinct (kind, index) pairs give
// unrelated engines.
std::uint64_t substream_seed(std::uint64_t master, StreamKind kind, std::uint64_t index);

// Owned by exactly one thread at a time.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
    RandomStream(std::uint64_t master, StreamKind kind, std::uint64_t index)
        : engine_(substream_seed(master, kind, index)) {}

    // [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    // (0, 1)
    double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
    double normal() { return normal_(engine_); }
    double exponential();
    // Gamma with the given shape and rate.
    double gamma(double shape, double rate);
    std::uint64_t poisson(double mean);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace ghshot
