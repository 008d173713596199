#include "ghshot/random.hpp"

#include <cmath>
#include <stdexcept>

namespace ghshot {

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t substream_seed(std::uint64_t master, StreamKind kind, std::uint64_t index)
{
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s = a ^ (static_cast<std::uint64_t>(kind) * 0xd6e8feb86659fd93ULL);
    std::uint64_t b = splitmix64(s);
    s = b ^ index;
    splitmix64(s);
    return splitmix64(s);
}

double RandomStream::exponential()
{
    return -std::log(uniform_open());
}

double RandomStream::gamma(double shape, double rate)
{
    if (!(shape > 0.0) || !(rate > 0.0))
        throw std::domain_error("RandomStream::gamma: shape and rate must be positive");
    std::gamma_distribution<double> g(shape, 1.0);
    return g(engine_) / rate;
}

std::uint64_t RandomStream::poisson(double mean)
{
    if (!(mean >= 0.0) || !std::isfinite(mean))
        throw std::domain_error("RandomStream::poisson: mean must be finite and nonnegative");
    if (mean == 0.0)
        return 0;
    std::poisson_distribution<std::uint64_t> d(mean);
    return d(engine_);
}

}  // namespace ghshot
