#include "ghshot/pp_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ghshot {

namespace {

void check_interval(const Interval& iv)
{
    if (!(iv.a >= 0.0) || !(iv.a < iv.b) || std::isnan(iv.b))
        throw std::domain_error("interval must satisfy 0 <= a < b");
}

}  // namespace

EpochStream epochs_in_range(double gamma_lo, double gamma_hi, RandomStream& rng)
{
    if (!std::isfinite(gamma_hi) || !std::isfinite(gamma_lo))
        throw std::domain_error("epochs_in_range: epoch range must be finite");
    if (!(gamma_lo >= 0.0) || gamma_hi < gamma_lo)
        throw std::domain_error("epochs_in_range: need 0 <= gamma_lo <= gamma_hi");
    EpochStream out;
    const double width = gamma_hi - gamma_lo;
    if (width == 0.0)
        return out;
    const std::uint64_t m = rng.poisson(width);
    out.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i)
        out.push_back(gamma_hi - width * rng.uniform());  // in (lo, hi]
    std::sort(out.begin(), out.end());
    return out;
}

double ts_inverse_tail(double C, double alpha, double gamma)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("ts_inverse_tail: alpha must lie in (0,1)");
    if (!(C > 0.0) || !(gamma >= 0.0))
        throw std::domain_error("ts_inverse_tail: C must be positive");
    return std::pow(alpha * gamma / C, -1.0 / alpha);
}

double gamma_inverse_tail(double C, double beta, double gamma)
{
    if (!(C > 0.0) || !(beta > 0.0) || !(gamma >= 0.0))
        throw std::domain_error("gamma_inverse_tail: parameters must be positive");
    return 1.0 / (beta * std::expm1(gamma / C));
}

double stable_tail(double C, double alpha, double x)
{
    if (std::isinf(x))
        return 0.0;
    if (x == 0.0)
        return kInf;
    return (C / alpha) * std::pow(x, -alpha);
}

double gamma_dominating_tail(double C, double beta, double x)
{
    if (std::isinf(x))
        return 0.0;
    if (x == 0.0)
        return kInf;
    return C * std::log1p(1.0 / (beta * x));
}

JumpSet sample_tempered_stable(double C, double alpha, double beta, Interval iv, RandomStream& rng,
                               StageCounter* counter)
{
    check_interval(iv);
    if (!(C > 0.0) || !(alpha > 0.0 && alpha < 1.0) || !(beta >= 0.0))
        throw std::domain_error("sample_tempered_stable: invalid parameters");
    const EpochStream eps =
        epochs_in_range(stable_tail(C, alpha, iv.b), stable_tail(C, alpha, iv.a), rng);
    JumpSet out;
    out.sizes.reserve(eps.size());
    for (double g : eps) {
        const double x = ts_inverse_tail(C, alpha, g);
        if (!(x > iv.a && x <= iv.b))
            continue;  // rounding at the interval ends
        const bool keep = beta == 0.0 || rng.uniform() < std::exp(-beta * x);
        if (counter) {
            ++counter->proposed;
            counter->accepted += keep;
        }
        if (keep)
            out.sizes.push_back(x);
    }
    return out;
}

JumpSet sample_gamma_process(double C, double beta, Interval iv, RandomStream& rng,
                             StageCounter* counter)
{
    check_interval(iv);
    if (!(C > 0.0) || !(beta > 0.0))
        throw std::domain_error("sample_gamma_process: invalid parameters");
    const EpochStream eps = epochs_in_range(gamma_dominating_tail(C, beta, iv.b),
                                            gamma_dominating_tail(C, beta, iv.a), rng);
    JumpSet out;
    out.sizes.reserve(eps.size());
    for (double g : eps) {
        const double x = gamma_inverse_tail(C, beta, g);
        if (!(x > iv.a && x <= iv.b))
            continue;
        const double bx = beta * x;
        const bool keep = rng.uniform() < (1.0 + bx) * std::exp(-bx);
        if (counter) {
            ++counter->proposed;
            counter->accepted += keep;
        }
        if (keep)
            out.sizes.push_back(x);
    }
    return out;
}

JumpSet assign_times(std::vector<double> sizes, double T, RandomStream& rng)
{
    if (!(T > 0.0))
        throw std::domain_error("assign_times: horizon must be positive");
    JumpSet out;
    out.sizes = std::move(sizes);
    out.times.resize(out.sizes.size());
    for (double& t : out.times)
        t = T * rng.uniform();
    return out;
}

std::vector<double> merge_descending(const std::vector<double>& a, const std::vector<double>& b)
{
    std::vector<double> out(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), out.begin(), std::greater<>());
    return out;
}

}  // namespace ghshot
