#pragma once

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace testing {

inline double rel_err(double got, double want)
{
    if (want == 0.0)
        return std::abs(got);
    return std::abs(got - want) / std::abs(want);
}

inline double mean(const std::vector<double>& v)
{
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v)
{
    const double m = mean(v);
    double s = 0.0;
    for (double x : v)
        s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

// Standard error of the sample mean.
inline double std_err(const std::vector<double>& v)
{
    return std::sqrt(variance(v) / static_cast<double>(v.size()));
}

inline double chi2_critical(double dof, double alpha)
{
    return boost::math::quantile(boost::math::complement(boost::math::chi_squared(dof), alpha));
}

// Asymptotic two-sample KS critical value at level alpha.
inline double ks_critical(double alpha, std::size_t n, std::size_t m)
{
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

// One-sample KS distance against a CDF.
template <class Cdf>
double ks_one_sample(std::vector<double> x, Cdf cdf)
{
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

inline std::vector<double> logspace(double lo, double hi, int n)
{
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = std::pow(10.0, std::log10(lo) + (std::log10(hi) - std::log10(lo)) * i / (n - 1));
    return v;
}

}  // namespace testing
