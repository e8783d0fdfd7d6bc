#include "dronecov/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dronecov::stats {

double pairwise_sum(std::span<const double> values)
{
    constexpr std::size_t kBlock = 64;
    if (values.size() <= kBlock) {
        double s = 0.0;
        for (double v : values) {
            s += v;
        }
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double mean(std::span<const double> values)
{
    if (values.empty()) {
        return 0.0;
    }
    return pairwise_sum(values) / static_cast<double>(values.size());
}

double sample_std(std::span<const double> values)
{
    if (values.size() < 2) {
        return 0.0;
    }
    const double m = mean(values);
    std::vector<double> sq(values.size());
    std::transform(values.begin(), values.end(), sq.begin(),
                   [m](double v) { return (v - m) * (v - m); });
    return std::sqrt(pairwise_sum(sq) / static_cast<double>(values.size() - 1));
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf)
{
    if (samples.empty()) {
        throw std::invalid_argument("ks_statistic: no samples");
    }
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b)
{
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("ks_two_sample_statistic: empty sample");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) {
            ++i;
        }
        while (j < b.size() && b[j] <= x) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_two_sample_pvalue(double statistic, std::size_t n, std::size_t m)
{
    const double ne = static_cast<double>(n) * static_cast<double>(m)
                      / static_cast<double>(n + m);
    const double sq = std::sqrt(ne);
    // Stephens' small-sample correction of the Kolmogorov limit law
    const double lambda = (sq + 0.12 + 0.11 / sq) * statistic;
    if (lambda < 1e-3) {
        return 1.0;
    }
    double p = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        p += (k % 2 == 1 ? 2.0 : -2.0) * term;
        if (term < 1e-16) {
            break;
        }
    }
    return std::clamp(p, 0.0, 1.0);
}

ChiSquareResult poisson_goodness_of_fit(std::span<const std::uint64_t> counts, double mean)
{
    if (counts.empty() || !(mean > 0.0)) {
        throw std::invalid_argument("poisson_goodness_of_fit: need counts and a positive mean");
    }
    const double n = static_cast<double>(counts.size());
    const boost::math::poisson_distribution<double> law(mean);
    const auto k_max = *std::max_element(counts.begin(), counts.end());

    std::vector<double> observed(k_max + 1, 0.0);
    for (auto c : counts) {
        observed[c] += 1.0;
    }
    std::vector<double> expected(k_max + 1);
    for (std::uint64_t k = 0; k <= k_max; ++k) {
        expected[k] = n * boost::math::pdf(law, static_cast<double>(k));
    }
    expected[k_max] = n * boost::math::cdf(boost::math::complement(law, static_cast<double>(k_max) - 1.0));
    if (k_max == 0) {
        expected[0] = n;
    }

    // merge bins left to right until each expects >= 5; remainder joins the last bin
    std::vector<double> obs_bins;
    std::vector<double> exp_bins;
    double o = 0.0;
    double e = 0.0;
    for (std::size_t k = 0; k < observed.size(); ++k) {
        o += observed[k];
        e += expected[k];
        if (e >= 5.0) {
            obs_bins.push_back(o);
            exp_bins.push_back(e);
            o = 0.0;
            e = 0.0;
        }
    }
    if (e > 0.0 || o > 0.0) {
        if (exp_bins.empty()) {
            obs_bins.push_back(o);
            exp_bins.push_back(e);
        } else {
            obs_bins.back() += o;
            exp_bins.back() += e;
        }
    }

    ChiSquareResult out;
    out.bins = obs_bins.size();
    for (std::size_t b = 0; b < obs_bins.size(); ++b) {
        const double diff = obs_bins[b] - exp_bins[b];
        out.statistic += diff * diff / exp_bins[b];
    }
    out.dof = static_cast<double>(out.bins) - 1.0;
    if (out.dof < 1.0) {
        out.p_value = 1.0;
        return out;
    }
    const boost::math::chi_squared_distribution<double> chi(out.dof);
    out.p_value = boost::math::cdf(boost::math::complement(chi, out.statistic));
    return out;
}

}  // namespace dronecov::stats
