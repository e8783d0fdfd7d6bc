#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace dronecov::stats {

/// Pairwise (cascade) summation; result does not depend on how the samples
/// were produced, only on their order.
double pairwise_sum(std::span<const double> values);

double mean(std::span<const double> values);

/// Unbiased sample standard deviation (n - 1 denominator); 0 for n < 2.
double sample_std(std::span<const double> values);

/// One-sample Kolmogorov-Smirnov statistic sup |F_n - F|.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b);

/// Asymptotic Kolmogorov p-value for a two-sample statistic with sizes n and m.
double ks_two_sample_pvalue(double statistic, std::size_t n, std::size_t m);

struct ChiSquareResult {
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
    std::size_t bins = 0;
};

/// Pearson goodness-of-fit of observed counts against Poisson(mean). Count
/// values are binned, adjacent bins are merged until each expects at least 5
/// observations, and the upper bin absorbs the tail.
ChiSquareResult poisson_goodness_of_fit(std::span<const std::uint64_t> counts, double mean);

}  // namespace dronecov::stats
