#pragma once

#include "dronecov/monte_carlo.hpp"
#include "dronecov/params.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dronecov {

/// Outcome of one invariant check. `statistic` is compared against `threshold`
/// in the sense given by `comparison` ("<=", ">=", ">" or "<").
struct CheckResult {
    std::string name;
    double statistic = 0.0;
    double threshold = 0.0;
    std::string comparison;
    bool passed = false;
    std::string detail;
};

/// Largest |mass - 1| of the displacement kernel over `n_pairs` random
/// (u_x, d) pairs with u_x in [1, 5000] m and d in [1, 5000] m.
CheckResult check_kernel_normalization(std::size_t n_pairs, std::uint64_t seed, double tol = 1e-6);

/// Largest jump of interferer_density across the outer and inner region
/// boundaries, relative to lambda0, over a grid of (u0, vt) pairs.
CheckResult check_density_continuity(double lambda0, double tol = 1e-12);

struct HistogramCheck {
    CheckResult result;
    RadialHistogram histogram;
    std::vector<double> expected;  // per bin, same layout as histogram.counts
};

/// Simulated radial histogram of displaced exclusion-zone points against the
/// expected bin counts from the interferer density. Passes when at least
/// `min_fraction` of bins lie within 3 binomial standard deviations.
/// `model_density_scale` != 1 scales the expected counts, which is the
/// negative control.
HistogramCheck check_density_histogram(double u0, double t, double v, std::size_t n_points,
                                       double bin_width, double u_max, std::uint64_t seed,
                                       double min_fraction = 0.99, double model_density_scale = 1.0);

/// Chi-square goodness of fit of displaced-PPP sector counts to
/// Poisson(lambda0 * area). Passes when p > 0.01.
CheckResult check_displacement_invariance(double lambda0, double d, double test_radius,
                                          std::size_t n_regions, std::size_t n_realizations,
                                          std::uint64_t seed);

/// KS distance between simulated serving distances and 1 - exp(-pi lambda0 u^2).
CheckResult check_serving_distance_law(const NetworkParams& params, std::size_t n_draws,
                                       std::uint64_t seed, double tol = 0.01);

/// Two-sample KS test of UE-independent SINR at t = 0 against time t.
/// Passes when p > 0.01.
CheckResult check_model1_stationarity(const NetworkParams& params, double t, std::size_t n_trials,
                                      std::uint64_t seed, const SimulationConfig& sim = {});

/// |analytic - MC| against max(2 CI, floor) for every gamma at time t, from
/// one set of simulated SINR samples.
std::vector<CheckResult> check_cross_engine_coverage(std::span<const double> sinr, double t,
                                                     ServiceModel model,
                                                     const std::vector<double>& gammas_db,
                                                     const NetworkParams& params,
                                                     double floor = 1e-3);

CheckResult check_cross_engine_rate(std::span<const double> sinr, double t, ServiceModel model,
                                    const NetworkParams& params, double floor = 5e-3);

/// Largest |model 2 at t = 0 - model 1| over the gamma grid.
CheckResult check_t0_collapse(const NetworkParams& params, const std::vector<double>& gammas_db,
                              double tol = 1e-8);

/// Smallest model 2 - model 1 + quadrature error over the grid; must be >= 0.
CheckResult check_model_dominance(const NetworkParams& params, const std::vector<double>& times,
                                  const std::vector<double>& gammas_db);

/// rate(higher) - rate(lower) - (combined quadrature error) must be > 0.
CheckResult check_rate_ordering(const std::string& name, const NetworkParams& higher,
                                const NetworkParams& lower, double t);

/// Largest |pc(N0) - pc(0)| / pc(N0) over the grid for one model.
CheckResult check_interference_limited(const NetworkParams& params, ServiceModel model,
                                       const std::vector<double>& times,
                                       const std::vector<double>& gammas_db, double tol = 0.05);

/// rate(kind) - (rate(straight line) - 2 CI), with CI the larger of the two
/// half-widths; must be >= 0. Both estimates share trial substreams.
CheckResult check_mobility_ordering(const EmpiricalEstimate& straight,
                                    const EmpiricalEstimate& other, MobilityKind kind, double t);

/// |cell-edge SNR - 1| with the dimensioned noise.
CheckResult check_noise_dimensioning(const NetworkParams& params, double tol = 1e-9);

/// Rate integral of pc(gamma) = exp(-gamma) against e * E1(1).
CheckResult check_rate_path(double tol = 1e-5);

}  // namespace dronecov
