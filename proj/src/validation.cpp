#include "dronecov/validation.hpp"

#include "dronecov/analytic.hpp"
#include "dronecov/density.hpp"
#include "dronecov/parallel.hpp"
#include "dronecov/stats.hpp"

#include <boost/math/special_functions/expint.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dronecov {

namespace {

CheckResult make_result(std::string name, double statistic, double threshold,
                        std::string comparison, std::string detail = {})
{
    CheckResult r;
    r.name = std::move(name);
    r.statistic = statistic;
    r.threshold = threshold;
    r.comparison = std::move(comparison);
    r.detail = std::move(detail);
    if (r.comparison == "<=") {
        r.passed = statistic <= threshold;
    } else if (r.comparison == "<") {
        r.passed = statistic < threshold;
    } else if (r.comparison == ">=") {
        r.passed = statistic >= threshold;
    } else if (r.comparison == ">") {
        r.passed = statistic > threshold;
    } else {
        throw std::invalid_argument("unknown comparison " + r.comparison);
    }
    if (!std::isfinite(statistic)) {
        r.passed = false;
    }
    return r;
}

std::string format_number(double x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace

CheckResult check_kernel_normalization(std::size_t n_pairs, std::uint64_t seed, double tol)
{
    Rng rng = substream(seed, 0);
    std::uniform_real_distribution<double> dist(1.0, 5000.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const double u_x = dist(rng);
        const double d = dist(rng);
        const double lo = std::abs(u_x - d);
        const double mass = kernel_mass(u_x, d, lo, u_x + d);
        worst = std::max(worst, std::abs(mass - 1.0));
    }
    return make_result("kernel_normalization", worst, tol, "<=",
                       std::to_string(n_pairs) + " random (u_x, d) pairs");
}

CheckResult check_density_continuity(double lambda0, double tol)
{
    const double u0s[] = {50.0, 100.0, 500.0, 1000.0, 3000.0};
    const double vts[] = {10.0, 250.0, 499.0, 625.0, 2500.0};
    double worst = 0.0;
    auto jump = [&](double a, double b) { worst = std::max(worst, std::abs(a - b) / lambda0); };
    for (double u0 : u0s) {
        for (double vt : vts) {
            const double v = 1.0;
            const double t = vt;
            const double outer = u0 + vt;
            const double inner = std::abs(u0 - vt);
            const double inner_value = vt > u0 ? lambda0 : 0.0;
            jump(lambda0 * ring_fraction(outer, u0, vt), lambda0);
            jump(interferer_density(outer, u0, t, v, lambda0), lambda0);
            if (inner > 0.0) {
                jump(lambda0 * ring_fraction(inner, u0, vt), inner_value);
                jump(interferer_density(inner, u0, t, v, lambda0), inner_value);
            }
            // Approaches from both sides, a few ulps at a time.
            double below = outer;
            double above = outer;
            double in_lo = inner;
            double in_hi = inner;
            for (int k = 0; k < 8; ++k) {
                below = std::nextafter(below, 0.0);
                above = std::nextafter(above, std::numeric_limits<double>::infinity());
                jump(interferer_density(below, u0, t, v, lambda0),
                     interferer_density(above, u0, t, v, lambda0));
                if (inner > 0.0) {
                    in_lo = std::nextafter(in_lo, 0.0);
                    in_hi = std::nextafter(in_hi, std::numeric_limits<double>::infinity());
                    jump(interferer_density(in_lo, u0, t, v, lambda0),
                         interferer_density(in_hi, u0, t, v, lambda0));
                }
            }
        }
    }
    return make_result("density_continuity", worst, tol, "<=",
                       "largest boundary jump relative to lambda0");
}

HistogramCheck check_density_histogram(double u0, double t, double v, std::size_t n_points,
                                       double bin_width, double u_max, std::uint64_t seed,
                                       double min_fraction, double model_density_scale)
{
    HistogramCheck out;
    out.histogram = displaced_exclusion_histogram(u0, v * t, n_points, bin_width, u_max, seed);
    const auto& hist = out.histogram;
    const double r_out = hist.source_outer_radius;
    const double source_area = kPi * (r_out * r_out - u0 * u0);
    const double n = static_cast<double>(n_points);

    out.expected.resize(hist.counts.size());
    std::size_t within = 0;
    for (std::size_t b = 0; b < hist.counts.size(); ++b) {
        const double lo = static_cast<double>(b) * bin_width;
        const double hi = std::min(lo + bin_width, u_max);
        const double p =
            model_density_scale * expected_annulus_count(lo, hi, u0, t, v, 1.0) / source_area;
        out.expected[b] = n * p;
        const double sd = std::sqrt(n * p * (1.0 - p));
        const double diff = std::abs(static_cast<double>(hist.counts[b]) - out.expected[b]);
        if (diff <= 3.0 * sd) {
            ++within;
        }
    }
    const double fraction = static_cast<double>(within) / static_cast<double>(hist.counts.size());
    std::ostringstream name;
    name << "density_histogram_t" << t;
    std::ostringstream detail;
    detail << within << " of " << hist.counts.size() << " bins within 3 sd, " << n_points
           << " points";
    out.result = make_result(name.str(), fraction, min_fraction, ">=", detail.str());
    return out;
}

CheckResult check_displacement_invariance(double lambda0, double d, double test_radius,
                                          std::size_t n_regions, std::size_t n_realizations,
                                          std::uint64_t seed)
{
    const auto counts =
        displaced_region_counts(lambda0, d, test_radius, n_regions, n_realizations, seed);
    std::vector<std::uint64_t> pooled;
    pooled.reserve(n_regions * n_realizations);
    for (const auto& row : counts) {
        pooled.insert(pooled.end(), row.begin(), row.end());
    }
    const double mean = lambda0 * kPi * test_radius * test_radius / static_cast<double>(n_regions);
    const auto gof = stats::poisson_goodness_of_fit(pooled, mean);
    std::ostringstream detail;
    detail << n_regions << " regions x " << n_realizations << " realizations, chi2="
           << gof.statistic << ", dof=" << gof.dof;
    return make_result("displacement_invariance", gof.p_value, 0.01, ">", detail.str());
}

CheckResult check_serving_distance_law(const NetworkParams& params, std::size_t n_draws,
                                       std::uint64_t seed, double tol)
{
    // Beyond this radius the nearest DBS lies with probability 1e-12.
    const double radius = std::sqrt(-std::log(1e-12) / (kPi * params.lambda0));
    std::vector<double> distances(n_draws);
    parallel_for(n_draws, [&](std::size_t i) {
        Rng rng = substream(seed, i);
        const Snapshot snap = sample_deployment(params, radius, rng);
        distances[i] = snap.serving_position().norm();
    });
    const double lambda0 = params.lambda0;
    const double ks = stats::ks_statistic(
        std::move(distances), [lambda0](double u) { return -std::expm1(-kPi * lambda0 * u * u); });
    return make_result("serving_distance_ks", ks, tol, "<",
                       std::to_string(n_draws) + " deployments");
}

CheckResult check_model1_stationarity(const NetworkParams& params, double t, std::size_t n_trials,
                                      std::uint64_t seed, const SimulationConfig& sim)
{
    MobilitySpec mobility;
    mobility.v = params.v;
    const auto at0 =
        simulate_sinr(0.0, ServiceModel::UeIndependent, mobility, params, n_trials, seed, sim);
    const auto at_t =
        simulate_sinr(t, ServiceModel::UeIndependent, mobility, params, n_trials, seed + 1, sim);
    const double d = stats::ks_two_sample_statistic(at0, at_t);
    const double p = stats::ks_two_sample_pvalue(d, at0.size(), at_t.size());
    std::ostringstream name;
    name << "model1_stationarity_t" << t;
    return make_result(name.str(), p, 0.01, ">", "two-sample KS D=" + format_number(d));
}

std::vector<CheckResult> check_cross_engine_coverage(std::span<const double> sinr, double t,
                                                     ServiceModel model,
                                                     const std::vector<double>& gammas_db,
                                                     const NetworkParams& params, double floor)
{
    std::vector<CheckResult> out;
    for (double g_db : gammas_db) {
        const double gamma = db_to_linear(g_db);
        const auto mc = coverage_from_sinr(sinr, gamma);
        const auto an = coverage(gamma, t, model, params);
        const double tol = std::max(2.0 * mc.half_width_95, floor);
        std::ostringstream name;
        name << "coverage_" << to_string(model) << "_t" << t << "_g" << g_db << "dB";
        std::ostringstream detail;
        detail.precision(10);
        detail << "analytic=" << an.value << " mc=" << mc.mean << " ci=" << mc.half_width_95;
        out.push_back(make_result(name.str(), std::abs(an.value - mc.mean), tol, "<=", detail.str()));
    }
    return out;
}

CheckResult check_cross_engine_rate(std::span<const double> sinr, double t, ServiceModel model,
                                    const NetworkParams& params, double floor)
{
    const auto mc = rate_from_sinr(sinr);
    const auto an = rate(t, model, params);
    const double tol = std::max(2.0 * mc.half_width_95, floor);
    std::ostringstream name;
    name << "rate_" << to_string(model) << "_t" << t;
    std::ostringstream detail;
    detail.precision(10);
    detail << "analytic=" << an.value << " mc=" << mc.mean << " ci=" << mc.half_width_95;
    return make_result(name.str(), std::abs(an.value - mc.mean), tol, "<=", detail.str());
}

CheckResult check_t0_collapse(const NetworkParams& params, const std::vector<double>& gammas_db,
                              double tol)
{
    double worst = 0.0;
    for (double g_db : gammas_db) {
        const double gamma = db_to_linear(g_db);
        const double m1 = coverage_model1(gamma, params).value;
        const double m2 = coverage_model2(gamma, 0.0, params).value;
        worst = std::max(worst, std::abs(m1 - m2));
    }
    return make_result("t0_collapse", worst, tol, "<=",
                       std::to_string(gammas_db.size()) + " thresholds");
}

CheckResult check_model_dominance(const NetworkParams& params, const std::vector<double>& times,
                                  const std::vector<double>& gammas_db)
{
    double worst = std::numeric_limits<double>::infinity();
    std::string where;
    for (double g_db : gammas_db) {
        const double gamma = db_to_linear(g_db);
        const auto m1 = coverage_model1(gamma, params);
        for (double t : times) {
            if (t <= 0.0) {
                continue;
            }
            const auto m2 = coverage_model2(gamma, t, params);
            const double margin = m2.value - m1.value + m1.quadrature_error_estimate
                                  + m2.quadrature_error_estimate;
            if (margin < worst) {
                worst = margin;
                std::ostringstream os;
                os << "tightest at t=" << t << " gamma=" << g_db << " dB";
                where = os.str();
            }
        }
    }
    return make_result("model_dominance", worst, 0.0, ">=", where);
}

CheckResult check_rate_ordering(const std::string& name, const NetworkParams& higher,
                                const NetworkParams& lower, double t)
{
    const auto hi = rate(t, ServiceModel::UeDependent, higher);
    const auto lo = rate(t, ServiceModel::UeDependent, lower);
    const double margin =
        hi.value - lo.value - hi.quadrature_error_estimate - lo.quadrature_error_estimate;
    std::ostringstream full_name;
    full_name << name << "_t" << t;
    std::ostringstream detail;
    detail.precision(10);
    detail << "higher=" << hi.value << " lower=" << lo.value;
    return make_result(full_name.str(), margin, 0.0, ">", detail.str());
}

CheckResult check_interference_limited(const NetworkParams& params, ServiceModel model,
                                       const std::vector<double>& times,
                                       const std::vector<double>& gammas_db, double tol)
{
    const NetworkParams quiet = params.without_noise();
    double worst = 0.0;
    std::string where;
    for (double g_db : gammas_db) {
        const double gamma = db_to_linear(g_db);
        for (double t : times) {
            const double noisy = coverage(gamma, t, model, params).value;
            const double clean = coverage(gamma, t, model, quiet).value;
            const double rel = std::abs(clean - noisy) / noisy;
            if (rel > worst) {
                worst = rel;
                std::ostringstream os;
                os << "largest at t=" << t << " gamma=" << g_db << " dB";
                where = os.str();
            }
        }
    }
    return make_result("interference_limited_" + to_string(model), worst, tol, "<", where);
}

CheckResult check_mobility_ordering(const EmpiricalEstimate& straight,
                                    const EmpiricalEstimate& other, MobilityKind kind, double t)
{
    const double ci = std::max(straight.half_width_95, other.half_width_95);
    const double margin = other.mean - (straight.mean - 2.0 * ci);
    std::ostringstream name;
    name << "mobility_" << to_string(kind) << "_t" << t;
    std::ostringstream detail;
    detail.precision(10);
    detail << "straight=" << straight.mean << " other=" << other.mean << " ci=" << ci;
    return make_result(name.str(), margin, 0.0, ">=", detail.str());
}

CheckResult check_noise_dimensioning(const NetworkParams& params, double tol)
{
    const NetworkParams p = params.with_dimensioned_noise();
    const double d = edge_distance(p);
    const double snr = p.P * std::pow(d, -p.alpha) / p.N0;
    return make_result("noise_dimensioning", std::abs(snr - 1.0), tol, "<=",
                       "edge SNR=" + format_number(snr));
}

CheckResult check_rate_path(double tol)
{
    const double expected = std::exp(1.0) * boost::math::expint(1, 1.0);
    const auto r = rate_from_coverage([](double g) { return std::exp(-g); });
    std::ostringstream detail;
    detail.precision(15);
    detail << "rate=" << r.value << " expected=" << expected;
    return make_result("rate_path", std::abs(r.value - expected), tol, "<=", detail.str());
}

}  // namespace dronecov
