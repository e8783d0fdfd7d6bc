#pragma once

#include "dronecov/params.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace dronecov {

using Rng = std::mt19937_64;

/// Independent generator for substream `index` of `master_seed`. Any trial can
/// be replayed on its own, so results do not depend on thread scheduling.
Rng substream(std::uint64_t master_seed, std::uint64_t index);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    double norm2() const { return x * x + y * y; }
    double norm() const;
};

enum class MobilityKind { StraightLine, RandomWalk, RandomWaypoint };

std::string to_string(MobilityKind kind);
MobilityKind parse_mobility_kind(const std::string& text);

struct MobilitySpec {
    MobilityKind kind = MobilityKind::StraightLine;
    double v = 12.5;
    double rw_epoch = 10.0;              // RW: direction resampled every rw_epoch seconds
    double rwp_waypoint_radius = 1000.0; // RWP: waypoints uniform in this disc about the drone
    double pause = 0.0;                  // RWP: pause at each waypoint

    void validate() const;
};

/// Ground projection and motion state of one DBS.
struct Drone {
    Vec2 pos;
    Vec2 heading;  // unit vector
    double epoch_elapsed = 0.0;
    Vec2 waypoint;
    bool has_waypoint = false;
    double pause_left = 0.0;
};

/// DBS positions at one instant, relative to o' (the UE's projection onto the
/// DBS plane).
struct Snapshot {
    double time = 0.0;
    std::vector<Drone> drones;
    std::size_t serving = 0;
    std::uint64_t rng_seed = 0;
    unsigned empty_draw_retries = 0;

    Vec2 serving_position() const { return drones.at(serving).pos; }
    std::vector<Vec2> interferers() const;
};

/// Truncation of the explicitly simulated interference field.
struct SimulationConfig {
    /// Interferers farther than this from o' at the evaluation time are
    /// replaced by their mean interference power (homogeneous density lambda0).
    double coverage_radius = 20e3;
    bool far_field = true;

    void validate() const;
};

/// Mean interference power of a homogeneous PPP of density lambda0 beyond
/// ground distance `radius`: 2 pi lambda0 P (radius^2 + h^2)^(1 - alpha/2) / (alpha - 2).
double far_field_interference(const NetworkParams& params, double radius);

/// Disc that contains every DBS able to come within coverage_radius of o' by time t.
double simulation_radius(const SimulationConfig& sim, double v, double t);

/// Homogeneous PPP of density lambda0 on the disc of radius `radius`, each DBS
/// with a uniformly random heading. The DBS nearest to o' is the serving one.
/// An empty draw is redrawn and counted in empty_draw_retries.
Snapshot sample_deployment(const NetworkParams& params, double radius, Rng& rng);

/// Moves every DBS by dt. Interferers follow `mobility`. Under the UE-dependent
/// model the serving DBS flies radially toward o' and hovers there; under the
/// UE-independent model it follows `mobility` too and the UE re-associates with
/// the nearest DBS afterwards.
Snapshot advance(Snapshot snapshot, const MobilitySpec& mobility, ServiceModel model, double dt,
                 Rng& rng);

/// One SINR draw with independent unit-mean exponential fading on every link.
double sample_sinr(const Snapshot& snapshot, const NetworkParams& params,
                   const SimulationConfig& sim, Rng& rng);

struct EmpiricalEstimate {
    double mean = 0.0;
    double half_width_95 = 0.0;  // 1.96 * sample_std / sqrt(n_trials)
    std::size_t n_trials = 0;
};

EmpiricalEstimate summarize(std::span<const double> samples);

/// Per-trial SINR at time t: fresh deployment, advance to t, fading draw.
/// Trial i uses substream(master_seed, i); trials run in parallel.
std::vector<double> simulate_sinr(double t, ServiceModel model, const MobilitySpec& mobility,
                                  const NetworkParams& params, std::size_t n_trials,
                                  std::uint64_t master_seed, const SimulationConfig& sim = {});

EmpiricalEstimate coverage_from_sinr(std::span<const double> sinr, double gamma);
EmpiricalEstimate rate_from_sinr(std::span<const double> sinr);

EmpiricalEstimate empirical_coverage(double gamma, double t, ServiceModel model,
                                     const MobilitySpec& mobility, const NetworkParams& params,
                                     std::size_t n_trials, std::uint64_t master_seed,
                                     const SimulationConfig& sim = {});

/// Mean of ln(1 + SINR(t)) in nats.
EmpiricalEstimate empirical_rate(double t, ServiceModel model, const MobilitySpec& mobility,
                                 const NetworkParams& params, std::size_t n_trials,
                                 std::uint64_t master_seed, const SimulationConfig& sim = {});

/// Radial histogram of exclusion-zone interferers after a straight-line move of
/// length d. `n_points` sources are uniform on the annulus u0 < u < u_max + d,
/// i.e. a PPP conditioned on its count, so every bin count is binomial.
struct RadialHistogram {
    double u0 = 0.0;
    double displacement = 0.0;
    double source_outer_radius = 0.0;
    std::size_t n_points = 0;
    double bin_width = 0.0;
    std::vector<std::uint64_t> counts;  // bin i covers [i w, (i + 1) w)
};

RadialHistogram displaced_exclusion_histogram(double u0, double d, std::size_t n_points,
                                              double bin_width, double u_max,
                                              std::uint64_t master_seed);

/// Counts of a homogeneous PPP displaced by d in uniform random directions, in
/// `n_regions` equal-angle sectors of the disc of radius `test_radius`. One row
/// per realization.
std::vector<std::vector<std::uint64_t>> displaced_region_counts(double lambda0, double d,
                                                                double test_radius,
                                                                std::size_t n_regions,
                                                                std::size_t n_realizations,
                                                                std::uint64_t master_seed);

}  // namespace dronecov
