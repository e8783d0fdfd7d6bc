#include "dronecov/monte_carlo.hpp"

#include "dronecov/parallel.hpp"
#include "dronecov/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dronecov {

namespace {

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

Vec2 random_direction(Rng& rng)
{
    const double theta = 2.0 * kPi * uniform01(rng);
    return {std::cos(theta), std::sin(theta)};
}

Vec2 uniform_in_disc(double radius, Rng& rng)
{
    const double r = radius * std::sqrt(uniform01(rng));
    const Vec2 dir = random_direction(rng);
    return {r * dir.x, r * dir.y};
}

std::size_t nearest_to_origin(const std::vector<Drone>& drones)
{
    std::size_t best = 0;
    double best_d2 = drones.front().pos.norm2();
    for (std::size_t i = 1; i < drones.size(); ++i) {
        const double d2 = drones[i].pos.norm2();
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return best;
}

void move_straight(Drone& d, double distance)
{
    d.pos.x += distance * d.heading.x;
    d.pos.y += distance * d.heading.y;
}

void move_random_walk(Drone& d, const MobilitySpec& m, double dt, Rng& rng)
{
    if (std::isinf(m.rw_epoch)) {
        move_straight(d, m.v * dt);
        return;
    }
    double remaining = dt;
    while (remaining > 0.0) {
        const double step = std::min(remaining, m.rw_epoch - d.epoch_elapsed);
        move_straight(d, m.v * step);
        d.epoch_elapsed += step;
        remaining -= step;
        if (m.rw_epoch - d.epoch_elapsed <= 1e-12 * m.rw_epoch) {
            d.epoch_elapsed = 0.0;
            d.heading = random_direction(rng);
        }
    }
}

void move_random_waypoint(Drone& d, const MobilitySpec& m, double dt, Rng& rng)
{
    double remaining = dt;
    while (remaining > 0.0) {
        if (d.pause_left > 0.0) {
            const double wait = std::min(d.pause_left, remaining);
            d.pause_left -= wait;
            remaining -= wait;
            continue;
        }
        if (!d.has_waypoint) {
            const Vec2 offset = uniform_in_disc(m.rwp_waypoint_radius, rng);
            d.waypoint = {d.pos.x + offset.x, d.pos.y + offset.y};
            d.has_waypoint = true;
        }
        const Vec2 to{d.waypoint.x - d.pos.x, d.waypoint.y - d.pos.y};
        const double dist = to.norm();
        const double reach = m.v * remaining;
        if (reach >= dist) {
            d.pos = d.waypoint;
            d.has_waypoint = false;
            d.pause_left = m.pause;
            remaining -= dist / m.v;
        } else {
            d.pos.x += reach * to.x / dist;
            d.pos.y += reach * to.y / dist;
            remaining = 0.0;
        }
    }
}

void move_drone(Drone& d, const MobilitySpec& m, double dt, Rng& rng)
{
    if (m.v == 0.0) {
        return;
    }
    switch (m.kind) {
    case MobilityKind::StraightLine:
        move_straight(d, m.v * dt);
        break;
    case MobilityKind::RandomWalk:
        move_random_walk(d, m, dt, rng);
        break;
    case MobilityKind::RandomWaypoint:
        move_random_waypoint(d, m, dt, rng);
        break;
    }
}

}  // namespace

Rng substream(std::uint64_t master_seed, std::uint64_t index)
{
    std::uint64_t state = master_seed ^ (0xD1B54A32D192ED03ULL * (index + 1));
    std::seed_seq seq{splitmix64(state), splitmix64(state), splitmix64(state), splitmix64(state)};
    return Rng(seq);
}

double Vec2::norm() const { return std::hypot(x, y); }

std::string to_string(MobilityKind kind)
{
    switch (kind) {
    case MobilityKind::StraightLine:
        return "straight-line";
    case MobilityKind::RandomWalk:
        return "random-walk";
    case MobilityKind::RandomWaypoint:
        return "random-waypoint";
    }
    return "unknown";
}

MobilityKind parse_mobility_kind(const std::string& text)
{
    if (text == "straight-line" || text == "straight" || text == "sl") {
        return MobilityKind::StraightLine;
    }
    if (text == "random-walk" || text == "rw") {
        return MobilityKind::RandomWalk;
    }
    if (text == "random-waypoint" || text == "rwp") {
        return MobilityKind::RandomWaypoint;
    }
    throw std::invalid_argument("unknown mobility kind '" + text + "'");
}

void MobilitySpec::validate() const
{
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("mobility: v must be >= 0");
    }
    if (!(rw_epoch > 0.0)) {
        throw std::invalid_argument("mobility: rw_epoch must be > 0");
    }
    if (!(rwp_waypoint_radius > 0.0) || !std::isfinite(rwp_waypoint_radius)) {
        throw std::invalid_argument("mobility: rwp_waypoint_radius must be > 0");
    }
    if (!(pause >= 0.0)) {
        throw std::invalid_argument("mobility: pause must be >= 0");
    }
}

void SimulationConfig::validate() const
{
    if (!(coverage_radius > 0.0) || !std::isfinite(coverage_radius)) {
        throw std::invalid_argument("simulation: coverage_radius must be > 0");
    }
}

std::vector<Vec2> Snapshot::interferers() const
{
    std::vector<Vec2> out;
    out.reserve(drones.size());
    for (std::size_t i = 0; i < drones.size(); ++i) {
        if (i != serving) {
            out.push_back(drones[i].pos);
        }
    }
    return out;
}

double far_field_interference(const NetworkParams& params, double radius)
{
    const double r2 = radius * radius + params.h * params.h;
    return 2.0 * kPi * params.lambda0 * params.P * std::pow(r2, 1.0 - params.alpha / 2.0)
           / (params.alpha - 2.0);
}

double simulation_radius(const SimulationConfig& sim, double v, double t)
{
    return sim.coverage_radius + v * t;
}

Snapshot sample_deployment(const NetworkParams& params, double radius, Rng& rng)
{
    if (!(radius > 0.0)) {
        throw std::invalid_argument("sample_deployment: radius must be > 0");
    }
    Snapshot snap;
    std::poisson_distribution<std::size_t> count_dist(params.lambda0 * kPi * radius * radius);
    std::size_t count = count_dist(rng);
    while (count == 0) {
        ++snap.empty_draw_retries;
        count = count_dist(rng);
    }
    snap.drones.resize(count);
    for (auto& d : snap.drones) {
        d.pos = uniform_in_disc(radius, rng);
        d.heading = random_direction(rng);
    }
    snap.serving = nearest_to_origin(snap.drones);
    return snap;
}

Snapshot advance(Snapshot snapshot, const MobilitySpec& mobility, ServiceModel model, double dt,
                 Rng& rng)
{
    if (!(dt > 0.0)) {
        throw std::invalid_argument("advance: dt must be > 0");
    }
    for (std::size_t i = 0; i < snapshot.drones.size(); ++i) {
        Drone& d = snapshot.drones[i];
        if (i == snapshot.serving && model == ServiceModel::UeDependent) {
            const double u = d.pos.norm();
            const double left = std::max(u - mobility.v * dt, 0.0);
            if (left == 0.0) {
                d.pos = {0.0, 0.0};
            } else {
                d.pos.x *= left / u;
                d.pos.y *= left / u;
            }
            continue;
        }
        move_drone(d, mobility, dt, rng);
    }
    if (model == ServiceModel::UeIndependent) {
        snapshot.serving = nearest_to_origin(snapshot.drones);
    }
    snapshot.time += dt;
    return snapshot;
}

double sample_sinr(const Snapshot& snapshot, const NetworkParams& params,
                   const SimulationConfig& sim, Rng& rng)
{
    std::exponential_distribution<double> fading(1.0);
    const double h2 = params.h * params.h;
    const double half_alpha = params.alpha / 2.0;
    const double cov2 = sim.coverage_radius * sim.coverage_radius;

    const double signal =
        params.P * fading(rng) * std::pow(snapshot.serving_position().norm2() + h2, -half_alpha);
    double interference = 0.0;
    for (std::size_t i = 0; i < snapshot.drones.size(); ++i) {
        if (i == snapshot.serving) {
            continue;
        }
        const double u2 = snapshot.drones[i].pos.norm2();
        if (u2 > cov2) {
            continue;
        }
        interference += fading(rng) * std::pow(u2 + h2, -half_alpha);
    }
    interference *= params.P;
    if (sim.far_field) {
        interference += far_field_interference(params, sim.coverage_radius);
    }
    return signal / (interference + params.N0);
}

EmpiricalEstimate summarize(std::span<const double> samples)
{
    EmpiricalEstimate e;
    e.n_trials = samples.size();
    e.mean = stats::mean(samples);
    if (!samples.empty()) {
        e.half_width_95 =
            1.96 * stats::sample_std(samples) / std::sqrt(static_cast<double>(samples.size()));
    }
    return e;
}

std::vector<double> simulate_sinr(double t, ServiceModel model, const MobilitySpec& mobility,
                                  const NetworkParams& params, std::size_t n_trials,
                                  std::uint64_t master_seed, const SimulationConfig& sim)
{
    params.validate();
    mobility.validate();
    sim.validate();
    if (!(t >= 0.0)) {
        throw std::invalid_argument("simulate_sinr: t must be >= 0");
    }
    if (n_trials == 0) {
        throw std::invalid_argument("simulate_sinr: n_trials must be >= 1");
    }
    const double radius = simulation_radius(sim, mobility.v, t);
    std::vector<double> sinr(n_trials);
    parallel_for(n_trials, [&](std::size_t trial) {
        Rng rng = substream(master_seed, trial);
        Snapshot snap = sample_deployment(params, radius, rng);
        snap.rng_seed = master_seed;
        if (t > 0.0) {
            snap = advance(std::move(snap), mobility, model, t, rng);
        }
        sinr[trial] = sample_sinr(snap, params, sim, rng);
    });
    return sinr;
}

EmpiricalEstimate coverage_from_sinr(std::span<const double> sinr, double gamma)
{
    std::vector<double> covered(sinr.size());
    std::transform(sinr.begin(), sinr.end(), covered.begin(),
                   [gamma](double s) { return s >= gamma ? 1.0 : 0.0; });
    return summarize(covered);
}

EmpiricalEstimate rate_from_sinr(std::span<const double> sinr)
{
    std::vector<double> nats(sinr.size());
    std::transform(sinr.begin(), sinr.end(), nats.begin(), [](double s) { return std::log1p(s); });
    return summarize(nats);
}

EmpiricalEstimate empirical_coverage(double gamma, double t, ServiceModel model,
                                     const MobilitySpec& mobility, const NetworkParams& params,
                                     std::size_t n_trials, std::uint64_t master_seed,
                                     const SimulationConfig& sim)
{
    const auto sinr = simulate_sinr(t, model, mobility, params, n_trials, master_seed, sim);
    return coverage_from_sinr(sinr, gamma);
}

EmpiricalEstimate empirical_rate(double t, ServiceModel model, const MobilitySpec& mobility,
                                 const NetworkParams& params, std::size_t n_trials,
                                 std::uint64_t master_seed, const SimulationConfig& sim)
{
    const auto sinr = simulate_sinr(t, model, mobility, params, n_trials, master_seed, sim);
    return rate_from_sinr(sinr);
}

RadialHistogram displaced_exclusion_histogram(double u0, double d, std::size_t n_points,
                                              double bin_width, double u_max,
                                              std::uint64_t master_seed)
{
    if (!(u0 >= 0.0) || !(d >= 0.0) || !(bin_width > 0.0) || !(u_max > 0.0) || n_points == 0) {
        throw std::invalid_argument("displaced_exclusion_histogram: invalid arguments");
    }
    RadialHistogram hist;
    hist.u0 = u0;
    hist.displacement = d;
    hist.source_outer_radius = u_max + d;
    hist.n_points = n_points;
    hist.bin_width = bin_width;
    const auto n_bins = static_cast<std::size_t>(std::ceil(u_max / bin_width - 1e-9));

    // Fixed-size chunks with their own substreams keep the result independent
    // of the thread count.
    constexpr std::size_t kChunk = 1 << 16;
    const std::size_t n_chunks = (n_points + kChunk - 1) / kChunk;
    std::vector<std::vector<std::uint64_t>> partial(n_chunks, std::vector<std::uint64_t>(n_bins));
    const double r_in2 = u0 * u0;
    const double r_out2 = hist.source_outer_radius * hist.source_outer_radius;
    parallel_for(n_chunks, [&](std::size_t c) {
        Rng rng = substream(master_seed, c);
        auto& counts = partial[c];
        const std::size_t begin = c * kChunk;
        const std::size_t end = std::min(n_points, begin + kChunk);
        for (std::size_t i = begin; i < end; ++i) {
            const double r = std::sqrt(r_in2 + uniform01(rng) * (r_out2 - r_in2));
            const Vec2 where = random_direction(rng);
            const Vec2 step = random_direction(rng);
            const Vec2 moved{r * where.x + d * step.x, r * where.y + d * step.y};
            const double u = moved.norm();
            if (u < u_max) {
                const auto bin = std::min(static_cast<std::size_t>(u / bin_width), n_bins - 1);
                ++counts[bin];
            }
        }
    });
    hist.counts.assign(n_bins, 0);
    for (const auto& counts : partial) {
        for (std::size_t b = 0; b < n_bins; ++b) {
            hist.counts[b] += counts[b];
        }
    }
    return hist;
}

std::vector<std::vector<std::uint64_t>> displaced_region_counts(double lambda0, double d,
                                                                double test_radius,
                                                                std::size_t n_regions,
                                                                std::size_t n_realizations,
                                                                std::uint64_t master_seed)
{
    if (!(lambda0 > 0.0) || !(d >= 0.0) || !(test_radius > 0.0) || n_regions == 0) {
        throw std::invalid_argument("displaced_region_counts: invalid arguments");
    }
    const double source_radius = test_radius + d;
    const double test2 = test_radius * test_radius;
    std::vector<std::vector<std::uint64_t>> out(n_realizations,
                                                std::vector<std::uint64_t>(n_regions));
    parallel_for(n_realizations, [&](std::size_t k) {
        Rng rng = substream(master_seed, k);
        std::poisson_distribution<std::size_t> count_dist(lambda0 * kPi * source_radius
                                                          * source_radius);
        const std::size_t n = count_dist(rng);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 p = uniform_in_disc(source_radius, rng);
            const Vec2 step = random_direction(rng);
            const Vec2 moved{p.x + d * step.x, p.y + d * step.y};
            if (moved.norm2() >= test2) {
                continue;
            }
            double angle = std::atan2(moved.y, moved.x);
            if (angle < 0.0) {
                angle += 2.0 * kPi;
            }
            const auto region = std::min(
                static_cast<std::size_t>(angle / (2.0 * kPi) * static_cast<double>(n_regions)),
                n_regions - 1);
            ++out[k][region];
        }
    });
    return out;
}

}  // namespace dronecov
