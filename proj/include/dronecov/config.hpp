#pragma once

#include "dronecov/monte_carlo.hpp"
#include "dronecov/params.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dronecov {

/// Malformed or inconsistent configuration; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat `key = value` text, `#` starts a comment. Later keys overwrite earlier ones.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& in);
KeyValues read_key_values(const std::filesystem::path& path);

struct ExperimentSpec {
    std::string command;
    std::string preset;

    NetworkParams params;
    double p_tx_db = 0.0;
    bool explicit_noise = false;  // n0_watts given; otherwise N0 is dimensioned
    bool no_noise = false;        // only the N0 = 0 variant

    double u0 = 500.0;  // exclusion radius for density profiles
    double density_step = 1.0;
    std::vector<double> times{20.0, 40.0, 50.0, 200.0};
    std::vector<double> gammas_db{-5.0, 0.0, 5.0};
    std::vector<double> heights;  // empty: params.h only
    std::vector<double> alphas;   // empty: params.alpha only
    std::vector<ServiceModel> models{ServiceModel::UeIndependent, ServiceModel::UeDependent};
    std::vector<MobilityKind> mobilities{MobilityKind::StraightLine, MobilityKind::RandomWalk,
                                         MobilityKind::RandomWaypoint};
    MobilitySpec mobility;
    SimulationConfig sim;

    std::size_t n_trials = 100000;
    std::uint64_t seed = 1;
    std::size_t histogram_points = 10000000;
    std::filesystem::path out_dir = "out";
    bool write_trials = false;
    bool gnuplot = false;
    bool corrupt_density = false;  // validation negative control

    /// Every (h, alpha) combination of the sweep, with N0 resolved for each.
    std::vector<NetworkParams> parameter_sets() const;

    /// Resolved parameters as `key=value` pairs for CSV headers.
    std::string describe() const;

    /// Throws ConfigError on violated invariants.
    void validate() const;
};

/// Defaults for a named preset: fig3 (density), fig4 (coverage), fig5 (rate).
ExperimentSpec preset_spec(const std::string& name);

/// Applies config keys on top of `spec`. Unknown keys are rejected.
void apply_key_values(ExperimentSpec& spec, const KeyValues& kv);

std::vector<double> parse_list(const std::string& text);

}  // namespace dronecov
