#include "dronecov/config.hpp"
#include "dronecov/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Coverage and rate of a mobile drone base-station network"};
    app.set_version_flag("--version", "dronesim 1.0.0");

    std::string command;
    std::string config_path;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::string> out_dir;
    bool no_noise = false;
    bool corrupt_density = false;
    bool write_trials = false;
    bool gnuplot = false;

    app.add_option("command", command, "density | coverage | rate | simulate | validate | compare-mobility")
        ->required()
        ->check(CLI::IsMember(
            {"density", "coverage", "rate", "simulate", "validate", "compare-mobility"}));
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--preset", preset, "parameter preset")
        ->check(CLI::IsMember({"fig3", "fig4", "fig5"}));
    app.add_option("--seed", seed, "master seed");
    app.add_option("--trials", trials, "Monte Carlo trials per point");
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--no-noise", no_noise, "evaluate with N0 = 0 only");
    app.add_flag("--corrupt-density", corrupt_density,
                 "validate: evaluate the density model at a wrong time (negative control)");
    app.add_flag("--write-trials", write_trials, "simulate: also write per-trial SINR CSVs");
    app.add_flag("--gnuplot", gnuplot, "also write a gnuplot script");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (config_path.empty() && preset.empty()) {
            throw dronecov::ConfigError("--config is required unless --preset is given");
        }
        dronecov::ExperimentSpec spec = dronecov::preset_spec(preset);
        if (!config_path.empty()) {
            dronecov::apply_key_values(spec, dronecov::read_key_values(config_path));
        } else {
            dronecov::apply_key_values(spec, {});
        }
        spec.command = command;
        if (seed) {
            spec.seed = *seed;
        }
        if (trials) {
            spec.n_trials = *trials;
        }
        if (out_dir) {
            spec.out_dir = *out_dir;
        }
        spec.no_noise = spec.no_noise || no_noise;
        spec.corrupt_density = corrupt_density;
        spec.write_trials = spec.write_trials || write_trials;
        spec.gnuplot = spec.gnuplot || gnuplot;

        const auto outcome = dronecov::run_command(spec);
        for (const auto& line : outcome.lines) {
            std::cout << line << '\n';
        }
        return outcome.exit_code;
    } catch (const dronecov::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOk + 1;
    }
}
