#pragma once

#include "dronecov/config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace dronecov {

/// Exit status and artifacts of one CLI command. exit_code is 0 on success and
/// 1 when a validation or ordering check failed.
struct RunOutcome {
    int exit_code = 0;
    std::vector<std::filesystem::path> files;
    std::vector<std::string> lines;  // human-readable summary
};

/// One density CSV per t: `density_u0<u0>_t<t>.csv`.
RunOutcome run_density(const ExperimentSpec& spec);

/// Analytic coverage over the (t, gamma) grid, one CSV per service model,
/// noise variant and (h, alpha): `coverage_<model>_<noise>_h<h>_a<alpha>.csv`.
RunOutcome run_coverage(const ExperimentSpec& spec);

/// Analytic rate over t, same file layout as run_coverage with prefix `rate_`.
RunOutcome run_rate(const ExperimentSpec& spec);

/// Monte Carlo coverage and rate over the (t, gamma) grid using the first
/// mobility kind. Writes per-trial CSVs when spec.write_trials is set.
RunOutcome run_simulate(const ExperimentSpec& spec);

/// Full invariant suite; writes `validate_report.json` and one histogram CSV
/// per t. The report is byte-identical for a repeated seed.
RunOutcome run_validate(const ExperimentSpec& spec);

/// Empirical model-2 rate per mobility kind over t; writes
/// `compare_mobility.csv` and `compare_mobility_report.json`.
RunOutcome run_compare_mobility(const ExperimentSpec& spec);

/// Dispatches on spec.command.
RunOutcome run_command(const ExperimentSpec& spec);

/// Number formatting used in output file names: shortest form, '.' kept.
std::string file_token(double value);

}  // namespace dronecov
