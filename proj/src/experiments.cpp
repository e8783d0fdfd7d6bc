#include "dronecov/experiments.hpp"

#include "dronecov/analytic.hpp"
#include "dronecov/density.hpp"
#include "dronecov/monte_carlo.hpp"
#include "dronecov/parallel.hpp"
#include "dronecov/validation.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace dronecov {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::ofstream open_output(const std::filesystem::path& path)
{
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
        throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": "
                                 + ec.message());
    }
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot write " + path.string());
    }
    os << std::setprecision(17);
    return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path)
{
    os.flush();
    if (!os) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

void write_config_echo(std::ostream& os, const ExperimentSpec& spec, const std::string& extra)
{
    os << "# dronesim " << spec.describe() << '\n';
    if (!extra.empty()) {
        os << "# " << extra << '\n';
    }
}

std::string params_echo(const NetworkParams& p)
{
    std::ostringstream os;
    os << std::setprecision(17) << "h_m=" << p.h << " alpha=" << p.alpha << " n0_watts=" << p.N0;
    return os.str();
}

void write_field(std::ostream& os, double value)
{
    if (!std::isnan(value)) {
        os << value;
    }
}

struct SweepRow {
    double t = 0.0;
    double gamma_db = kNaN;
    double coverage = kNaN;
    double rate = kNaN;
    Method method = Method::Analytic;
    double ci = 0.0;
};

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows)
{
    os << "t_s,gamma_db,coverage,rate_nats,method,ci_half_width\n";
    for (const auto& r : rows) {
        os << r.t << ',';
        write_field(os, r.gamma_db);
        os << ',';
        write_field(os, r.coverage);
        os << ',';
        write_field(os, r.rate);
        os << ',' << to_string(r.method) << ',' << r.ci << '\n';
    }
}

struct Variant {
    NetworkParams params;
    std::string noise_label;  // "noise" or "nonoise"
};

/// Parameter sets crossed with the requested noise variants.
std::vector<Variant> variants(const ExperimentSpec& spec, bool include_noiseless)
{
    std::vector<Variant> out;
    for (const auto& p : spec.parameter_sets()) {
        if (!spec.no_noise) {
            out.push_back({p, "noise"});
        }
        if (spec.no_noise || include_noiseless) {
            out.push_back({p.without_noise(), "nonoise"});
        }
    }
    return out;
}

std::string variant_stem(const std::string& prefix, ServiceModel model, const Variant& v)
{
    return prefix + "_" + to_string(model) + "_" + v.noise_label + "_h" + file_token(v.params.h)
           + "_a" + file_token(v.params.alpha);
}

void write_gnuplot(const ExperimentSpec& spec, RunOutcome& outcome, const std::string& name,
                   const std::string& body)
{
    const auto path = spec.out_dir / name;
    auto os = open_output(path);
    os << "# gnuplot script generated by dronesim\n"
       << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set grid\n"
       << body;
    finish(os, path);
    outcome.files.push_back(path);
}

std::string plot_list(const std::vector<std::filesystem::path>& files, const std::string& using_clause,
                      const std::string& extension)
{
    std::ostringstream os;
    os << "plot ";
    bool first = true;
    for (const auto& f : files) {
        if (f.extension() != extension) {
            continue;
        }
        os << (first ? "" : ", \\\n     ") << "'" << f.filename().string() << "' " << using_clause
           << " title '" << f.stem().string() << "'";
        first = false;
    }
    os << '\n';
    return os.str();
}

nlohmann::json to_json(const CheckResult& r)
{
    return {{"name", r.name},
            {"statistic", r.statistic},
            {"comparison", r.comparison},
            {"threshold", r.threshold},
            {"verdict", r.passed ? "pass" : "fail"},
            {"detail", r.detail}};
}

}  // namespace

std::string file_token(double value)
{
    std::ostringstream os;
    os << value;
    return os.str();
}

RunOutcome run_density(const ExperimentSpec& spec)
{
    RunOutcome outcome;
    const auto& p = spec.params;
    for (double t : spec.times) {
        const auto profile = make_density_profile(spec.u0, t, p.v, p.lambda0, spec.density_step);
        const auto path =
            spec.out_dir / ("density_u0" + file_token(spec.u0) + "_t" + file_token(t) + ".csv");
        auto os = open_output(path);
        std::ostringstream extra;
        extra << std::setprecision(17) << "u0_m=" << spec.u0 << " t_s=" << t;
        write_config_echo(os, spec, extra.str());
        write_density_csv(os, profile);
        finish(os, path);
        outcome.files.push_back(path);

        double min_ratio = 1.0;
        for (const auto& s : profile.grid) {
            min_ratio = std::min(min_ratio, s.lambda / p.lambda0);
        }
        std::ostringstream line;
        line << "t=" << t << " s: " << profile.grid.size() << " grid points, min lambda/lambda0="
             << min_ratio << " -> " << path.string();
        outcome.lines.push_back(line.str());
    }
    if (spec.gnuplot) {
        write_gnuplot(spec, outcome, "plot_density.gp",
                      "set xlabel 'u_x (m)'\nset ylabel 'lambda (1/m^2)'\n"
                          + plot_list(outcome.files, "using 1:2 with lines", ".csv"));
    }
    return outcome;
}

RunOutcome run_coverage(const ExperimentSpec& spec)
{
    RunOutcome outcome;
    for (const auto& variant : variants(spec, true)) {
        for (ServiceModel model : spec.models) {
            std::vector<SweepRow> rows;
            for (double g_db : spec.gammas_db) {
                for (double t : spec.times) {
                    SweepRow r;
                    r.t = t;
                    r.gamma_db = g_db;
                    rows.push_back(r);
                }
            }
            parallel_for(rows.size(), [&](std::size_t i) {
                rows[i].coverage =
                    coverage(db_to_linear(rows[i].gamma_db), rows[i].t, model, variant.params).value;
            });
            const auto path = spec.out_dir / (variant_stem("coverage", model, variant) + ".csv");
            auto os = open_output(path);
            write_config_echo(os, spec,
                              "model=" + to_string(model) + " " + params_echo(variant.params));
            write_sweep_csv(os, rows);
            finish(os, path);
            outcome.files.push_back(path);
            outcome.lines.push_back(std::to_string(rows.size()) + " coverage points -> "
                                    + path.string());
        }
    }
    if (spec.gnuplot) {
        std::ostringstream body;
        body << "set xlabel 't (s)'\nset ylabel 'coverage probability'\n";
        for (const auto& f : outcome.files) {
            body << "set title '" << f.stem().string() << "'\nplot ";
            for (std::size_t i = 0; i < spec.gammas_db.size(); ++i) {
                body << (i ? ", " : "") << "'" << f.filename().string() << "' using 1:($2=="
                     << spec.gammas_db[i] << " ? $3 : 1/0) with linespoints title 'gamma="
                     << spec.gammas_db[i] << " dB'";
            }
            body << "\npause -1\n";
        }
        write_gnuplot(spec, outcome, "plot_coverage.gp", body.str());
    }
    return outcome;
}

RunOutcome run_rate(const ExperimentSpec& spec)
{
    RunOutcome outcome;
    for (const auto& variant : variants(spec, true)) {
        for (ServiceModel model : spec.models) {
            std::vector<SweepRow> rows(spec.times.size());
            // The UE-independent rate does not depend on t.
            const double fixed = model == ServiceModel::UeIndependent
                                     ? rate(0.0, model, variant.params).value
                                     : kNaN;
            parallel_for(rows.size(), [&](std::size_t i) {
                rows[i].t = spec.times[i];
                rows[i].rate = std::isnan(fixed) ? rate(spec.times[i], model, variant.params).value
                                                 : fixed;
            });
            const auto path = spec.out_dir / (variant_stem("rate", model, variant) + ".csv");
            auto os = open_output(path);
            write_config_echo(os, spec,
                              "model=" + to_string(model) + " " + params_echo(variant.params));
            write_sweep_csv(os, rows);
            finish(os, path);
            outcome.files.push_back(path);
            outcome.lines.push_back(std::to_string(rows.size()) + " rate points -> "
                                    + path.string());
        }
    }
    if (spec.gnuplot) {
        write_gnuplot(spec, outcome, "plot_rate.gp",
                      "set xlabel 't (s)'\nset ylabel 'rate (nats)'\n"
                          + plot_list(outcome.files, "using 1:4 with linespoints", ".csv"));
    }
    return outcome;
}

RunOutcome run_simulate(const ExperimentSpec& spec)
{
    RunOutcome outcome;
    MobilitySpec mobility = spec.mobility;
    mobility.kind = spec.mobilities.empty() ? MobilityKind::StraightLine : spec.mobilities.front();
    mobility.v = spec.params.v;

    for (const auto& variant : variants(spec, false)) {
        for (ServiceModel model : spec.models) {
            std::vector<SweepRow> rows;
            const std::string stem = variant_stem("simulate", model, variant);
            std::ofstream trials;
            std::filesystem::path trials_path;
            if (spec.write_trials) {
                trials_path = spec.out_dir / (stem + "_trials.csv");
                trials = open_output(trials_path);
                write_config_echo(trials, spec,
                                  "model=" + to_string(model) + " mobility="
                                      + to_string(mobility.kind) + " "
                                      + params_echo(variant.params));
                trials << "trial,t_s,gamma_db,sinr_db,covered\n";
            }
            for (double t : spec.times) {
                const auto sinr = simulate_sinr(t, model, mobility, variant.params, spec.n_trials,
                                                spec.seed, spec.sim);
                const auto r = rate_from_sinr(sinr);
                for (double g_db : spec.gammas_db) {
                    const auto c = coverage_from_sinr(sinr, db_to_linear(g_db));
                    rows.push_back({t, g_db, c.mean, r.mean, Method::MonteCarlo, c.half_width_95});
                }
                if (spec.write_trials) {
                    for (std::size_t i = 0; i < sinr.size(); ++i) {
                        for (double g_db : spec.gammas_db) {
                            trials << i << ',' << t << ',' << g_db << ','
                                   << linear_to_db(sinr[i]) << ','
                                   << (sinr[i] >= db_to_linear(g_db) ? 1 : 0) << '\n';
                        }
                    }
                }
            }
            const auto path = spec.out_dir / (stem + ".csv");
            auto os = open_output(path);
            write_config_echo(os, spec,
                              "model=" + to_string(model) + " mobility=" + to_string(mobility.kind)
                                  + " " + params_echo(variant.params));
            write_sweep_csv(os, rows);
            finish(os, path);
            outcome.files.push_back(path);
            outcome.lines.push_back(std::to_string(rows.size()) + " simulated points -> "
                                    + path.string());
            if (spec.write_trials) {
                finish(trials, trials_path);
                outcome.files.push_back(trials_path);
            }
        }
    }
    return outcome;
}

RunOutcome run_validate(const ExperimentSpec& spec)
{
    RunOutcome outcome;
    const NetworkParams base =
        spec.no_noise ? spec.parameter_sets().front().without_noise() : spec.parameter_sets().front();
    std::vector<CheckResult> checks;

    checks.push_back(check_kernel_normalization(100, spec.seed));
    checks.push_back(check_density_continuity(base.lambda0));

    const double density_scale = spec.corrupt_density ? 0.9 : 1.0;
    constexpr double kBinWidth = 10.0;
    constexpr double kHistogramRange = 2000.0;
    for (std::size_t i = 0; i < spec.times.size(); ++i) {
        const double t = spec.times[i];
        auto h = check_density_histogram(spec.u0, t, base.v, spec.histogram_points, kBinWidth,
                                         kHistogramRange, spec.seed + 100 + i, 0.99, density_scale);
        const auto path = spec.out_dir / ("histogram_t" + file_token(t) + ".csv");
        auto os = open_output(path);
        std::ostringstream extra;
        extra << std::setprecision(17) << "u0_m=" << spec.u0 << " t_s=" << t
              << " points=" << spec.histogram_points << " bin_width_m=" << kBinWidth
              << " density_scale=" << density_scale;
        write_config_echo(os, spec, extra.str());
        os << "bin_lo_m,bin_hi_m,count,expected\n";
        for (std::size_t b = 0; b < h.histogram.counts.size(); ++b) {
            const double lo = static_cast<double>(b) * kBinWidth;
            os << lo << ',' << std::min(lo + kBinWidth, kHistogramRange) << ','
               << h.histogram.counts[b] << ',' << h.expected[b] << '\n';
        }
        finish(os, path);
        outcome.files.push_back(path);
        checks.push_back(h.result);
    }

    checks.push_back(check_displacement_invariance(base.lambda0, base.v * 100.0, 5000.0, 20, 2000,
                                                   spec.seed + 200));
    checks.push_back(check_serving_distance_law(base, 100000, spec.seed + 300));

    MobilitySpec straight;
    straight.v = base.v;
    for (std::size_t i = 0; i < spec.times.size(); ++i) {
        const double t = spec.times[i];
        const auto sinr = simulate_sinr(t, ServiceModel::UeDependent, straight, base, spec.n_trials,
                                        spec.seed + 1000 + i, spec.sim);
        for (auto& c : check_cross_engine_coverage(sinr, t, ServiceModel::UeDependent,
                                                   spec.gammas_db, base)) {
            checks.push_back(std::move(c));
        }
        checks.push_back(check_cross_engine_rate(sinr, t, ServiceModel::UeDependent, base));
    }
    {
        const double t = spec.times.back();
        const auto sinr = simulate_sinr(t, ServiceModel::UeIndependent, straight, base,
                                        spec.n_trials, spec.seed + 2000, spec.sim);
        for (auto& c : check_cross_engine_coverage(sinr, t, ServiceModel::UeIndependent,
                                                   spec.gammas_db, base)) {
            checks.push_back(std::move(c));
        }
        checks.push_back(check_model1_stationarity(base, t, spec.n_trials, spec.seed + 2001,
                                                   spec.sim));
    }

    std::vector<double> collapse_grid;
    for (int g = -10; g < 10; ++g) {
        collapse_grid.push_back(g);
    }
    checks.push_back(check_t0_collapse(base, collapse_grid));
    checks.push_back(check_model_dominance(base, spec.times, spec.gammas_db));

    auto with = [&](double h, double alpha) {
        NetworkParams p = base;
        p.h = h;
        p.alpha = alpha;
        if (!spec.explicit_noise && !spec.no_noise) {
            p = p.with_dimensioned_noise();
        }
        return p;
    };
    for (double t : {0.0, 100.0}) {
        checks.push_back(check_rate_ordering("ordering_alpha", with(100.0, 3.5), with(100.0, 2.5), t));
        checks.push_back(check_rate_ordering("ordering_height", with(100.0, 3.0), with(200.0, 3.0), t));
    }
    checks.push_back(check_noise_dimensioning(base));
    checks.push_back(check_rate_path());

    nlohmann::json report;
    report["command"] = "validate";
    report["config"] = spec.describe();
    report["corrupt_density"] = spec.corrupt_density;
    nlohmann::json list = nlohmann::json::array();
    std::size_t failed = 0;
    for (const auto& c : checks) {
        list.push_back(to_json(c));
        failed += c.passed ? 0 : 1;
        outcome.lines.push_back(std::string(c.passed ? "PASS " : "FAIL ") + c.name + " ("
                                + c.detail + ")");
    }
    report["checks"] = list;
    report["n_checks"] = checks.size();
    report["n_failed"] = failed;
    report["verdict"] = failed == 0 ? "pass" : "fail";

    const auto path = spec.out_dir / "validate_report.json";
    auto os = open_output(path);
    os << report.dump(2) << '\n';
    finish(os, path);
    outcome.files.push_back(path);
    outcome.exit_code = failed == 0 ? 0 : 1;
    outcome.lines.push_back(std::to_string(checks.size() - failed) + " of "
                            + std::to_string(checks.size()) + " checks passed -> " + path.string());
    return outcome;
}

RunOutcome run_compare_mobility(const ExperimentSpec& spec)
{
    RunOutcome outcome;
    const NetworkParams base =
        spec.no_noise ? spec.parameter_sets().front().without_noise() : spec.parameter_sets().front();

    const auto csv_path = spec.out_dir / "compare_mobility.csv";
    auto csv = open_output(csv_path);
    write_config_echo(csv, spec, "model=model2 " + params_echo(base));
    csv << "t_s,mobility,rate_nats,ci_half_width,violation\n";

    nlohmann::json list = nlohmann::json::array();
    std::size_t violations = 0;
    for (double t : spec.times) {
        MobilitySpec m = spec.mobility;
        m.v = base.v;
        m.kind = MobilityKind::StraightLine;
        // Same seed for every kind: identical deployments, only the motion differs.
        const auto straight =
            empirical_rate(t, ServiceModel::UeDependent, m, base, spec.n_trials, spec.seed, spec.sim);
        csv << t << ',' << to_string(m.kind) << ',' << straight.mean << ','
            << straight.half_width_95 << ",0\n";
        for (MobilityKind kind : spec.mobilities) {
            if (kind == MobilityKind::StraightLine) {
                continue;
            }
            m.kind = kind;
            const auto other = empirical_rate(t, ServiceModel::UeDependent, m, base, spec.n_trials,
                                              spec.seed, spec.sim);
            const auto check = check_mobility_ordering(straight, other, kind, t);
            violations += check.passed ? 0 : 1;
            csv << t << ',' << to_string(kind) << ',' << other.mean << ',' << other.half_width_95
                << ',' << (check.passed ? 0 : 1) << '\n';
            list.push_back(to_json(check));
            outcome.lines.push_back(std::string(check.passed ? "PASS " : "FAIL ") + check.name
                                    + " (" + check.detail + ")");
        }
    }
    finish(csv, csv_path);
    outcome.files.push_back(csv_path);

    nlohmann::json report;
    report["command"] = "compare-mobility";
    report["config"] = spec.describe();
    report["checks"] = list;
    report["n_violations"] = violations;
    report["verdict"] = violations == 0 ? "pass" : "fail";
    const auto path = spec.out_dir / "compare_mobility_report.json";
    auto os = open_output(path);
    os << report.dump(2) << '\n';
    finish(os, path);
    outcome.files.push_back(path);
    outcome.exit_code = violations == 0 ? 0 : 1;
    return outcome;
}

RunOutcome run_command(const ExperimentSpec& spec)
{
    spec.validate();
    if (spec.command == "density") {
        return run_density(spec);
    }
    if (spec.command == "coverage") {
        return run_coverage(spec);
    }
    if (spec.command == "rate") {
        return run_rate(spec);
    }
    if (spec.command == "simulate") {
        return run_simulate(spec);
    }
    if (spec.command == "validate") {
        return run_validate(spec);
    }
    if (spec.command == "compare-mobility") {
        return run_compare_mobility(spec);
    }
    throw ConfigError("unknown command '" + spec.command + "'");
}

}  // namespace dronecov
