#include "dronecov/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace dronecov {

namespace {

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + text + "'");
    }
    return value;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError("config key '" + key + "': expected a non-negative integer, got '"
                          + text + "'");
    }
    return value;
}

bool to_bool(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") {
        return true;
    }
    if (t == "false" || t == "0" || t == "no" || t == "off") {
        return false;
    }
    throw ConfigError("config key '" + key + "': expected a boolean, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::string format_list(const std::vector<double>& values)
{
    std::ostringstream os;
    os << std::setprecision(17);
    for (std::size_t i = 0; i < values.size(); ++i) {
        os << (i ? ";" : "") << values[i];
    }
    return os.str();
}

}  // namespace

KeyValues parse_key_values(std::istream& in)
{
    KeyValues kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        }
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

KeyValues read_key_values(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    return parse_key_values(in);
}

std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> out;
    for (const auto& item : split_list(text)) {
        out.push_back(to_double("list", item));
    }
    return out;
}

ExperimentSpec preset_spec(const std::string& name)
{
    ExperimentSpec spec;
    spec.preset = name;
    if (name.empty()) {
        return spec;
    }
    if (name == "fig3") {
        spec.command = "density";
        spec.u0 = 500.0;
        spec.times = {20.0, 40.0, 50.0, 200.0};
    } else if (name == "fig4") {
        spec.command = "coverage";
        spec.params.h = 100.0;
        spec.params.alpha = 3.0;
        spec.gammas_db = {-5.0, 0.0, 5.0};
        spec.times.clear();
        for (int t = 0; t <= 200; t += 10) {
            spec.times.push_back(t);
        }
    } else if (name == "fig5") {
        spec.command = "rate";
        spec.params.h = 100.0;
        spec.heights = {100.0};
        spec.alphas = {2.5, 3.5};
        spec.times.clear();
        for (int t = 0; t <= 200; t += 20) {
            spec.times.push_back(t);
        }
    } else {
        throw ConfigError("unknown preset '" + name + "' (expected fig3, fig4 or fig5)");
    }
    return spec;
}

void apply_key_values(ExperimentSpec& spec, const KeyValues& kv)
{
    auto& p = spec.params;
    for (const auto& [key, value] : kv) {
        if (key == "lambda0") {
            p.lambda0 = to_double(key, value);
        } else if (key == "h_m") {
            p.h = to_double(key, value);
        } else if (key == "v_mps") {
            p.v = to_double(key, value);
        } else if (key == "v_kmh") {
            if (!kv.contains("v_mps")) {
                p.v = kmh_to_mps(to_double(key, value));
            }
        } else if (key == "alpha") {
            p.alpha = to_double(key, value);
        } else if (key == "p_tx_db") {
            spec.p_tx_db = to_double(key, value);
        } else if (key == "p_edge") {
            p.p_edge = to_double(key, value);
        } else if (key == "r_d_m") {
            p.R_D = to_double(key, value);
        } else if (key == "n0_watts") {
            p.N0 = to_double(key, value);
            spec.explicit_noise = true;
        } else if (key == "u0_m") {
            spec.u0 = to_double(key, value);
        } else if (key == "density_step_m") {
            spec.density_step = to_double(key, value);
        } else if (key == "t_s") {
            spec.times = parse_list(value);
        } else if (key == "gamma_db") {
            spec.gammas_db = parse_list(value);
        } else if (key == "heights_m") {
            spec.heights = parse_list(value);
        } else if (key == "alphas") {
            spec.alphas = parse_list(value);
        } else if (key == "models") {
            spec.models.clear();
            for (const auto& m : split_list(value)) {
                try {
                    spec.models.push_back(parse_service_model(m));
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(e.what());
                }
            }
        } else if (key == "mobility") {
            spec.mobilities.clear();
            for (const auto& m : split_list(value)) {
                try {
                    spec.mobilities.push_back(parse_mobility_kind(m));
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(e.what());
                }
            }
        } else if (key == "rw_epoch_s") {
            spec.mobility.rw_epoch =
                trim(value) == "inf" ? std::numeric_limits<double>::infinity() : to_double(key, value);
        } else if (key == "rwp_radius_m") {
            spec.mobility.rwp_waypoint_radius = to_double(key, value);
        } else if (key == "rwp_pause_s") {
            spec.mobility.pause = to_double(key, value);
        } else if (key == "coverage_radius_m") {
            spec.sim.coverage_radius = to_double(key, value);
        } else if (key == "trials") {
            spec.n_trials = to_unsigned(key, value);
        } else if (key == "seed") {
            spec.seed = to_unsigned(key, value);
        } else if (key == "histogram_points") {
            spec.histogram_points = to_unsigned(key, value);
        } else if (key == "out") {
            spec.out_dir = trim(value);
        } else if (key == "write_trials") {
            spec.write_trials = to_bool(key, value);
        } else if (key == "gnuplot") {
            spec.gnuplot = to_bool(key, value);
        } else if (key == "no_noise") {
            spec.no_noise = to_bool(key, value);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    p.P = db_to_linear(spec.p_tx_db);
    spec.mobility.v = p.v;
}

std::vector<NetworkParams> ExperimentSpec::parameter_sets() const
{
    const std::vector<double> hs = heights.empty() ? std::vector<double>{params.h} : heights;
    const std::vector<double> as = alphas.empty() ? std::vector<double>{params.alpha} : alphas;
    std::vector<NetworkParams> out;
    for (double h : hs) {
        for (double a : as) {
            NetworkParams p = params;
            p.h = h;
            p.alpha = a;
            if (!explicit_noise) {
                p = p.with_dimensioned_noise();
            }
            out.push_back(p);
        }
    }
    return out;
}

std::string ExperimentSpec::describe() const
{
    std::ostringstream os;
    os << std::setprecision(17);
    os << "command=" << command << " preset=" << (preset.empty() ? "none" : preset)
       << " lambda0=" << params.lambda0 << " h_m=" << params.h << " v_mps=" << params.v
       << " alpha=" << params.alpha << " p_tx_db=" << p_tx_db << " p_edge=" << params.p_edge
       << " r_d_m=" << params.R_D << " n0="
       << (explicit_noise ? std::to_string(params.N0) : std::string("dimensioned"))
       << " no_noise=" << (no_noise ? "true" : "false") << " u0_m=" << u0
       << " t_s=" << format_list(times) << " gamma_db=" << format_list(gammas_db)
       << " heights_m=" << format_list(heights) << " alphas=" << format_list(alphas)
       << " rw_epoch_s=" << mobility.rw_epoch << " rwp_radius_m=" << mobility.rwp_waypoint_radius
       << " rwp_pause_s=" << mobility.pause << " coverage_radius_m=" << sim.coverage_radius
       << " trials=" << n_trials << " seed=" << seed;
    return os.str();
}

void ExperimentSpec::validate() const
{
    try {
        for (const auto& p : parameter_sets()) {
            p.validate();
        }
        mobility.validate();
        sim.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    auto require = [](bool ok, const std::string& what) {
        if (!ok) {
            throw ConfigError(what);
        }
    };
    require(!times.empty(), "t_s list must not be empty");
    require(std::all_of(times.begin(), times.end(), [](double t) { return t >= 0.0; }),
            "t_s values must be >= 0");
    require(u0 >= 0.0, "u0_m must be >= 0");
    require(density_step > 0.0, "density_step_m must be > 0");
    const bool monte_carlo =
        command == "simulate" || command == "validate" || command == "compare-mobility";
    if (command == "coverage" || command == "simulate" || command == "validate") {
        require(!gammas_db.empty(), "gamma_db list must not be empty");
        require(!models.empty(), "models list must not be empty");
    }
    if (command == "compare-mobility") {
        require(!mobilities.empty(), "mobility list must not be empty");
    }
    if (monte_carlo) {
        require(n_trials >= 100, "trials must be >= 100 for Monte Carlo commands");
    }
}

}  // namespace dronecov
