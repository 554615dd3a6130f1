#include "magq/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace magq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

const std::vector<std::string> kExperiments = {
    "dynamics",  "protocol-curve", "benchmark", "directional", "nv-yig",
    "transient", "zeta-var",       "distance-var", "spectrum",  "validate",
};

std::map<std::string, std::vector<KeySpec>> build_key_tables() {
    std::map<std::string, std::vector<KeySpec>> t;
    t["dynamics"] = {
        {"j_over_omega", "1", 0.0, 1e9, 50.0, "bath rate over Rabi frequency J_q/Omega"},
        {"t_max", "1/J_q", 1e-6, 1e5, 10.0, "end of the time axis, J_q t"},
        {"n_points", "1", 2, 100000, 400, "number of time samples"},
    };
    t["protocol-curve"] = {
        {"f_threshold", "1", 0.5, 0.999999, 0.95, "fidelity threshold F_T"},
        {"zeta_lo", "1", 1e-4, 10.0, 0.02, "lower end of the zeta grid"},
        {"zeta_hi", "1", 0.0, 10.0, 0.0, "upper end of the zeta grid (0 = up to zeta_T)"},
        {"n_zeta", "1", 2, 2000, 40, "number of zeta samples (log-spaced)"},
    };
    t["benchmark"] = {
        {"f_lo", "1", 0.5, 0.999999, 0.95, "lowest fidelity threshold"},
        {"f_hi", "1", 0.5, 0.999999, 0.99, "highest fidelity threshold"},
        {"n_f", "1", 1, 64, 3, "number of thresholds"},
    };
    t["directional"] = {
        {"f_threshold", "1", 0.5, 0.999999, 0.95, "fidelity threshold F_T"},
        {"jl_lo", "1", 1e-12, 1.0, 1e-5, "smallest J_L/J_R (log grid)"},
        {"jl_hi", "1", 1e-12, 1.0, 1.0, "largest J_L/J_R"},
        {"n_jl", "1", 1, 256, 7, "number of J_L/J_R samples"},
        {"phase_lo_over_pi", "1", -2.0, 2.0, 0.0, "lower phase bound, units of pi"},
        {"phase_hi_over_pi", "1", -2.0, 2.0, 1.0, "upper phase bound, units of pi"},
        {"n_phase", "1", 1, 256, 5, "number of phase samples"},
    };
    t["nv-yig"] = {
        {"d0", "rad/s", 1e3, 1e15, kTwoPi * 2.877e9, "spin zero-field splitting"},
        {"gamma_s", "1/(T s)", 1e6, 1e15, 1.76e11, "gyromagnetic ratio"},
        {"d", "m", 1e-12, 1e-3, 200e-9, "film thickness"},
        {"l_y", "m", 1e-9, 1.0, 10e-6, "film length"},
        {"l_z", "m", 1e-9, 1.0, 1e-6, "film width"},
        {"d_ex", "m^2", 1e-22, 1e-10, 3.086e-16, "exchange stiffness"},
        {"m_s", "A/m", 1.0, 1e8, 1.39e5, "saturation magnetization"},
        {"d_nv", "m", 1e-12, 1e-3, 100e-9, "spin height above the top surface"},
        {"mu0_h0", "T", 1e-6, 10.0, 1e-2, "external field"},
        {"tau_m", "s", 1e-12, 1.0, 1e-6, "magnon lifetime"},
        {"f_threshold", "1", 0.5, 0.999999, 0.95, "threshold for the dephasing requirement"},
        {"kd_lo", "1", -50.0, 50.0, -5.0, "lower k d for the mode curves"},
        {"kd_hi", "1", -50.0, 50.0, 5.0, "upper k d for the mode curves"},
        {"n_k", "1", 2, 100000, 200, "number of wave-number samples"},
    };
    t["transient"] = {
        {"zeta_a", "1", 0.0, 10.0, 0.27, "first zeta (0 disables the column)"},
        {"zeta_b", "1", 0.0, 10.0, 0.22, "second zeta"},
        {"zeta_c", "1", 0.0, 10.0, 0.13, "third zeta"},
        {"t_lo", "1/J_q", 1e-6, 1e6, 0.1, "start of the (log) time grid"},
        {"t_hi", "1/J_q", 1e-6, 1e6, 2000.0, "end of the time grid"},
        {"n_t", "1", 2, 100000, 120, "number of time samples"},
    };
    t["zeta-var"] = {
        {"f_threshold", "1", 0.5, 0.999999, 0.95, "fidelity threshold F_T"},
        {"err_lo", "1", -0.999, 10.0, -0.5, "lowest relative error of zeta"},
        {"err_hi", "1", -0.999, 10.0, 0.5, "highest relative error"},
        {"n_err", "1", 2, 10000, 41, "number of error samples"},
        {"margin_f_lo", "1", 0.5, 0.999999, 0.91, "lowest threshold of the margin scan"},
        {"margin_f_hi", "1", 0.5, 0.999999, 0.99, "highest threshold of the margin scan"},
        {"n_margin_f", "1", 0, 64, 5, "margin scan points (0 disables)"},
    };
    t["distance-var"] = {
        {"zeta", "1", 1e-4, 10.0, 0.27, "drive parameter zeta"},
        {"f_threshold", "1", 0.5, 0.999999, 0.95, "fidelity threshold F_T"},
        {"phase_lo_over_pi", "1", -2.0, 2.0, -0.5, "lower pair phase, units of pi"},
        {"phase_hi_over_pi", "1", -2.0, 2.0, 0.5, "upper pair phase"},
        {"n_phase", "1", 2, 10000, 41, "number of phase samples"},
    };
    t["spectrum"] = {
        {"r_lo", "1", 1e-6, 100.0, 0.05, "lowest R = J_q/(2 Omega)"},
        {"r_hi", "1", 1e-6, 100.0, 8.0, "highest R"},
        {"n_r", "1", 2, 100000, 160, "number of R samples"},
    };
    t["validate"] = {
        {"seed", "1", 0, 4294967295.0, 12345, "seed of the randomized suites"},
    };
    return t;
}

const std::map<std::string, std::vector<KeySpec>>& key_tables() {
    static const auto tables = build_key_tables();
    return tables;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

double RunConfig::at(const std::string& key) const {
    const auto it = parameters.find(key);
    if (it == parameters.end()) {
        throw config_error("internal: experiment '" + experiment + "' has no key '" + key + "'");
    }
    return it->second;
}

const std::vector<std::string>& experiment_names() { return kExperiments; }

const std::vector<KeySpec>& experiment_keys(const std::string& experiment) {
    const auto it = key_tables().find(experiment);
    if (it == key_tables().end()) {
        throw config_error("unknown experiment '" + experiment + "'");
    }
    return it->second;
}

RunConfig parse_config_text(const std::string& text, const std::string& experiment) {
    const std::vector<KeySpec>& specs = experiment_keys(experiment);

    RunConfig cfg;
    cfg.experiment = experiment;
    for (const KeySpec& s : specs) cfg.parameters[s.name] = s.fallback;

    std::map<std::string, int> seen_lines;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        auto sep = line.find(':');
        if (sep == std::string::npos) sep = line.find('=');
        if (sep == std::string::npos) {
            throw config_error("line " + std::to_string(lineno) +
                               ": expected 'key: value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, sep));
        const std::string value = trim(line.substr(sep + 1));
        if (key.empty() || value.empty()) {
            throw config_error("line " + std::to_string(lineno) + ": empty key or value");
        }

        const auto dup = seen_lines.find(key);
        if (dup != seen_lines.end()) {
            throw config_error("duplicate key '" + key + "' on lines " +
                               std::to_string(dup->second) + " and " + std::to_string(lineno));
        }
        seen_lines[key] = lineno;

        const auto spec = std::find_if(specs.begin(), specs.end(),
                                       [&](const KeySpec& s) { return s.name == key; });
        if (spec == specs.end()) {
            throw config_error("line " + std::to_string(lineno) + ": unknown key '" + key +
                               "' for experiment '" + experiment + "'");
        }

        std::size_t used = 0;
        double parsed = 0.0;
        try {
            parsed = std::stod(value, &used);
        } catch (const std::exception&) {
            throw config_error("line " + std::to_string(lineno) + ": key '" + key +
                               "': cannot parse '" + value + "' as a number");
        }
        if (used != value.size() || !std::isfinite(parsed)) {
            throw config_error("line " + std::to_string(lineno) + ": key '" + key +
                               "': cannot parse '" + value + "' as a number");
        }
        if (parsed < spec->min || parsed > spec->max) {
            throw config_error("line " + std::to_string(lineno) + ": key '" + key + "' = " +
                               value + " outside [" + std::to_string(spec->min) + ", " +
                               std::to_string(spec->max) + "]");
        }
        cfg.parameters[key] = parsed;
    }
    return cfg;
}

RunConfig load_config(const std::string& path, const std::string& experiment) {
    if (path.empty()) return parse_config_text("", experiment);
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), experiment);
}

}  // namespace magq
