#include "magq/cascade.hpp"
#include "magq/errors.hpp"
#include "magq/magnonics.hpp"
#include "magq/protocol.hpp"
#include "magq/result_table.hpp"
#include "magq/run_config.hpp"
#include "magq/validate.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>

namespace {

using namespace magq;

constexpr const char* kVersion = "1.0.0";
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        out[i] = n > 1 ? lo + (hi - lo) * i / (n - 1) : lo;
    }
    return out;
}

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        out[i] = n > 1 ? lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)) : lo;
    }
    return out;
}

void echo_parameters(ResultTable& table, const RunConfig& cfg) {
    table.add_metadata("tool", std::string("magq ") + kVersion);
    for (const KeySpec& spec : experiment_keys(cfg.experiment)) {
        table.add_metadata("param." + spec.name, cfg.at(spec.name));
    }
}

MaterialFilm film_from(const RunConfig& cfg) {
    MaterialFilm film;
    film.d0 = cfg.at("d0");
    film.gamma_s = cfg.at("gamma_s");
    film.d = cfg.at("d");
    film.l_y = cfg.at("l_y");
    film.l_z = cfg.at("l_z");
    film.d_ex = cfg.at("d_ex");
    film.m_s = cfg.at("m_s");
    film.d_nv = cfg.at("d_nv");
    film.mu0_h0 = cfg.at("mu0_h0");
    film.tau_m = cfg.at("tau_m");
    film.validate();
    return film;
}

ResultTable run_dynamics(const RunConfig& cfg) {
    const double j_over_omega = cfg.at("j_over_omega");
    const int n = static_cast<int>(cfg.at("n_points"));
    const double t_max = cfg.at("t_max");

    ChainConfig chain;
    chain.j_q = 1.0;
    chain.omega_rabi = j_over_omega > 0.0 ? 1.0 / j_over_omega : 0.0;
    const LiouvillianOperator liou = assemble_liouvillian(chain);

    const Matrix n1 = embed_lowering(0, 2).adjoint() * embed_lowering(0, 2);
    const Matrix n2 = embed_lowering(1, 2).adjoint() * embed_lowering(1, 2);

    // One excitation on qubit 1 (|10>) and on qubit 2 (|01>).
    Matrix rho10 = Matrix::Zero(4, 4);
    rho10(2, 2) = 1.0;
    Matrix rho01 = Matrix::Zero(4, 4);
    rho01(1, 1) = 1.0;

    ResultTable table;
    table.experiment = cfg.experiment;
    table.columns = {"jq_t", "n1_from_10", "n2_from_10", "n1_from_01", "n2_from_01"};
    table.units = {"1", "1", "1", "1", "1"};
    echo_parameters(table, cfg);

    const double dt = t_max / (n - 1);
    const Matrix step = matrix_exponential(liou.matrix * dt);
    Vector va = vectorize(rho10);
    Vector vb = vectorize(rho01);
    for (int i = 0; i < n; ++i) {
        const Matrix ra = devectorize(va);
        const Matrix rb = devectorize(vb);
        table.add_row({i * dt, (n1 * ra).trace().real(), (n2 * ra).trace().real(),
                       (n1 * rb).trace().real(), (n2 * rb).trace().real()});
        va = step * va;
        vb = step * vb;
    }
    return table;
}

ResultTable run_protocol_curve(const RunConfig& cfg) {
    const double f_t = cfg.at("f_threshold");
    const double z_t = zeta_threshold(f_t);
    double hi = cfg.at("zeta_hi");
    if (hi <= 0.0) hi = z_t * (1.0 - 1e-6);

    ResultTable table;
    table.experiment = cfg.experiment;
    table.columns = {"zeta", "jq_tp", "converged"};
    table.units = {"1", "1", "bool"};
    echo_parameters(table, cfg);
    table.add_metadata("zeta_threshold", z_t);

    for (double z : logspace(cfg.at("zeta_lo"), hi, static_cast<int>(cfg.at("n_zeta")))) {
        const ProtocolOutcome res = protocol_time(z, f_t);
        table.add_row({z, res.converged ? res.t_protocol : kNaN, res.converged ? 1.0 : 0.0});
    }

    const ZetaOptimum opt = optimize_zeta(f_t);
    table.add_metadata("zeta_min", opt.zeta_min);
    table.add_metadata("jq_tp_min", opt.t_p_min);
    return table;
}

ResultTable run_benchmark(const RunConfig& cfg) {
    ResultTable table;
    table.experiment = cfg.experiment;
    table.columns = {"f_threshold", "jq_t1_required", "jq_tphi_required", "zeta_t1", "zeta_tphi"};
    table.units = {"1", "1", "1", "1", "1"};
    echo_parameters(table, cfg);

    for (double f : linspace(cfg.at("f_lo"), cfg.at("f_hi"), static_cast<int>(cfg.at("n_f")))) {
        const BenchmarkResult t1 = benchmark_coherence(CoherenceKind::lifetime_t1, f);
        const BenchmarkResult tphi = benchmark_coherence(CoherenceKind::dephasing_tphi, f);
        table.add_row({f, t1.min_time, tphi.min_time, t1.zeta_at_min, tphi.zeta_at_min});
    }
    return table;
}

ResultTable run_directional(const RunConfig& cfg, int threads) {
    const std::vector<double> jl =
        logspace(cfg.at("jl_lo"), cfg.at("jl_hi"), static_cast<int>(cfg.at("n_jl")));
    const std::vector<double> phase_over_pi = linspace(
        cfg.at("phase_lo_over_pi"), cfg.at("phase_hi_over_pi"), static_cast<int>(cfg.at("n_phase")));
    std::vector<double> phases(phase_over_pi.size());
    for (std::size_t i = 0; i < phases.size(); ++i) {
        phases[i] = phase_over_pi[i] * std::numbers::pi;
    }

    const DirectionalMap map = directional_map(cfg.at("f_threshold"), jl, phases, threads);

    ResultTable table;
    table.experiment = cfg.experiment;
    table.columns = {"jl_over_jr", "phase_over_pi", "tp_ratio", "converged"};
    table.units = {"1", "1", "1", "bool"};
    echo_parameters(table, cfg);
    table.add_metadata("zeta_ref", map.zeta_ref);
    table.add_metadata("jq_tp_ref", map.t_p_ref);
    for (const DirectionalCell& cell : map.cells) {
        table.add_row({cell.jl_over_jr, cell.phase_l / std::numbers::pi,
                       cell.converged ? cell.t_ratio : kNaN, cell.converged ? 1.0 : 0.0});
    }
    return table;
}

ResultTable run_nv_yig_curves(const RunConfig& cfg, const MaterialFilm& film) {
    ResultTable table;
    table.experiment = cfg.experiment;
    table.columns = {"k", "kd", "omega", "g_plus", "g_minus", "dh_abs"};
    table.units = {"1/m", "1", "rad/s", "rad/s", "rad/s", "A/m"};
    echo_parameters(table, cfg);

    const CouplingSummary sum = dissipative_rate(film);
    table.add_metadata("k_minus", sum.k_minus);
    table.add_metadata("k_plus", sum.k_plus);
    table.add_metadata("omega_minus", sum.omega_minus);
    table.add_metadata("omega_plus", sum.omega_plus);

    const double x0 = film.d / 2.0 + film.d_nv;
    for (double kd : linspace(cfg.at("kd_lo"), cfg.at("kd_hi"), static_cast<int>(cfg.at("n_k")))) {
        const double k = kd / film.d;
        if (std::abs(kd) < 1e-12) {
            table.add_row({k, kd, dispersion_omega(film, 0.0), kNaN, kNaN, kNaN});
            continue;
        }
        const SurfaceMode mode = mode_amplitudes(film, k);
        const FieldFluctuation field = field_fluctuation(film, mode, x0, 0.0);
        table.add_row({k, kd, mode.omega, coupling_constant(film, k, Polarization::plus),
                       coupling_constant(film, k, Polarization::minus),
                       std::abs(field.amplitude)});
    }
    return table;
}

int run_nv_yig(const RunConfig& cfg, std::ostream& os) {
    const MaterialFilm film = film_from(cfg);
    if (cfg.format == OutputFormat::csv) {
        run_nv_yig_curves(cfg, film).write_csv(os);
        return 0;
    }

    const CouplingSummary sum = dissipative_rate(film);
    const double f_t = cfg.at("f_threshold");
    const BenchmarkResult bench = benchmark_coherence(CoherenceKind::dephasing_tphi, f_t);

    nlohmann::ordered_json j;
    j["experiment"] = cfg.experiment;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    meta["tool"] = std::string("magq ") + kVersion;
    for (const KeySpec& spec : experiment_keys(cfg.experiment)) {
        meta["param." + spec.name] = cfg.at(spec.name);
    }
    meta["note.j_q"] = "j_q is reported as a plain rate in 1/s; j_q_over_2pi is the same "
                       "number divided by 2 pi";
    j["metadata"] = meta;
    j["omega_minus"] = sum.omega_minus;
    j["omega_plus"] = sum.omega_plus;
    j["k_minus"] = sum.k_minus;
    j["k_plus"] = sum.k_plus;
    j["g_minus_branch"] = sum.g_minus_branch;
    j["g_plus_branch"] = sum.g_plus_branch;
    j["suppression_ratio"] = sum.suppression_ratio;
    j["j_q"] = sum.j_q;
    j["j_q_over_2pi"] = sum.j_q / (2.0 * std::numbers::pi);
    j["v_group_kq"] = sum.v_group_kq;
    j["l_m"] = sum.l_m;
    j["markov_ratio"] = sum.markov_ratio;
    j["drive_ratio"] = sum.drive_ratio;
    j["min_distance"] = sum.min_distance;
    j["plus_channel_neglected"] = sum.plus_channel_neglected;
    if (!sum.warning.empty()) j["warning"] = sum.warning;
    j["jq_tphi_required"] = bench.min_time;
    j["t_phi_required"] = bench.min_time / sum.j_q;
    j["units"] = {{"omega_minus", "rad/s"},  {"omega_plus", "rad/s"},
                  {"k_minus", "1/m"},        {"k_plus", "1/m"},
                  {"g_minus_branch", "rad/s"}, {"g_plus_branch", "rad/s"},
                  {"j_q", "1/s"},            {"j_q_over_2pi", "1/s"},
                  {"v_group_kq", "m/s"},     {"l_m", "m"},
                  {"min_distance", "m"},     {"jq_tphi_required", "1/J_q"},
                  {"t_phi_required", "s"}};
    os << j.dump(2) << "\n";
    return 0;
}

ResultTable run_transient(const RunConfig& cfg) {
    const std::vector<double> ts =
        logspace(cfg.at("t_lo"), cfg.at("t_hi"), static_cast<int>(cfg.at("n_t")));
    const double zetas[] = {cfg.at("zeta_a"), cfg.at("zeta_b"), cfg.at("zeta_c")};

    ResultTable table;
    table.experiment = cfg.experiment;
    table.columns = {"jq_t", "overlap_a", "overlap_b", "overlap_c"};
    table.units = {"1", "1", "1", "1"};
    echo_parameters(table, cfg);

    std::vector<std::vector<std::pair<double, double>>> curves;
    for (double z : zetas) {
        curves.push_back(z > 0.0 ? transient_overlap(z, ts)
                                 : std::vector<std::pair<double, double>>{});
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
        std::vector<double> row = {ts[i]};
        for (const auto& curve : curves) {
            row.push_back(curve.empty() ? kNaN : curve[i].second);
        }
        table.add_row(std::move(row));
    }
    return table;
}

ResultTable run_zeta_var(const RunConfig& cfg) {
    const double f_t = cfg.at("f_threshold");
    const std::vector<double> errs =
        linspace(cfg.at("err_lo"), cfg.at("err_hi"), static_cast<int>(cfg.at("n_err")));
    const ZetaSensitivity sens = zeta_sensitivity(f_t, errs);

    ResultTable table;
    table.experiment = cfg.experiment;
    table.columns = {"zeta_rel_err", "tp_ratio", "converged"};
    table.units = {"1", "1", "bool"};
    echo_parameters(table, cfg);
    table.add_metadata("zeta_min", sens.zeta_min);
    table.add_metadata("jq_tp_min", sens.t_p_min);
    table.add_metadata("margin", sens.margin);

    const int n_margin = static_cast<int>(cfg.at("n_margin_f"));
    if (n_margin > 0) {
        for (double f : linspace(cfg.at("margin_f_lo"), cfg.at("margin_f_hi"), n_margin)) {
            const ZetaOptimum opt = optimize_zeta(f);
            table.add_metadata("margin_at_f_" + format_double(f),
                               (zeta_threshold(f) - opt.zeta_min) / opt.zeta_min);
        }
    }
    for (const auto& [err, ratio] : sens.curve) {
        const bool ok = std::isfinite(ratio);
        table.add_row({err, ok ? ratio : kNaN, ok ? 1.0 : 0.0});
    }
    return table;
}

ResultTable run_distance_var(const RunConfig& cfg) {
    std::vector<double> phases = linspace(cfg.at("phase_lo_over_pi") * std::numbers::pi,
                                          cfg.at("phase_hi_over_pi") * std::numbers::pi,
                                          static_cast<int>(cfg.at("n_phase")));
    const PhaseSensitivity sens = phase_sensitivity(cfg.at("zeta"), cfg.at("f_threshold"), phases);

    ResultTable table;
    table.experiment = cfg.experiment;
    table.columns = {"phase_over_pi", "f_at_tp", "tp_ratio", "converged"};
    table.units = {"1", "1", "1", "bool"};
    echo_parameters(table, cfg);
    table.add_metadata("jq_tp_ref", sens.t_p_ref);
    for (const PhaseSensitivityRow& row : sens.rows) {
        table.add_row({row.phase / std::numbers::pi, row.f_at_tp,
                       row.converged ? row.t_ratio : kNaN, row.converged ? 1.0 : 0.0});
    }
    return table;
}

ResultTable run_spectrum(const RunConfig& cfg) {
    ResultTable table;
    table.experiment = cfg.experiment;
    table.columns = {"r",       "re_w0", "im_w0", "re_w1",      "im_w1", "re_wp", "im_wp",
                     "re_wm",   "im_wm", "nu_re", "nu_im",      "overlap_pm"};
    table.units = {"1", "Omega", "Omega", "Omega", "Omega", "Omega", "Omega",
                   "Omega", "Omega", "1", "1", "1"};
    echo_parameters(table, cfg);

    for (double r : linspace(cfg.at("r_lo"), cfg.at("r_hi"), static_cast<int>(cfg.at("n_r")))) {
        ChainConfig chain;
        chain.omega_rabi = 1.0;
        chain.j_q = 2.0 * r;
        const EffectiveSpectrum spec = effective_spectrum(chain);
        const Complex overlap =
            spec.eigenstates[3].amplitudes.adjoint() * spec.eigenstates[2].amplitudes;
        table.add_row({r, spec.eigenvalues[0].real(), spec.eigenvalues[0].imag(),
                       spec.eigenvalues[1].real(), spec.eigenvalues[1].imag(),
                       spec.eigenvalues[2].real(), spec.eigenvalues[2].imag(),
                       spec.eigenvalues[3].real(), spec.eigenvalues[3].imag(), spec.nu.real(),
                       spec.nu.imag(), std::abs(overlap)});
    }
    return table;
}

int run_validate(const RunConfig& cfg, std::ostream& os) {
    const auto suites = run_validation_suites(static_cast<unsigned>(cfg.at("seed")));
    bool all_ok = true;
    for (const SuiteResult& suite : suites) {
        os << suite.name << ": " << (suite.checks - suite.failures) << "/" << suite.checks
           << " checks passed\n";
        for (const std::string& msg : suite.messages) {
            os << "  FAILED: " << msg << "\n";
        }
        if (suite.failures > 0) all_ok = false;
    }
    os << (all_ok ? "all invariant suites passed\n" : "invariant violations found\n");
    return all_ok ? 0 : 3;
}

int dispatch(const std::string& experiment, const std::string& config_path,
             const std::string& out_path, OutputFormat format, int threads, bool table_defaults) {
    RunConfig cfg = load_config(table_defaults ? "" : config_path, experiment);
    cfg.output_path = out_path;
    cfg.format = format;

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw config_error("cannot open output file '" + out_path + "'");
    }
    std::ostream& os = out_path.empty() ? std::cout : file;

    if (experiment == "validate") return run_validate(cfg, os);
    if (experiment == "nv-yig") return run_nv_yig(cfg, os);

    ResultTable table;
    if (experiment == "dynamics") {
        table = run_dynamics(cfg);
    } else if (experiment == "protocol-curve") {
        table = run_protocol_curve(cfg);
    } else if (experiment == "benchmark") {
        table = run_benchmark(cfg);
    } else if (experiment == "directional") {
        table = run_directional(cfg, threads);
    } else if (experiment == "transient") {
        table = run_transient(cfg);
    } else if (experiment == "zeta-var") {
        table = run_zeta_var(cfg);
    } else if (experiment == "distance-var") {
        table = run_distance_var(cfg);
    } else if (experiment == "spectrum") {
        table = run_spectrum(cfg);
    } else {
        throw config_error("unknown experiment '" + experiment + "'");
    }

    if (format == OutputFormat::csv) {
        table.write_csv(os);
    } else {
        table.write_json(os);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"driven-qubit steady-state entanglement and surface-magnon toolkit"};
    app.set_version_flag("--version", std::string("magq ") + kVersion);

    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    int threads = 1;
    bool table_defaults = false;

    app.fallthrough();  // global flags may follow the subcommand
    app.add_option("--config", config_path, "flat key-value config file");
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads, "worker threads for sweeps")->check(CLI::Range(1, 256));

    const struct {
        const char* name;
        const char* help;
    } commands[] = {
        {"dynamics", "excitation transfer between the two qubits"},
        {"protocol-curve", "protocol time versus zeta, with the optimum"},
        {"benchmark", "required qubit lifetime and dephasing time"},
        {"directional", "protocol time under a two-branch (left/right) bath"},
        {"nv-yig", "surface-magnon couplings and rates from material data"},
        {"transient", "overlap with the steady state over time"},
        {"zeta-var", "protocol-time penalty of a mistuned zeta"},
        {"distance-var", "sensitivity to the qubit-distance phase"},
        {"spectrum", "closed-form spectrum of the non-Hermitian generator"},
        {"validate", "run every module's invariant suite"},
    };
    for (const auto& cmd : commands) {
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
        if (std::string(cmd.name) == "nv-yig") {
            sub->add_flag("--table-1", table_defaults, "use the built-in material defaults");
        }
    }
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const std::string sub = app.get_subcommands().front()->get_name();
        return dispatch(sub, config_path, out_path,
                        format == "json" ? OutputFormat::json : OutputFormat::csv, threads,
                        table_defaults);
    } catch (const config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
}
