// Copyright 2026 The knrsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "json.hpp"
#include "knr/error.hpp"
#include "knr/fluctuations.hpp"
#include "knr/grid.hpp"
#include "knr/lindblad.hpp"
#include "knr/spectroscopy.hpp"
#include "knr/steady_state.hpp"
#include "output.hpp"

namespace knr::cli {

namespace {

using json = nlohmann::json;
using Files = std::map<std::string, std::string>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    int threads = 0;
    std::string teff = "dressed-lab";
    bool compare = false;
    bool sideband = false;
    int max_dim = -1;
    double tol = -1.0;
};

struct Context {
    const RunConfig &cfg;
    const Options &opt;
    TeffConvention convention;
    std::string command;
};

std::string fmt(double v) { return format_number(v); }

double hz(double omega) { return angular_to_hz(omega); }

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

CsvDocument make_csv(const Context &ctx) {
    CsvDocument doc;
    doc.add_meta("tool", std::string("knrsim ") + KNR_VERSION);
    doc.add_meta("command", ctx.command);
    doc.add_meta("config_sha256", ctx.cfg.sha256);
    doc.add_meta("t_eff_convention", std::string(teff_convention_name(ctx.convention)));
    return doc;
}

json make_report(const Context &ctx) {
    json j;
    j["tool"] = std::string("knrsim ") + KNR_VERSION;
    j["command"] = ctx.command;
    j["config_sha256"] = ctx.cfg.sha256;
    j["t_eff_convention"] = std::string(teff_convention_name(ctx.convention));
    return j;
}

std::vector<double> make_grid(const GridSpec &g) {
    return g.log ? log_grid(g.start, g.stop, g.count) : linear_grid(g.start, g.stop, g.count);
}

const GridSpec &require(const std::optional<GridSpec> &g, const char *what) {
    if (!g) throw ConfigError(std::string("missing ") + what);
    return *g;
}

// epsilon_p for one power-axis value at pump frequency omega_p.
double amplitude_for(const RunConfig &cfg, double omega_p, double value) {
    switch (cfg.power_unit) {
        case PowerUnit::kOverPc:
            return std::sqrt(value * critical_amplitude_squared(cfg.resonator));
        case PowerUnit::kOverPplus: {
            const auto t = bifurcation_thresholds(cfg.resonator, reduced_detuning(cfg.resonator, omega_p));
            return std::sqrt(value * t.eps2_plus);
        }
        case PowerUnit::kDbm:
            return power_to_amplitude(cfg.resonator, omega_p, dbm_to_watts(value));
    }
    return 0.0;
}

// Drives of a run: the power sweep when present, else the single drive.
std::vector<DriveParams> drives_of(const RunConfig &cfg, double omega_p) {
    std::vector<DriveParams> out;
    if (cfg.power_sweep) {
        for (double v : make_grid(*cfg.power_sweep)) out.push_back({omega_p, amplitude_for(cfg, omega_p, v)});
    } else {
        out.push_back(cfg.drive());
    }
    return out;
}

double power_over_pc(const ResonatorParams &res, const DriveParams &drive) {
    if (res.kerr == 0.0) return kNaN;
    return drive.epsilon_p * drive.epsilon_p / critical_amplitude_squared(res);
}

double power_over_pplus(const ResonatorParams &res, const DriveParams &drive) {
    try {
        const auto t = bifurcation_thresholds(res, reduced_detuning(res, drive.omega_p));
        return drive.epsilon_p * drive.epsilon_p / t.eps2_plus;
    } catch (const Error &e) {
        if (e.code() == ErrorCode::kNoBistability || e.code() == ErrorCode::kLinearResonator) return kNaN;
        throw;
    }
}

SteadyStateSolution branch_solution(const RunConfig &cfg, const DriveParams &drive) {
    const auto solutions = solve_steady_states(cfg.resonator, drive);
    const auto picked = find_branch(solutions, cfg.branch);
    if (!picked) {
        throw Error(ErrorCode::kDomain, "cli",
                    std::string("branch ") + std::string(branch_name(cfg.branch)) + " does not exist at this drive");
    }
    return *picked;
}

Files cmd_steady(const Context &ctx) {
    const auto &cfg = ctx.cfg;
    std::vector<double> omegas;
    if (cfg.omega_sweep) {
        for (double o : make_grid(*cfg.omega_sweep)) omegas.push_back(pump_frequency_from_reduced(cfg.resonator, o));
    } else {
        omegas.push_back(cfg.pump_frequency());
    }
    auto csv = make_csv(ctx);
    csv.set_header({"omega_reduced", "p_over_pc", "epsilon_p", "n", "alpha_re", "alpha_im", "stable",
                    "branch", "residual"});
    for (double wp : omegas) {
        for (const auto &drive : drives_of(cfg, wp)) {
            for (const auto &s : solve_steady_states(cfg.resonator, drive)) {
                csv.add_row({fmt(reduced_detuning(cfg.resonator, wp)), fmt(power_over_pc(cfg.resonator, drive)),
                             fmt(drive.epsilon_p), fmt(s.n), fmt(s.alpha.real()), fmt(s.alpha.imag()),
                             s.stable ? "1" : "0", std::string(branch_name(s.branch)),
                             fmt(steady_state_residual(cfg.resonator, drive, s.alpha))});
            }
        }
    }
    return {{"steady.csv", csv.str()}};
}

Files cmd_diagram(const Context &ctx) {
    const auto &cfg = ctx.cfg;
    const auto omegas = make_grid(require(cfg.omega_sweep, "sweep.Omega"));
    const auto powers = make_grid(require(cfg.power_sweep, "sweep.power"));
    if (cfg.power_unit != PowerUnit::kOverPc) throw ConfigError("diagram: sweep.power.unit must be P_over_Pc");
    const auto diagram = stability_diagram(cfg.resonator, omegas, powers, Exec::kParallel);
    auto cells = make_csv(ctx);
    cells.set_header({"omega_reduced", "p_over_pc", "region"});
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        for (std::size_t j = 0; j < powers.size(); ++j) {
            cells.add_row({fmt(omegas[i]), fmt(powers[j]), std::string(region_name(diagram.at(i, j)))});
        }
    }
    auto curves = make_csv(ctx);
    curves.set_header({"omega_reduced", "p_minus_over_pc", "p_plus_over_pc"});
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        curves.add_row({fmt(omegas[i]), fmt(diagram.p_minus[i]), fmt(diagram.p_plus[i])});
    }
    return {{"diagram.csv", cells.str()}, {"thresholds.csv", curves.str()}};
}

Files cmd_heat(const Context &ctx) {
    const auto &cfg = ctx.cfg;
    const double wp = cfg.pump_frequency();
    const double reduced = reduced_detuning(cfg.resonator, wp);
    require(cfg.power_sweep, "sweep.power");
    std::vector<double> watts;
    for (const auto &drive : drives_of(cfg, wp)) {
        watts.push_back(amplitude_to_power(cfg.resonator, wp, drive.epsilon_p));
    }
    const auto rows = heating_sweep(cfg.resonator, reduced, watts, cfg.branch, ctx.convention, Exec::kParallel);
    auto csv = make_csv(ctx);
    csv.add_meta("omega_reduced", fmt(reduced));
    csv.set_header({"p_watts", "p_over_pplus", "branch", "n", "delta_tilde_hz", "n_tilde", "t_eff_kelvin",
                    "t_eff_convention"});
    for (const auto &r : rows) {
        const bool ok = r.valid;
        csv.add_row({fmt(r.p_watts), fmt(r.p_over_pplus), ok ? std::string(branch_name(r.branch)) : "absent",
                     fmt(ok ? r.n : kNaN), fmt(ok ? hz(r.delta_tilde) : kNaN), fmt(ok ? r.n_tilde : kNaN),
                     fmt(ok ? r.t_eff : kNaN), std::string(teff_convention_name(ctx.convention))});
    }
    return {{"heat.csv", csv.str()}};
}

Files cmd_spectrum(const Context &ctx) {
    const auto &cfg = ctx.cfg;
    const double wp = cfg.pump_frequency();
    const auto grid = make_grid(require(cfg.spectrum.grid, "spectrum.grid"));
    const auto ordering = cfg.spectrum.absorption ? CorrelationOrdering::kAbsorption : CorrelationOrdering::kEmission;
    auto csv = make_csv(ctx);
    csv.add_meta("ordering", cfg.spectrum.absorption ? "absorption" : "emission");
    csv.add_meta("frame", "displaced");
    csv.set_header({"p_over_pc", "p_over_pplus", "truncation", "delta_tilde_hz", "delta_omega_hz", "s_value"});
    for (const auto &drive : drives_of(cfg, wp)) {
        const auto sol = branch_solution(cfg, drive);
        const auto mode = linearize(cfg.resonator, drive, sol, ctx.convention);
        const auto ss = displaced_frame_steady_state(cfg.resonator, drive, sol.alpha, cfg.oracle.truncation,
                                                     cfg.oracle.max_dim, cfg.oracle.top_tol);
        const auto trace = emission_spectrum(ss.liouvillian, ss.rho, grid, ordering, Exec::kParallel);
        for (std::size_t i = 0; i < trace.size(); ++i) {
            csv.add_row({fmt(power_over_pc(cfg.resonator, drive)), fmt(power_over_pplus(cfg.resonator, drive)),
                         std::to_string(ss.liouvillian.truncation),
                         fmt(hz(mode.delta_tilde)), fmt(hz(trace.x[i])), fmt(trace.y[i])});
        }
    }
    return {{"spectrum.csv", csv.str()}};
}

json fit_to_json(const LorentzianFit &fit) {
    json peaks = json::array();
    for (const auto &p : fit.peaks) {
        peaks.push_back({{"center", p.center}, {"fwhm", p.fwhm}, {"height", p.height}, {"present", p.present}});
    }
    return {{"peaks", peaks},
            {"baseline", fit.baseline},
            {"residual_rms", fit.residual_rms},
            {"converged", fit.converged},
            {"iterations", fit.iterations}};
}

Files cmd_sideband(const Context &ctx) {
    const auto &cfg = ctx.cfg;
    if (!cfg.qubit) throw ConfigError("sideband: missing qubit block");
    const auto &qubit = *cfg.qubit;
    const double wp = cfg.pump_frequency();
    const auto grid = make_grid(require(cfg.spectroscopy.grid, "spectroscopy.grid"));
    if (auto w = qubit.dispersive_warning(cfg.resonator)) warn("cli", *w);

    auto csv = make_csv(ctx);
    csv.set_header({"p_over_pc", "omega_q_hz", "omega_q_minus_stark_hz", "p_excited"});
    json points = json::array();
    for (const auto &drive : drives_of(cfg, wp)) {
        const auto sol = branch_solution(cfg, drive);
        const auto mode = linearize(cfg.resonator, drive, sol, ctx.convention);
        const double stark = stark_shifted_frequency(qubit, cfg.resonator, sol.n);
        const auto trace = qubit_spectrum_analytic(mode, qubit, cfg.spectroscopy.g_eff, cfg.spectroscopy.alpha_s, grid);
        const double p_pc = power_over_pc(cfg.resonator, drive);
        for (std::size_t i = 0; i < trace.size(); ++i) {
            csv.add_row({fmt(p_pc), fmt(hz(stark + trace.x[i])), fmt(hz(trace.x[i])), fmt(trace.y[i])});
        }
        const double d = std::abs(mode.delta_tilde);
        FitOptions fo;
        fo.initial_fwhm = cfg.spectroscopy.fit_fwhm.value_or(cfg.resonator.kappa);
        const auto fit = fit_three_lorentzians(trace, {-d, 0.0, d}, fo);
        json point = fit_to_json(fit);
        for (auto &p : point["peaks"]) {
            p["center_hz"] = hz(p["center"].get<double>());
            p["fwhm_hz"] = hz(p["fwhm"].get<double>());
            p.erase("center");
            p.erase("fwhm");
        }
        point["p_over_pc"] = number_or_null(p_pc);
        point["p_over_pplus"] = number_or_null(power_over_pplus(cfg.resonator, drive));
        point["n"] = sol.n;
        point["branch"] = std::string(branch_name(sol.branch));
        point["stark_hz"] = hz(stark);
        point["delta_tilde_hz"] = hz(mode.delta_tilde);
        point["sideband_half_separation_hz"] = hz(d);
        point["sideband_full_separation_hz"] = hz(2.0 * d);
        point["n_tilde_linearized"] = mode.n_tilde;
        point["r_predicted"] = ratio_prediction(mode);
        try {
            const auto thermo = thermometry(fit, mode, ctx.convention);
            point["thermometry"] = {{"r", thermo.r}, {"n_tilde", thermo.n_tilde}, {"t_eff_kelvin", thermo.t_eff}};
        } catch (const Error &e) {
            if (e.code() != ErrorCode::kUnphysicalRatio) throw;
            point["thermometry"] = {{"error", e.qualified()}};
        }
        points.push_back(point);
    }
    json report = make_report(ctx);
    report["points"] = points;
    return {{"sideband.csv", csv.str()}, {"sideband_fit.json", report.dump(2) + "\n"}};
}

Files cmd_oracle(const Context &ctx) {
    const auto &cfg = ctx.cfg;
    const auto drive = cfg.drive();
    const auto sol = branch_solution(cfg, drive);
    const int max_dim = ctx.opt.max_dim > 0 ? ctx.opt.max_dim : cfg.oracle.max_dim;
    const double tol = ctx.opt.tol > 0.0 ? ctx.opt.tol : cfg.oracle.top_tol;
    Files files;

    if (ctx.opt.sideband) {
        if (!cfg.qubit) throw ConfigError("oracle --sideband: missing qubit block");
        const auto grid = make_grid(require(cfg.spectroscopy.grid, "spectroscopy.grid"));
        const double stark = stark_shifted_frequency(*cfg.qubit, cfg.resonator, sol.n);
        SidebandOracleOptions so;
        so.truncation = cfg.oracle.truncation;
        so.harmonics = cfg.oracle.harmonics;
        so.steps_per_period = cfg.oracle.steps_per_period;
        so.tol = cfg.oracle.period_tol;
        std::vector<SidebandOracleResult> results(grid.size());
        for_each_index(Exec::kParallel, grid.size(), [&](std::size_t i) {
            results[i] = qubit_resonator_sideband_oracle(cfg.resonator, drive, *cfg.qubit,
                                                         {stark + grid[i], cfg.spectroscopy.epsilon_s},
                                                         sol.branch, so);
        });
        auto csv = make_csv(ctx);
        csv.add_meta("truncation", std::to_string(so.truncation));
        csv.add_meta("frame", "displaced");
        csv.set_header({"omega_q_hz", "omega_q_minus_stark_hz", "p_excited", "periods"});
        for (std::size_t i = 0; i < grid.size(); ++i) {
            csv.add_row({fmt(hz(stark + grid[i])), fmt(hz(grid[i])), fmt(results[i].p_e),
                         std::to_string(results[i].periods)});
        }
        files["sideband_oracle.csv"] = csv.str();
        return files;
    }

    const auto ss = displaced_frame_steady_state(cfg.resonator, drive, sol.alpha, cfg.oracle.truncation, max_dim, tol);
    json report = make_report(ctx);
    report["branch"] = std::string(branch_name(sol.branch));
    report["n"] = sol.n;
    report["truncation"] = ss.liouvillian.truncation;
    report["top_population"] = top_population(ss.rho);
    report["residual"] = ss.rho.residual;
    report["spectral_gap"] = ss.rho.spectral_gap;
    report["min_eigenvalue"] = min_eigenvalue(ss.rho);
    report["mean_fluctuation_abs"] = std::abs(mean_annihilation(ss.rho));
    json populations = json::array();
    for (int k = 0; k < ss.rho.dim(); ++k) populations.push_back(std::real(ss.rho.rho(k, k)));
    report["fock_populations"] = populations;
    if (ctx.opt.compare) {
        const auto mode = linearize(cfg.resonator, drive, sol, ctx.convention);
        const double oracle = dressed_occupation(ss.rho, mode);
        report["n_tilde_linearized"] = mode.n_tilde;
        report["n_tilde_oracle"] = oracle;
        report["rel_error"] = number_or_null(std::abs(oracle - mode.n_tilde) / mode.n_tilde);
        const int bigger = static_cast<int>(std::ceil(1.25 * ss.liouvillian.truncation));
        Liouvillian lb = build_displaced_liouvillian(cfg.resonator, drive, sol.alpha, bigger);
        const auto rb = steady_state(lb);
        const double oracle_b = dressed_occupation(rb, mode);
        report["truncation_check"] = {{"truncation", bigger},
                                      {"n_tilde_oracle", oracle_b},
                                      {"rel_change", std::abs(oracle_b - oracle) / oracle}};
    }
    files["oracle.json"] = report.dump(2) + "\n";
    return files;
}

// First two numeric columns of a CSV; '#' lines and a non-numeric header are skipped.
SpectrumTrace read_trace(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("fit.input: cannot read " + path);
    SpectrumTrace t;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',')) {
            throw ConfigError("fit.input line " + std::to_string(line_no) + ": expected two columns");
        }
        char *end_a = nullptr;
        char *end_b = nullptr;
        const double x = std::strtod(a.c_str(), &end_a);
        const double y = std::strtod(b.c_str(), &end_b);
        if (end_a == a.c_str() || end_b == b.c_str()) {
            if (t.x.empty()) continue;  // header
            throw ConfigError("fit.input line " + std::to_string(line_no) + ": not numeric");
        }
        t.x.push_back(x);
        t.y.push_back(y);
    }
    return t;
}

Files cmd_fit(const Context &ctx) {
    if (!ctx.cfg.fit) throw ConfigError("fit: missing fit block");
    const auto &fs = *ctx.cfg.fit;
    const auto trace = read_trace(fs.input);
    FitOptions fo;
    fo.initial_fwhm = fs.initial_fwhm;
    const auto fit = fit_three_lorentzians(trace, fs.expected_centers, fo);
    json report = make_report(ctx);
    report["input"] = fs.input;
    report["fit"] = fit_to_json(fit);
    return {{"fit.json", report.dump(2) + "\n"}};
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Pumped Kerr resonator simulator"};
    app.set_version_flag("--version", std::string("knrsim ") + KNR_VERSION);
    Options opt;
    app.add_option("--config", opt.config_path, "Run configuration (JSON)")->required();
    app.add_option("--out", opt.out_dir, "Output directory");
    app.add_option("--threads", opt.threads, "Worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
    app.add_option("--teff-convention", opt.teff, "Reference frequency of T_eff")
        ->check(CLI::IsMember({"dressed-lab", "quasienergy"}));
    app.require_subcommand(1);
    app.fallthrough();

    const std::map<std::string, std::function<Files(const Context &)>> commands = {
        {"steady", cmd_steady},   {"diagram", cmd_diagram}, {"heat", cmd_heat},  {"spectrum", cmd_spectrum},
        {"sideband", cmd_sideband}, {"oracle", cmd_oracle}, {"fit", cmd_fit}};
    const std::map<std::string, std::string> help = {
        {"steady", "Steady states along the configured drive or power sweep"},
        {"diagram", "Stability diagram over (Omega, P/P_c)"},
        {"heat", "Dressed-mode occupation and T_eff along a power sweep"},
        {"spectrum", "Emission spectrum from the displaced-frame oracle"},
        {"sideband", "Analytic qubit sideband spectrum, fit and thermometry"},
        {"oracle", "Displaced-frame Lindblad steady state and diagnostics"},
        {"fit", "Three-Lorentzian fit of a two-column CSV"}};
    for (const auto &[name, text] : help) {
        auto *sub = app.add_subcommand(name, text);
        if (name == "oracle") {
            sub->add_flag("--compare", opt.compare, "Compare <a~+a~> with the linearized |nu|^2");
            sub->add_flag("--sideband", opt.sideband, "Qubit + resonator sideband scan over spectroscopy.grid");
            sub->add_option("--max-dim", opt.max_dim, "Truncation cap");
            sub->add_option("--tol", opt.tol, "Top Fock population tolerance");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        set_thread_count(opt.threads);
        const RunConfig cfg = load_config(opt.config_path);
        const TeffConvention convention =
            opt.teff == "quasienergy" ? TeffConvention::kQuasienergy : TeffConvention::kDressedLab;
        const Context ctx{cfg, opt, convention, command};
        const Files files = commands.at(command)(ctx);
        write_files(opt.out_dir, files);
        for (const auto &[name, content] : files) out << opt.out_dir << "/" << name << "\n";
        return kExitOk;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error &e) {
        err << e.qualified() << "\n";
        return e.code() == ErrorCode::kConfig ? kExitConfig : kExitNumeric;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}

}  // namespace knr::cli
