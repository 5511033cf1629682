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


#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "knr/error.hpp"

namespace knr::cli {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string &msg) { throw ConfigError(msg); }

void check_keys(const json &obj, std::string_view block, const std::set<std::string> &allowed) {
    if (!obj.is_object()) fail(std::string(block) + ": expected an object");
    for (const auto &item : obj.items()) {
        if (!allowed.count(item.key())) {
            fail(std::string(block) + ": unknown key \"" + item.key() + "\"");
        }
    }
}

double number_at(const json &obj, std::string_view block, const std::string &key) {
    const auto &v = obj.at(key);
    if (!v.is_number()) fail(std::string(block) + "." + key + ": expected a number");
    return v.get<double>();
}

// "<name>_hz" is omega/2pi; "<name>" is angular.
std::optional<double> frequency(const json &obj, std::string_view block, const std::string &name) {
    const bool hz = obj.contains(name + "_hz");
    const bool raw = obj.contains(name);
    if (hz && raw) fail(std::string(block) + ": give either " + name + " or " + name + "_hz, not both");
    if (hz) return hz_to_angular(number_at(obj, block, name + "_hz"));
    if (raw) return number_at(obj, block, name);
    return std::nullopt;
}

double required_frequency(const json &obj, std::string_view block, const std::string &name) {
    auto v = frequency(obj, block, name);
    if (!v) fail(std::string(block) + ": missing " + name + "_hz (or " + name + ")");
    return *v;
}

std::set<std::string> with_hz(std::initializer_list<std::string> names) {
    std::set<std::string> out;
    for (const auto &n : names) {
        out.insert(n);
        out.insert(n + "_hz");
    }
    return out;
}

int integer_at(const json &obj, std::string_view block, const std::string &key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const auto &v = obj.at(key);
    if (!v.is_number_integer()) fail(std::string(block) + "." + key + ": expected an integer");
    return v.get<int>();
}

GridSpec grid_at(const json &obj, std::string_view block, bool frequencies) {
    auto allowed = frequencies ? with_hz({"start", "stop"}) : std::set<std::string>{"start", "stop"};
    allowed.insert({"count", "scale", "unit"});
    check_keys(obj, block, allowed);
    GridSpec g;
    if (frequencies) {
        g.start = required_frequency(obj, block, "start");
        g.stop = required_frequency(obj, block, "stop");
    } else {
        if (!obj.contains("start") || !obj.contains("stop")) fail(std::string(block) + ": needs start and stop");
        g.start = number_at(obj, block, "start");
        g.stop = number_at(obj, block, "stop");
    }
    const int count = integer_at(obj, block, "count", 1);
    if (count < 1) fail(std::string(block) + ".count: must be at least 1");
    g.count = static_cast<std::size_t>(count);
    if (obj.contains("scale")) {
        const auto scale = obj.at("scale");
        if (scale == "log") g.log = true;
        else if (scale != "linear") fail(std::string(block) + ".scale: expected \"log\" or \"linear\"");
    }
    if (g.count > 1 && !(g.stop > g.start)) fail(std::string(block) + ": stop must exceed start");
    if (g.log && !(g.start > 0.0)) fail(std::string(block) + ": logarithmic grid needs start > 0");
    return g;
}

void parse_resonator(const json &doc, RunConfig &cfg) {
    if (!doc.contains("resonator")) fail("missing \"resonator\" block");
    const auto &r = doc.at("resonator");
    check_keys(r, "resonator", with_hz({"omega_c", "K", "K_prime", "kappa"}));
    cfg.resonator.omega_c = required_frequency(r, "resonator", "omega_c");
    cfg.resonator.kerr = required_frequency(r, "resonator", "K");
    cfg.resonator.kerr2 = frequency(r, "resonator", "K_prime").value_or(0.0);
    cfg.resonator.kappa = required_frequency(r, "resonator", "kappa");
    try {
        cfg.resonator.validate();
    } catch (const Error &e) {
        fail(std::string("resonator: ") + e.what());
    }
}

void parse_drive(const json &doc, RunConfig &cfg) {
    if (!doc.contains("drive")) return;
    const auto &d = doc.at("drive");
    auto allowed = with_hz({"omega_p"});
    allowed.insert({"Omega", "epsilon_p", "P_p_dbm", "P_over_Pc"});
    check_keys(d, "drive", allowed);
    const auto omega_p = frequency(d, "drive", "omega_p");
    if (omega_p && d.contains("Omega")) fail("drive: give either omega_p or Omega, not both");
    if (omega_p) cfg.omega_p = *omega_p;
    if (d.contains("Omega")) {
        cfg.omega_p = pump_frequency_from_reduced(cfg.resonator, number_at(d, "drive", "Omega"));
    }
    int given = 0;
    for (const auto &[key, kind] : {std::pair{"epsilon_p", AmplitudeKind::kEpsilon},
                                    std::pair{"P_p_dbm", AmplitudeKind::kDbm},
                                    std::pair{"P_over_Pc", AmplitudeKind::kOverPc}}) {
        if (!d.contains(key)) continue;
        ++given;
        cfg.amplitude_kind = kind;
        cfg.amplitude_value = number_at(d, "drive", key);
    }
    if (given > 1) fail("drive: exactly one of epsilon_p, P_p_dbm, P_over_Pc may be given");
    if (cfg.amplitude_kind == AmplitudeKind::kEpsilon && cfg.amplitude_value < 0.0) {
        fail("drive.epsilon_p: must be non-negative");
    }
    if (cfg.amplitude_kind == AmplitudeKind::kOverPc && cfg.amplitude_value < 0.0) {
        fail("drive.P_over_Pc: must be non-negative");
    }
}

void parse_qubit(const json &doc, RunConfig &cfg) {
    if (!doc.contains("qubit")) return;
    const auto &q = doc.at("qubit");
    check_keys(q, "qubit", with_hz({"omega_ge", "g0", "gamma_down_extra", "gamma_up_extra", "gamma_phi"}));
    QubitParams p;
    p.omega_ge = required_frequency(q, "qubit", "omega_ge");
    p.g0 = required_frequency(q, "qubit", "g0");
    p.gamma_down_extra = frequency(q, "qubit", "gamma_down_extra").value_or(0.0);
    p.gamma_up_extra = frequency(q, "qubit", "gamma_up_extra").value_or(0.0);
    p.gamma_phi = frequency(q, "qubit", "gamma_phi").value_or(0.0);
    try {
        p.validate();
    } catch (const Error &e) {
        fail(std::string("qubit: ") + e.what());
    }
    cfg.qubit = p;
}

void parse_sweep(const json &doc, RunConfig &cfg) {
    if (!doc.contains("sweep")) return;
    const auto &s = doc.at("sweep");
    check_keys(s, "sweep", {"Omega", "power", "branch"});
    if (s.contains("Omega")) cfg.omega_sweep = grid_at(s.at("Omega"), "sweep.Omega", false);
    if (s.contains("power")) {
        const auto &p = s.at("power");
        cfg.power_sweep = grid_at(p, "sweep.power", false);
        const std::string unit = p.value("unit", "P_over_Pc");
        if (unit == "P_over_Pc") cfg.power_unit = PowerUnit::kOverPc;
        else if (unit == "P_over_Pplus") cfg.power_unit = PowerUnit::kOverPplus;
        else if (unit == "dbm") cfg.power_unit = PowerUnit::kDbm;
        else fail("sweep.power.unit: expected P_over_Pc, P_over_Pplus or dbm");
        if (cfg.power_unit == PowerUnit::kDbm && cfg.power_sweep->log) {
            fail("sweep.power: dBm grids are already logarithmic; use scale \"linear\"");
        }
    }
    if (s.contains("branch")) {
        const auto b = s.at("branch");
        if (b == "L") cfg.branch = Branch::kLow;
        else if (b == "H") cfg.branch = Branch::kHigh;
        else fail("sweep.branch: expected \"L\" or \"H\"");
    }
}

void parse_oracle(const json &doc, RunConfig &cfg) {
    if (!doc.contains("oracle")) return;
    const auto &o = doc.at("oracle");
    check_keys(o, "oracle", {"truncation", "max_dim", "top_tol", "harmonics", "steps_per_period", "period_tol"});
    auto &s = cfg.oracle;
    s.truncation = integer_at(o, "oracle", "truncation", s.truncation);
    s.max_dim = integer_at(o, "oracle", "max_dim", s.max_dim);
    s.harmonics = integer_at(o, "oracle", "harmonics", s.harmonics);
    s.steps_per_period = integer_at(o, "oracle", "steps_per_period", s.steps_per_period);
    if (o.contains("top_tol")) s.top_tol = number_at(o, "oracle", "top_tol");
    if (o.contains("period_tol")) s.period_tol = number_at(o, "oracle", "period_tol");
    if (s.truncation < 2) fail("oracle.truncation: must be at least 2");
    if (s.max_dim < s.truncation) fail("oracle.max_dim: must be at least the truncation");
    if (!(s.top_tol > 0.0) || !(s.period_tol > 0.0)) fail("oracle: tolerances must be positive");
    if (s.harmonics < 0 || s.steps_per_period < 4) fail("oracle: invalid harmonics or steps_per_period");
}

void parse_spectroscopy(const json &doc, RunConfig &cfg) {
    if (!doc.contains("spectroscopy")) return;
    const auto &s = doc.at("spectroscopy");
    auto allowed = with_hz({"g_eff", "epsilon_s", "fit_fwhm"});
    allowed.insert({"alpha_s", "grid"});
    check_keys(s, "spectroscopy", allowed);
    auto &out = cfg.spectroscopy;
    out.g_eff = frequency(s, "spectroscopy", "g_eff").value_or(0.0);
    out.epsilon_s = frequency(s, "spectroscopy", "epsilon_s").value_or(0.0);
    out.fit_fwhm = frequency(s, "spectroscopy", "fit_fwhm");
    if (out.g_eff < 0.0) fail("spectroscopy.g_eff: must be non-negative");
    if (s.contains("alpha_s")) {
        const auto &a = s.at("alpha_s");
        if (a.is_number()) out.alpha_s = a.get<double>();
        else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
            out.alpha_s = {a[0].get<double>(), a[1].get<double>()};
        } else {
            fail("spectroscopy.alpha_s: expected a number or [re, im]");
        }
    }
    if (s.contains("grid")) out.grid = grid_at(s.at("grid"), "spectroscopy.grid", true);
}

void parse_spectrum(const json &doc, RunConfig &cfg) {
    if (!doc.contains("spectrum")) return;
    const auto &s = doc.at("spectrum");
    check_keys(s, "spectrum", {"grid", "ordering"});
    if (s.contains("grid")) cfg.spectrum.grid = grid_at(s.at("grid"), "spectrum.grid", true);
    if (s.contains("ordering")) {
        const auto o = s.at("ordering");
        if (o == "absorption") cfg.spectrum.absorption = true;
        else if (o != "emission") fail("spectrum.ordering: expected \"emission\" or \"absorption\"");
    }
}

void parse_fit(const json &doc, RunConfig &cfg) {
    if (!doc.contains("fit")) return;
    const auto &f = doc.at("fit");
    check_keys(f, "fit", {"input", "expected_centers", "initial_fwhm"});
    FitSettings s;
    if (!f.contains("input") || !f.at("input").is_string()) fail("fit.input: expected a path");
    s.input = f.at("input").get<std::string>();
    const auto &c = f.value("expected_centers", json::array());
    if (!c.is_array() || c.size() != 3) fail("fit.expected_centers: expected three numbers");
    for (std::size_t i = 0; i < 3; ++i) {
        if (!c[i].is_number()) fail("fit.expected_centers: expected three numbers");
        s.expected_centers[i] = c[i].get<double>();
    }
    if (!f.contains("initial_fwhm")) fail("fit.initial_fwhm: required");
    s.initial_fwhm = number_at(f, "fit", "initial_fwhm");
    if (!(s.initial_fwhm > 0.0)) fail("fit.initial_fwhm: must be positive");
    cfg.fit = s;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 0xf]);
    }
    return out;
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    try {
        cfg.document = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        std::size_t line = 1, column = 1;
        const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::ostringstream msg;
        msg << "config syntax error at line " << line << ", column " << column << ": " << e.what();
        throw ConfigError(msg.str());
    }
    if (!cfg.document.is_object()) fail("config root must be an object");
    check_keys(cfg.document, "config",
               {"resonator", "drive", "qubit", "sweep", "oracle", "spectroscopy", "spectrum", "fit"});
    // keys of json objects are sorted, so dump() is a stable serialization
    cfg.sha256 = sha256_hex(cfg.document.dump());
    try {
        parse_resonator(cfg.document, cfg);
        parse_drive(cfg.document, cfg);
        parse_qubit(cfg.document, cfg);
        parse_sweep(cfg.document, cfg);
        parse_oracle(cfg.document, cfg);
        parse_spectroscopy(cfg.document, cfg);
        parse_spectrum(cfg.document, cfg);
        parse_fit(cfg.document, cfg);
    } catch (const json::exception &e) {
        fail(std::string("config: ") + e.what());
    } catch (const Error &e) {
        fail(e.qualified());
    }
    return cfg;
}

RunConfig load_config(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

double RunConfig::pump_frequency() const {
    if (!omega_p) throw ConfigError("drive: missing omega_p_hz, omega_p or Omega");
    return *omega_p;
}

DriveParams RunConfig::drive() const {
    const double wp = pump_frequency();
    switch (amplitude_kind) {
        case AmplitudeKind::kEpsilon: return {wp, amplitude_value};
        case AmplitudeKind::kDbm: return {wp, power_to_amplitude(resonator, wp, dbm_to_watts(amplitude_value))};
        case AmplitudeKind::kOverPc:
            return {wp, std::sqrt(amplitude_value * critical_amplitude_squared(resonator))};
        case AmplitudeKind::kNone: break;
    }
    throw ConfigError("drive: exactly one of epsilon_p, P_p_dbm, P_over_Pc is required");
}

}  // namespace knr::cli
