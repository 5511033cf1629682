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


#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "commands.hpp"
#include "config.hpp"
#include "doctest.h"
#include "json.hpp"
#include "output.hpp"

using namespace knr;
using namespace knr::cli;
namespace fs = std::filesystem;

namespace {

struct Workspace {
    fs::path root;
    explicit Workspace(const std::string &name) : root(fs::temp_directory_path() / ("knrsim_test_" + name)) {
        fs::remove_all(root);
        fs::create_directories(root);
    }
    ~Workspace() { fs::remove_all(root); }

    std::string write(const std::string &name, const std::string &text) const {
        std::ofstream(root / name) << text;
        return (root / name).string();
    }
};

std::string read(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "knrsim");
    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

// Data rows of a CSV (metadata and header dropped), split on commas.
std::vector<std::vector<std::string>> rows(const std::string &csv) {
    std::vector<std::vector<std::string>> out;
    std::istringstream in(csv);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        out.push_back(cells);
    }
    return out;
}

const char *kScaled = R"({
  "resonator": {"omega_c": 1000, "K": -0.0625, "K_prime": -1.25e-4, "kappa": 1},
  "drive": {"Omega": 3.9, "P_over_Pc": 2.5},
  "sweep": {"branch": "H"},
  "oracle": {"truncation": 20}
})";

const char *kSampleHeat = R"({
  "resonator": {"omega_c_hz": 6.4535e9, "K_hz": -625e3, "K_prime_hz": -1.25e3, "kappa_hz": 10e6},
  "drive": {"Omega": 3.9},
  "sweep": {"power": {"start": 1.05, "stop": 2.0, "count": 12, "unit": "P_over_Pplus"}, "branch": "H"}
})";

}  // namespace

TEST_CASE("sha256 and number formatting") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(format_number(0.1) == "0.1");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("config parsing") {
    const auto cfg = parse_config(R"({"resonator": {"omega_c_hz": 6.4535e9, "K_hz": -625e3, "kappa_hz": 10e6},
                                      "drive": {"omega_p_hz": 6.434e9, "P_p_dbm": -90}})");
    CHECK(cfg.resonator.omega_c == doctest::Approx(hz_to_angular(6.4535e9)));
    CHECK(cfg.resonator.kerr2 == 0.0);
    CHECK(cfg.drive().epsilon_p ==
          doctest::Approx(power_to_amplitude(cfg.resonator, hz_to_angular(6.434e9), dbm_to_watts(-90.0))));
    CHECK(cfg.sha256.size() == 64);
    // Key order does not change the hash.
    const auto swapped = parse_config(R"({"drive": {"P_p_dbm": -90, "omega_p_hz": 6.434e9},
                                          "resonator": {"kappa_hz": 10e6, "K_hz": -625e3, "omega_c_hz": 6.4535e9}})");
    CHECK(swapped.sha256 == cfg.sha256);
}

TEST_CASE("config errors") {
    const std::vector<std::string> bad = {
        R"({"resonator": {"omega_c": 1000, "K": -0.1, "kappa": 1, "bogus": 1}})",
        R"({"resonator": {"omega_c": 1000, "omega_c_hz": 1000, "K": -0.1, "kappa": 1}})",
        R"({"resonator": {"omega_c": 1000, "K": -0.1, "kappa": 1}, "drive": {"Omega": 3, "epsilon_p": 1, "P_over_Pc": 2}})",
        R"({"resonator": {"omega_c": 1000, "K": -0.1, "kappa": -1}})",
        R"({"unknown": {}})",
    };
    for (const auto &text : bad) CHECK_THROWS_AS(parse_config(text), ConfigError);
    try {
        parse_config("{\n  \"resonator\": {\n    \"omega_c\": 1000,,\n  }\n}");
        FAIL("expected a syntax error");
    } catch (const ConfigError &e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("steady with zero drive") {
    Workspace ws("steady_zero");
    const auto cfg = ws.write("c.json", R"({"resonator": {"omega_c": 1000, "K": -0.0625, "kappa": 1},
                                            "drive": {"Omega": 2.0, "epsilon_p": 0}})");
    const auto r = invoke({"--config", cfg, "--out", (ws.root / "out").string(), "steady"});
    REQUIRE(r.code == 0);
    const auto text = read(ws.root / "out" / "steady.csv");
    CHECK(text.find("# config_sha256: ") != std::string::npos);
    CHECK(text.find("# t_eff_convention: dressed-lab") != std::string::npos);
    const auto data = rows(text);
    REQUIRE(data.size() == 1);
    CHECK(data[0][3] == "0");
}

TEST_CASE("steady in the bistable window carries all labels") {
    Workspace ws("steady_bistable");
    const auto cfg = ws.write("c.json", R"({"resonator": {"omega_c_hz": 6.4535e9, "K_hz": -625e3, "K_prime_hz": -1.25e3, "kappa_hz": 10e6},
                                            "drive": {"Omega": 3.9, "P_over_Pc": 4.0}})");
    REQUIRE(invoke({"--config", cfg, "--out", ws.root.string(), "steady"}).code == 0);
    std::vector<std::string> labels;
    for (const auto &row : rows(read(ws.root / "steady.csv"))) labels.push_back(row[7]);
    CHECK(labels == std::vector<std::string>{"L", "UNSTABLE", "H"});
}

TEST_CASE("malformed config exits 2 without output") {
    Workspace ws("malformed");
    const auto cfg = ws.write("c.json", "{\"resonator\": {\"omega_c\": 1000,,}");
    const auto out = ws.root / "out";
    const auto r = invoke({"--config", cfg, "--out", out.string(), "steady"});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 1") != std::string::npos);
    CHECK_FALSE(fs::exists(out / "steady.csv"));
    CHECK(invoke({"--config", cfg, "bogus"}).code == 2);
    CHECK(invoke({"--config", (ws.root / "missing.json").string(), "steady"}).code == 2);
}

TEST_CASE("diagram 2x2") {
    Workspace ws("diagram");
    const auto cfg = ws.write("c.json", R"({"resonator": {"omega_c": 1000, "K": -0.0625, "kappa": 1},
        "sweep": {"Omega": {"start": 1, "stop": 4, "count": 2}, "power": {"start": 0.5, "stop": 2, "count": 2}}})");
    REQUIRE(invoke({"--config", cfg, "--out", ws.root.string(), "diagram"}).code == 0);
    CHECK(rows(read(ws.root / "diagram.csv")).size() == 4);
    const auto curves = rows(read(ws.root / "thresholds.csv"));
    REQUIRE(curves.size() == 2);
    CHECK(curves[0][1] == "nan");
}

TEST_CASE("heat output decreases on the high branch and is thread independent") {
    Workspace ws("heat");
    const auto cfg = ws.write("c.json", kSampleHeat);
    REQUIRE(invoke({"--config", cfg, "--out", (ws.root / "a").string(), "--threads", "1", "heat"}).code == 0);
    REQUIRE(invoke({"--config", cfg, "--out", (ws.root / "b").string(), "--threads", "3", "heat"}).code == 0);
    const auto a = read(ws.root / "a" / "heat.csv");
    CHECK(a == read(ws.root / "b" / "heat.csv"));
    double previous = 1e300;
    for (const auto &row : rows(a)) {
        CHECK(row[2] == "H");
        const double n = std::stod(row[5]);
        CHECK(n < previous);
        previous = n;
    }
    REQUIRE(invoke({"--config", cfg, "--out", (ws.root / "q").string(), "--teff-convention", "quasienergy", "heat"})
                .code == 0);
    CHECK(read(ws.root / "q" / "heat.csv").find("quasienergy") != std::string::npos);
    CHECK(invoke({"--config", cfg, "--teff-convention", "kelvin", "heat"}).code == 2);
}

TEST_CASE("oracle compare report") {
    Workspace ws("oracle");
    const auto cfg = ws.write("c.json", kScaled);
    const auto r = invoke({"--config", cfg, "--out", ws.root.string(), "oracle", "--compare"});
    REQUIRE(r.code == 0);
    const auto report = nlohmann::json::parse(read(ws.root / "oracle.json"));
    for (const char *key : {"n_tilde_linearized", "n_tilde_oracle", "rel_error", "truncation_check"}) {
        CHECK(report.contains(key));
    }
    CHECK(report["truncation_check"]["rel_change"].get<double>() < 0.01);
}

TEST_CASE("numeric failures exit 1") {
    Workspace ws("numeric");
    // Below P_- the high branch does not exist.
    const auto cfg = ws.write("c.json", R"({"resonator": {"omega_c": 1000, "K": -0.0625, "kappa": 1},
                                            "drive": {"Omega": 3.9, "P_over_Pc": 0.3}, "sweep": {"branch": "H"}})");
    const auto r = invoke({"--config", cfg, "--out", ws.root.string(), "oracle"});
    CHECK(r.code == 1);
    CHECK(r.err.find("cli.domain") != std::string::npos);
    CHECK_FALSE(fs::exists(ws.root / "oracle.json"));
}

TEST_CASE("sideband and fit round trip through files") {
    Workspace ws("sideband");
    const auto cfg = ws.write("c.json", R"({
      "resonator": {"omega_c": 1000, "K": -0.0625, "K_prime": -1.25e-4, "kappa": 1},
      "drive": {"Omega": 3.9, "P_over_Pc": 3.0},
      "qubit": {"omega_ge": 600, "g0": 3.4641016151377544, "gamma_down_extra": 0.05},
      "spectroscopy": {"g_eff": 0.1, "alpha_s": 0.005, "grid": {"start": -9, "stop": 9, "count": 181}}
    })");
    const auto r = invoke({"--config", cfg, "--out", ws.root.string(), "sideband"});
    REQUIRE(r.code == 0);
    const auto report = nlohmann::json::parse(read(ws.root / "sideband_fit.json"));
    REQUIRE(report["points"].size() == 1);
    const auto &p = report["points"][0];
    CHECK(p["sideband_full_separation_hz"].get<double>() ==
          doctest::Approx(2.0 * p["sideband_half_separation_hz"].get<double>()));
    CHECK(p.contains("thermometry"));

    // Refit the emitted spectrum from its (omega_q_minus_stark, p_excited) columns.
    std::ostringstream two;
    for (const auto &row : rows(read(ws.root / "sideband.csv"))) two << row[2] << "," << row[3] << "\n";
    const auto data = ws.write("trace.csv", "# two columns\nx,y\n" + two.str());
    const double d = p["sideband_half_separation_hz"].get<double>();
    std::ostringstream fit_cfg;
    fit_cfg << R"({"resonator": {"omega_c": 1000, "K": -0.0625, "kappa": 1}, "fit": {"input": ")" << data
            << R"(", "expected_centers": [)" << -d << ", 0, " << d << R"(], "initial_fwhm": 0.15915494309189535}})";
    const auto fc = ws.write("f.json", fit_cfg.str());
    REQUIRE(invoke({"--config", fc, "--out", ws.root.string(), "fit"}).code == 0);
    const auto fit = nlohmann::json::parse(read(ws.root / "fit.json"));
    CHECK(fit["fit"]["converged"].get<bool>());
    CHECK(fit["fit"]["peaks"].size() == 3);
}
