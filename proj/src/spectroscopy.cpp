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


#include "knr/spectroscopy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "knr/error.hpp"
#include "knr/grid.hpp"

namespace knr {

namespace {
constexpr std::string_view kModule = "spectroscopy";

double lorentzian_rate(const LinearizedMode &mode, double delta) {
    const double half = 0.5 * mode.kappa;
    const double offset = mode.delta_tilde + delta;
    return half / (half * half + offset * offset);
}

// Parameters in scaled units: u = (x - x0) / xs, values y / ys.
// p = [baseline, c0, w0, h0, c1, w1, h1, c2, w2, h2]
struct ThreeLorentzians : Eigen::DenseFunctor<double> {
    const Eigen::VectorXd &u;
    const Eigen::VectorXd &v;

    ThreeLorentzians(const Eigen::VectorXd &u_, const Eigen::VectorXd &v_)
        : DenseFunctor<double>(10, static_cast<int>(u_.size())), u(u_), v(v_) {}

    int operator()(const Eigen::VectorXd &p, Eigen::VectorXd &f) const {
        for (Eigen::Index i = 0; i < u.size(); ++i) {
            double model = p[0];
            for (int k = 0; k < 3; ++k) {
                const double c = p[1 + 3 * k], w = p[2 + 3 * k], h = p[3 + 3 * k];
                const double s = (u[i] - c) / w;
                model += h / (1.0 + 4.0 * s * s);
            }
            f[i] = model - v[i];
        }
        return 0;
    }

    int df(const Eigen::VectorXd &p, Eigen::MatrixXd &jac) const {
        for (Eigen::Index i = 0; i < u.size(); ++i) {
            jac(i, 0) = 1.0;
            for (int k = 0; k < 3; ++k) {
                const double c = p[1 + 3 * k], w = p[2 + 3 * k], h = p[3 + 3 * k];
                const double d = u[i] - c;
                const double q = 1.0 + 4.0 * d * d / (w * w);
                jac(i, 1 + 3 * k) = h * 8.0 * d / (w * w) / (q * q);
                jac(i, 2 + 3 * k) = h * 8.0 * d * d / (w * w * w) / (q * q);
                jac(i, 3 + 3 * k) = 1.0 / q;
            }
        }
        return 0;
    }
};

}  // namespace

double dispersive_shift(const QubitParams &qubit, const ResonatorParams &res) {
    const double detuning = qubit.omega_ge - res.omega_c;
    if (detuning == 0.0) {
        throw Error(ErrorCode::kDivergence, kModule, "omega_ge = omega_c: dispersive shift diverges");
    }
    return qubit.g0 * qubit.g0 / detuning;
}

double stark_shifted_frequency(const QubitParams &qubit, const ResonatorParams &res, double n) {
    return qubit.omega_ge + 2.0 * dispersive_shift(qubit, res) * n;
}

SidebandRates sideband_rates(const LinearizedMode &mode, const QubitParams &qubit, double g_eff,
                             double delta) {
    if (!(g_eff >= 0.0)) throw Error(ErrorCode::kDomain, kModule, "g_eff must be non-negative");
    const double l_minus = lorentzian_rate(mode, -delta);
    const double l_plus = lorentzian_rate(mode, delta);
    const double g2 = g_eff * g_eff;
    const double pair = (l_minus + l_plus) * std::norm(mode.nu);
    SidebandRates out;
    out.gamma_down = qubit.gamma_down_extra + g2 * (pair + l_minus);
    out.gamma_up = qubit.gamma_up_extra + g2 * (pair + l_plus);
    return out;
}

double qubit_excited_population(const LinearizedMode &mode, const QubitParams &qubit,
                                double g_eff, std::complex<double> alpha_s, double delta) {
    const auto rates = sideband_rates(mode, qubit, g_eff, delta);
    const double total = rates.gamma_up + rates.gamma_down;
    if (!(total > 0.0)) {
        throw Error(ErrorCode::kDegenerateRates, kModule,
                    "gamma_up + gamma_down = 0: stationary population undefined");
    }
    const double drive = std::norm(qubit.g0 * alpha_s);
    const double p_eq = rates.gamma_up / total;
    const double gamma2 = qubit.gamma_phi + 0.5 * total;
    const double d2 = delta * delta;
    const double num = p_eq * (gamma2 * gamma2 + d2) + 2.0 * gamma2 * drive / total;
    const double den = gamma2 * gamma2 + 4.0 * gamma2 * drive / total + d2;
    return num / den;
}

SpectrumTrace qubit_spectrum_analytic(const LinearizedMode &mode, const QubitParams &qubit,
                                      double g_eff, std::complex<double> alpha_s,
                                      std::span<const double> qubit_detuning_grid) {
    SpectrumTrace trace;
    trace.x.assign(qubit_detuning_grid.begin(), qubit_detuning_grid.end());
    trace.x_label = "omega_q_minus_stark";
    trace.y_label = "p_excited";
    if (trace.x.empty() || !is_strictly_ascending(trace.x)) {
        throw Error(ErrorCode::kDomain, kModule, "qubit grid must be non-empty and ascending");
    }
    const double reach = 2.0 * std::abs(mode.delta_tilde);
    if (trace.x.front() > -reach || trace.x.back() < reach) {
        warn(kModule, "qubit grid does not cover +-2 delta_tilde; satellites may be cut off");
    }
    trace.y.resize(trace.x.size());
    for (std::size_t i = 0; i < trace.x.size(); ++i) {
        trace.y[i] = qubit_excited_population(mode, qubit, g_eff, alpha_s, -trace.x[i]);
    }
    return trace;
}

SidebandPositions sideband_positions(const LinearizedMode &mode) {
    return {mode.delta_tilde, -mode.delta_tilde};
}

double ratio_prediction(const LinearizedMode &mode) {
    if (std::abs(mode.delta_tilde) < 3.0 * mode.kappa) {
        warn(kModule, "|delta_tilde| < 3 kappa: sidebands are not well resolved");
    }
    return mode.n_tilde / (1.0 + mode.n_tilde);
}

LorentzianFit fit_three_lorentzians(const SpectrumTrace &trace,
                                    const std::array<double, 3> &expected_centers,
                                    const FitOptions &options) {
    validate_trace(trace);
    if (!(options.initial_fwhm > 0.0)) {
        throw Error(ErrorCode::kDomain, kModule, "fit needs a positive initial width");
    }
    if (trace.size() < 10) throw Error(ErrorCode::kDomain, kModule, "fit needs at least 10 points");

    const std::size_t n = trace.size();
    const double x0 = 0.5 * (trace.x.front() + trace.x.back());
    const double xs = options.initial_fwhm;
    const double y_min = *std::min_element(trace.y.begin(), trace.y.end());
    const double y_max = *std::max_element(trace.y.begin(), trace.y.end());
    const double ys = std::max(std::abs(y_max), std::abs(y_min)) > 0.0
                          ? std::max(std::abs(y_max), std::abs(y_min))
                          : 1.0;
    Eigen::VectorXd u(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[static_cast<Eigen::Index>(i)] = (trace.x[i] - x0) / xs;
        v[static_cast<Eigen::Index>(i)] = trace.y[i] / ys;
    }

    Eigen::VectorXd p(10);
    p[0] = y_min / ys;
    for (int k = 0; k < 3; ++k) {
        const double c = expected_centers[static_cast<std::size_t>(k)];
        double local = y_min;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(trace.x[i] - c) <= 0.5 * options.initial_fwhm) local = std::max(local, trace.y[i]);
        }
        const double h = local - y_min;
        p[1 + 3 * k] = (c - x0) / xs;
        p[2 + 3 * k] = 1.0;
        p[3 + 3 * k] = h > 0.0 ? h / ys : 1e-3 * (y_max - y_min) / ys;
    }

    ThreeLorentzians functor(u, v);
    Eigen::LevenbergMarquardt<ThreeLorentzians> lm(functor);
    lm.setXtol(options.xtol);
    lm.setFtol(1e-15);
    lm.setGtol(0.0);
    lm.setMaxfev(options.max_evaluations);
    const auto status = lm.minimize(p);

    Eigen::VectorXd resid(n);
    functor(p, resid);
    LorentzianFit fit;
    fit.residual_rms = ys * std::sqrt(resid.squaredNorm() / static_cast<double>(n));
    fit.iterations = static_cast<int>(lm.iterations());
    fit.baseline = ys * p[0];
    for (int k = 0; k < 3; ++k) {
        auto &peak = fit.peaks[static_cast<std::size_t>(k)];
        peak.center = x0 + xs * p[1 + 3 * k];
        peak.fwhm = xs * std::abs(p[2 + 3 * k]);
        peak.height = ys * p[3 + 3 * k];
    }

    using namespace Eigen::LevenbergMarquardtSpace;
    fit.converged = status != ImproperInputParameters && status != TooManyFunctionEvaluation &&
                    status != NotStarted && status != Running && status != UserAsked;
    if (!fit.converged) {
        std::ostringstream msg;
        msg << "no convergence (status " << static_cast<int>(status) << "); best so far:";
        for (const auto &peak : fit.peaks) {
            msg << " [center " << peak.center << ", fwhm " << peak.fwhm << ", height " << peak.height << "]";
        }
        msg << ", residual_rms " << fit.residual_rms;
        throw Error(ErrorCode::kFit, kModule, msg.str());
    }

    const double floor = std::max(options.absence_sigma * fit.residual_rms, 1e-9 * ys);
    for (auto &peak : fit.peaks) {
        if (!(peak.height > floor) || !(peak.fwhm > 0.0)) {
            peak.present = false;
            peak.height = 0.0;
        }
    }
    return fit;
}

ThermometryResult thermometry_from_heights(double anti_stokes_height, double stokes_height,
                                           double omega_ref) {
    if (!(stokes_height > 0.0)) {
        throw Error(ErrorCode::kUnphysicalRatio, kModule, "no Stokes peak to normalize against");
    }
    ThermometryResult out;
    out.r = std::max(anti_stokes_height, 0.0) / stokes_height;
    if (!(out.r < 1.0)) {
        std::ostringstream msg;
        msg << "anti-Stokes/Stokes ratio " << out.r << " >= 1";
        throw Error(ErrorCode::kUnphysicalRatio, kModule, msg.str());
    }
    out.n_tilde = out.r / (1.0 - out.r);
    out.t_eff = bose_temperature(out.n_tilde, omega_ref);
    return out;
}

ThermometryResult thermometry(const LorentzianFit &fit, const LinearizedMode &reference,
                              TeffConvention convention) {
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return fit.peaks[static_cast<std::size_t>(a)].center < fit.peaks[static_cast<std::size_t>(b)].center;
    });
    const bool upper_is_stokes = reference.delta_tilde > 0.0;
    const int stokes = upper_is_stokes ? order[2] : order[0];
    const int anti = upper_is_stokes ? order[0] : order[2];
    const auto &s = fit.peaks[static_cast<std::size_t>(stokes)];
    const auto &a = fit.peaks[static_cast<std::size_t>(anti)];
    const double omega_ref = convention == TeffConvention::kDressedLab
                                 ? reference.omega_c_tilde
                                 : std::abs(reference.delta_tilde);
    auto out = thermometry_from_heights(a.present ? a.height : 0.0, s.present ? s.height : 0.0,
                                        omega_ref);
    out.stokes = stokes;
    out.anti_stokes = anti;
    return out;
}

double detection_limit(double noise_std, double stokes_height) {
    if (!(noise_std >= 0.0)) throw Error(ErrorCode::kDomain, kModule, "noise must be non-negative");
    if (!(stokes_height > noise_std)) {
        throw Error(ErrorCode::kNoBound, kModule, "Stokes height does not exceed the noise");
    }
    const double nf = noise_std / stokes_height;
    return nf / (1.0 - nf);
}

}  // namespace knr
