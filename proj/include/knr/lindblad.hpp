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


#pragma once

// Exact reference dynamics in a truncated Fock space.
//
//   d rho/dt = -i [H, rho] + kappa D[a_bar] rho,
//   H = Delta_p a_bar+ a_bar + (K/2) a_bar+^2 a_bar^2 + (K'/3) a_bar+^3 a_bar^3
//       + i epsilon_p (a_bar+ - a_bar),
//
// with a_bar = alpha + a. alpha = 0 is the frame rotating at omega_p; any other
// alpha keeps every term of the expansion (nothing is linearized). Normal
// ordered products a+^j a^k are exact under truncation, so the displaced
// Hamiltonian is assembled from them.
//
// Superoperators act on column-stacked density matrices: vec(A X B) =
// (B^T kron A) vec(X).

#include <complex>
#include <span>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "knr/execution.hpp"
#include "knr/fluctuations.hpp"
#include "knr/model.hpp"
#include "knr/steady_state.hpp"
#include "knr/trace.hpp"

namespace knr {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using SparseC = Eigen::SparseMatrix<Complex>;

namespace fock {
SparseC identity(int dim);
SparseC annihilation(int n);          // truncated a on levels 0..n-1
SparseC power(const SparseC &op, int k);
/// Normal ordered sum_jk C(m,j) C(m,k) conj(alpha)^(m-j) alpha^(m-k) a+^j a^k,
/// i.e. a_bar+^m a_bar^m for a_bar = alpha + a.
SparseC displaced_number_power(int n, Complex alpha, int m);
}  // namespace fock

namespace superop {
SparseC hamiltonian(const SparseC &h);              // rho -> -i [H, rho]
SparseC dissipator(const SparseC &c, double rate);  // rho -> rate D[c] rho
CVector vectorize(const CMatrix &rho);
CMatrix unvectorize(const CVector &v, int dim);
}  // namespace superop

enum class Frame { kRotating, kDisplaced };

struct Liouvillian {
    SparseC generator;
    Frame frame = Frame::kRotating;
    Complex displacement{0.0, 0.0};
    int truncation = 0;    // Fock levels of the resonator
    int qubit_levels = 1;  // 2 when a qubit is attached (qubit index is the outer one)

    int hilbert_dim() const { return truncation * qubit_levels; }
};

struct DensityMatrix {
    CMatrix rho;
    Frame frame = Frame::kRotating;
    Complex displacement{0.0, 0.0};
    int truncation = 0;
    int qubit_levels = 1;
    double residual = 0.0;      // ||L rho||_1 / ||L||_1
    double spectral_gap = 0.0;  // |lambda_2| estimate of the generator

    int dim() const { return static_cast<int>(rho.rows()); }
};

/// Frame rotating at omega_p (alpha = 0). Throws kDomain for N < 2.
Liouvillian build_liouvillian(const ResonatorParams &res, const DriveParams &drive, int truncation);

/// Frame displaced by alpha, full nonlinear Hamiltonian.
Liouvillian build_displaced_liouvillian(const ResonatorParams &res, const DriveParams &drive,
                                        Complex alpha, int truncation);

struct SteadyStateOptions {
    double residual_tol = 1e-10;  // relative to ||L||_1
    double ambiguity_tol = 1e-9;  // |lambda_2| below this times ||L||_1 is degenerate
    int max_iterations = 40;
    bool check_ambiguity = true;
};

/// Null vector of the generator by shifted inverse iteration from the
/// vacuum projector. A deflated second iteration estimates the next eigenvalue;
/// a numerically degenerate null space throws kAmbiguity.
DensityMatrix steady_state(const Liouvillian &L, const SteadyStateOptions &options = {});

double hermiticity_error(const DensityMatrix &rho);
double min_eigenvalue(const DensityMatrix &rho);
/// Population of the top `levels` resonator Fock states (summed over the qubit).
double top_population(const DensityMatrix &rho, int levels = 3);
/// <a> of the resonator fluctuation operator in the frame of rho.
Complex mean_annihilation(const DensityMatrix &rho);

struct DisplacedSteadyState {
    DensityMatrix rho;
    Liouvillian liouvillian;
};

/// Steady state in the frame displaced by a stable steady state alpha. The
/// truncation starts at N and grows by 25% until the top three Fock levels
/// hold less than top_tol; beyond max_dim throws kTruncation.
DisplacedSteadyState displaced_frame_steady_state(const ResonatorParams &res,
                                                  const DriveParams &drive, Complex alpha,
                                                  int truncation, int max_dim = 64,
                                                  double top_tol = 1e-6,
                                                  const SteadyStateOptions &options = {});

/// <a~+ a~> with a~ = mu a + nu a+, the fluctuation a of rho's displaced frame.
/// Throws kContract when rho is not displaced by mode.alpha.
double dressed_occupation(const DensityMatrix &rho, const LinearizedMode &mode);

/// kEmission: <da+(0) da(tau)>, the radiated (normally ordered) spectrum.
/// kAbsorption: <da(tau) da+(0)>, nonzero even for a coherent state.
enum class CorrelationOrdering { kEmission, kAbsorption };

/// S(dw) = 2 Re int_0^inf exp(i dw tau) C(tau) dtau with da = a - <a>, one
/// resolvent solve per frequency (frequencies relative to omega_p, so the
/// linear cavity peaks at +Delta_p). Throws kSolver with the offending
/// frequency when the resolvent is singular.
SpectrumTrace emission_spectrum(const Liouvillian &L, const DensityMatrix &rho,
                                std::span<const double> delta_omega,
                                CorrelationOrdering ordering = CorrelationOrdering::kEmission,
                                Exec exec = Exec::kParallel);

struct SpectroscopyDrive {
    double omega_q = 0.0;    // spectroscopy tone, sets the qubit frame
    double epsilon_s = 0.0;  // direct qubit drive amplitude
};

struct SidebandOracleOptions {
    int truncation = 20;
    int harmonics = 6;           // Fourier orders of the periodic warm start
    int steps_per_period = 64;   // RK4 steps
    double tol = 1e-5;           // successive period averages of p_e
    int max_periods = 4000;
};

struct SidebandOracleResult {
    double p_e = 0.0;               // period-averaged excited population
    int periods = 0;                // RK4 periods integrated
    double warm_start_p_e = 0.0;    // time average of the Fourier solution
};

/// Two-level qubit coupled by g0 (a_bar+ s- + a_bar s+) to the resonator,
/// displaced around the stable steady state on `branch`. Cavity frame at
/// omega_p, qubit frame at omega_q, so the coupling oscillates at
/// omega_q - omega_p. The periodic state is seeded by a truncated Fourier
/// (harmonic balance) solve and then integrated with RK4 until successive
/// period averages agree; throws kConvergence past max_periods.
SidebandOracleResult qubit_resonator_sideband_oracle(const ResonatorParams &res,
                                                     const DriveParams &drive,
                                                     const QubitParams &qubit,
                                                     const SpectroscopyDrive &spec,
                                                     Branch branch,
                                                     const SidebandOracleOptions &options = {});

}  // namespace knr
