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


#include "knr/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "knr/error.hpp"

namespace knr {

namespace {
constexpr std::string_view kModule = "lindblad";
constexpr Complex kI{0.0, 1.0};

using Triplet = Eigen::Triplet<Complex>;
using SparseLU = Eigen::SparseLU<SparseC, Eigen::COLAMDOrdering<int>>;

SparseC kron(const SparseC &a, const SparseC &b) {
    SparseC out = Eigen::kroneckerProduct(a, b);
    out.makeCompressed();
    return out;
}

double one_norm(const SparseC &m) {
    double best = 0.0;
    for (int col = 0; col < m.outerSize(); ++col) {
        double sum = 0.0;
        for (SparseC::InnerIterator it(m, col); it; ++it) sum += std::abs(it.value());
        best = std::max(best, sum);
    }
    return best;
}

Complex trace_of_vector(const CVector &v, int dim) {
    Complex t{0.0, 0.0};
    for (int i = 0; i < dim; ++i) t += v[static_cast<Eigen::Index>(i) * (dim + 1)];
    return t;
}

// Tr(rho op) = sum_ij rho_ij op_ji
Complex expect(const CMatrix &rho, const SparseC &op) {
    Complex sum{0.0, 0.0};
    for (int col = 0; col < op.outerSize(); ++col) {
        for (SparseC::InnerIterator it(op, col); it; ++it) {
            sum += it.value() * rho(it.col(), it.row());
        }
    }
    return sum;
}

double binomial(int m, int k) {
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * (m - k + i) / i;
    return out;
}

SparseC displaced_hamiltonian(const ResonatorParams &res, const DriveParams &drive, Complex alpha,
                              int n) {
    const double detuning = pump_detuning(res, drive.omega_p);
    SparseC h = detuning * fock::displaced_number_power(n, alpha, 1);
    if (res.kerr != 0.0) h += (0.5 * res.kerr) * fock::displaced_number_power(n, alpha, 2);
    if (res.kerr2 != 0.0) h += (res.kerr2 / 3.0) * fock::displaced_number_power(n, alpha, 3);
    if (drive.epsilon_p != 0.0) {
        const SparseC a_bar = fock::annihilation(n) + alpha * fock::identity(n);
        const SparseC a_bar_dag = a_bar.adjoint();
        h += (kI * drive.epsilon_p) * (a_bar_dag - a_bar);
    }
    h.makeCompressed();
    return h;
}

void check_truncation(int n) {
    if (n < 2) throw Error(ErrorCode::kDomain, kModule, "truncation must be at least 2");
}

void factorize(SparseLU &lu, const SparseC &m) {
    lu.analyzePattern(m);
    lu.factorize(m);
}

}  // namespace

namespace fock {

SparseC identity(int dim) {
    SparseC id(dim, dim);
    id.setIdentity();
    return id;
}

SparseC annihilation(int n) {
    std::vector<Triplet> t;
    for (int k = 1; k < n; ++k) t.emplace_back(k - 1, k, std::sqrt(static_cast<double>(k)));
    SparseC a(n, n);
    a.setFromTriplets(t.begin(), t.end());
    return a;
}

SparseC power(const SparseC &op, int k) {
    SparseC out = identity(static_cast<int>(op.rows()));
    for (int i = 0; i < k; ++i) out = (out * op).pruned();
    return out;
}

SparseC displaced_number_power(int n, Complex alpha, int m) {
    const SparseC a = annihilation(n);
    const SparseC a_dag = a.adjoint();
    std::vector<SparseC> a_pow, a_dag_pow;
    for (int k = 0; k <= m; ++k) {
        a_pow.push_back(power(a, k));
        a_dag_pow.push_back(power(a_dag, k));
    }
    SparseC out(n, n);
    for (int j = 0; j <= m; ++j) {
        for (int k = 0; k <= m; ++k) {
            const Complex coeff = binomial(m, j) * binomial(m, k) *
                                  std::pow(std::conj(alpha), m - j) * std::pow(alpha, m - k);
            if (coeff == Complex{0.0, 0.0}) continue;
            out += coeff * SparseC(a_dag_pow[j] * a_pow[k]);
        }
    }
    out.makeCompressed();
    return out;
}

}  // namespace fock

namespace superop {

SparseC hamiltonian(const SparseC &h) {
    const SparseC id = fock::identity(static_cast<int>(h.rows()));
    const SparseC ht = h.transpose();
    return (-kI) * (kron(id, h) - kron(ht, id));
}

SparseC dissipator(const SparseC &c, double rate) {
    const int d = static_cast<int>(c.rows());
    if (rate == 0.0) return SparseC(d * d, d * d);
    const SparseC id = fock::identity(d);
    const SparseC cdc = c.adjoint() * c;
    const SparseC cdc_t = cdc.transpose();
    const SparseC c_conj = c.conjugate();
    return rate * (kron(c_conj, c) - 0.5 * kron(id, cdc) - 0.5 * kron(cdc_t, id));
}

CVector vectorize(const CMatrix &rho) {
    return Eigen::Map<const CVector>(rho.data(), rho.size());
}

CMatrix unvectorize(const CVector &v, int dim) {
    return Eigen::Map<const CMatrix>(v.data(), dim, dim);
}

}  // namespace superop

Liouvillian build_displaced_liouvillian(const ResonatorParams &res, const DriveParams &drive,
                                        Complex alpha, int truncation) {
    res.validate();
    drive.validate();
    check_truncation(truncation);
    const SparseC h = displaced_hamiltonian(res, drive, alpha, truncation);
    const SparseC a_bar = fock::annihilation(truncation) + alpha * fock::identity(truncation);
    Liouvillian L;
    L.generator = superop::hamiltonian(h) + superop::dissipator(a_bar, res.kappa);
    L.generator.makeCompressed();
    L.frame = alpha == Complex{0.0, 0.0} ? Frame::kRotating : Frame::kDisplaced;
    L.displacement = alpha;
    L.truncation = truncation;
    return L;
}

Liouvillian build_liouvillian(const ResonatorParams &res, const DriveParams &drive,
                              int truncation) {
    return build_displaced_liouvillian(res, drive, Complex{0.0, 0.0}, truncation);
}

DensityMatrix steady_state(const Liouvillian &L, const SteadyStateOptions &options) {
    const SparseC &g = L.generator;
    const int d = L.hilbert_dim();
    const Eigen::Index m = g.rows();
    if (m != static_cast<Eigen::Index>(d) * d || g.cols() != m) {
        throw Error(ErrorCode::kContract, kModule, "generator size does not match its metadata");
    }
    const double norm = one_norm(g);
    if (!(norm > 0.0)) throw Error(ErrorCode::kSolver, kModule, "generator is identically zero");

    const double shift = 1e-8 * norm;
    SparseC shifted = g;
    for (Eigen::Index i = 0; i < m; ++i) shifted.coeffRef(i, i) += shift;
    shifted.makeCompressed();
    SparseLU lu;
    factorize(lu, shifted);
    if (lu.info() != Eigen::Success) {
        throw Error(ErrorCode::kSolver, kModule, "LU factorization of the shifted generator failed");
    }

    CVector x = CVector::Zero(m);
    x[0] = 1.0;  // vacuum projector |0><0| (ground qubit state)
    double residual = 0.0;
    int iteration = 0;
    for (; iteration < options.max_iterations; ++iteration) {
        x = lu.solve(x);
        x /= trace_of_vector(x, d);
        residual = (g * x).lpNorm<1>() / norm;
        if (residual < options.residual_tol) break;
    }
    if (!(residual < options.residual_tol)) {
        std::ostringstream msg;
        msg << "inverse iteration stalled at relative residual " << residual;
        throw Error(ErrorCode::kConvergence, kModule, msg.str());
    }

    DensityMatrix out;
    CMatrix rho = superop::unvectorize(x, d);
    out.rho = 0.5 * (rho + rho.adjoint());
    out.frame = L.frame;
    out.displacement = L.displacement;
    out.truncation = L.truncation;
    out.qubit_levels = L.qubit_levels;
    out.residual = (g * superop::vectorize(out.rho)).lpNorm<1>() / norm;

    if (options.check_ambiguity && m > 1) {
        // Power iteration on the inverse restricted to traceless vectors. The
        // oblique projector y -> y - x tr(y) removes the stationary mode exactly.
        CVector y(m);
        y.setZero();
        for (int i = 0; i < d; ++i) y[static_cast<Eigen::Index>(i) * (d + 1)] = i - 0.5 * (d - 1);
        auto project = [&](CVector &v) { v -= x * trace_of_vector(v, d); };
        project(y);
        double lambda2 = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 12 && y.norm() > 0.0; ++k) {
            y /= y.norm();
            CVector z = lu.solve(y);
            project(z);
            const Complex mu = y.dot(z);  // y^H z with |y| = 1
            if (std::abs(mu) > 0.0) lambda2 = std::abs(1.0 / mu - shift);
            y = z;
        }
        out.spectral_gap = lambda2;
        if (lambda2 < options.ambiguity_tol * norm) {
            std::ostringstream msg;
            msg << "null space is numerically degenerate: second eigenvalue ~" << lambda2
                << " vs ||L|| = " << norm
                << " (bistable mixture; use the displaced frame around one branch)";
            throw Error(ErrorCode::kAmbiguity, kModule, msg.str());
        }
    }
    return out;
}

double hermiticity_error(const DensityMatrix &rho) {
    return (rho.rho - rho.rho.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const DensityMatrix &rho) {
    const CMatrix h = 0.5 * (rho.rho + rho.rho.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double top_population(const DensityMatrix &rho, int levels) {
    double sum = 0.0;
    const int n = rho.truncation;
    for (int q = 0; q < rho.qubit_levels; ++q) {
        for (int k = std::max(0, n - levels); k < n; ++k) {
            sum += std::real(rho.rho(q * n + k, q * n + k));
        }
    }
    return sum;
}

Complex mean_annihilation(const DensityMatrix &rho) {
    const SparseC a = kron(fock::identity(rho.qubit_levels), fock::annihilation(rho.truncation));
    return expect(rho.rho, a);
}

DisplacedSteadyState displaced_frame_steady_state(const ResonatorParams &res,
                                                  const DriveParams &drive, Complex alpha,
                                                  int truncation, int max_dim, double top_tol,
                                                  const SteadyStateOptions &options) {
    if (!classify_stability(res, drive, alpha)) {
        throw Error(ErrorCode::kContract, kModule, "displacement is an unstable steady state");
    }
    check_truncation(truncation);
    int n = truncation;
    double top = 0.0;
    while (n <= max_dim) {
        DisplacedSteadyState out;
        out.liouvillian = build_displaced_liouvillian(res, drive, alpha, n);
        out.rho = steady_state(out.liouvillian, options);
        top = top_population(out.rho, 3);
        if (top < top_tol) return out;
        n = std::max(n + 1, static_cast<int>(std::ceil(1.25 * n)));
    }
    std::ostringstream msg;
    msg << "top Fock populations still " << top << " at the truncation cap " << max_dim;
    throw Error(ErrorCode::kTruncation, kModule, msg.str());
}

double dressed_occupation(const DensityMatrix &rho, const LinearizedMode &mode) {
    const double scale = std::max(1.0, std::abs(mode.alpha));
    if (rho.qubit_levels != 1 || std::abs(rho.displacement - mode.alpha) > 1e-9 * scale) {
        throw Error(ErrorCode::kContract, kModule,
                    "density matrix is not in the frame displaced by the mode's amplitude");
    }
    const int n = rho.truncation;
    const SparseC a = fock::annihilation(n);
    const SparseC a_dag = a.adjoint();
    const double number = std::real(expect(rho.rho, SparseC(a_dag * a)));
    const Complex a_dag2 = expect(rho.rho, SparseC(a_dag * a_dag));
    const Complex a2 = expect(rho.rho, SparseC(a * a));
    const double mu = mode.mu;
    const Complex nu = mode.nu;
    const Complex cross = mu * nu * a_dag2 + mu * std::conj(nu) * a2;
    return mu * mu * number + std::norm(nu) * (number + 1.0) + std::real(cross);
}

SpectrumTrace emission_spectrum(const Liouvillian &L, const DensityMatrix &rho,
                                std::span<const double> delta_omega,
                                CorrelationOrdering ordering, Exec exec) {
    const int d = L.hilbert_dim();
    const Eigen::Index m = L.generator.rows();
    if (rho.dim() != d) throw Error(ErrorCode::kContract, kModule, "density matrix size mismatch");
    if (delta_omega.empty()) throw Error(ErrorCode::kDomain, kModule, "empty frequency grid");
    const double norm = one_norm(L.generator);
    const CVector rho_vec = superop::vectorize(rho.rho);
    const double stationarity = (L.generator * rho_vec).lpNorm<1>() / norm;
    if (!(stationarity < 1e-8)) {
        std::ostringstream msg;
        msg << "density matrix is not stationary (relative residual " << stationarity << ")";
        throw Error(ErrorCode::kContract, kModule, msg.str());
    }

    const SparseC a = kron(fock::identity(L.qubit_levels), fock::annihilation(L.truncation));
    const CMatrix da = CMatrix(a) - expect(rho.rho, a) * CMatrix::Identity(d, d);
    const CMatrix source = ordering == CorrelationOrdering::kEmission ? CMatrix(rho.rho * da.adjoint())
                                                                      : CMatrix(da.adjoint() * rho.rho);
    const CVector b = superop::vectorize(source);

    // Move the stationary eigenvalue from 0 to -c with the rank-one term
    // -c vec(rho) tr(.). The source is traceless, so solutions are unchanged
    // and dw = 0 is regular.
    double diag_scale = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) diag_scale += std::abs(L.generator.coeff(i, i));
    const double c = std::max(diag_scale / static_cast<double>(m), 1e-300);
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(L.generator.nonZeros()) + static_cast<std::size_t>(m) * d);
    for (int col = 0; col < L.generator.outerSize(); ++col) {
        for (SparseC::InnerIterator it(L.generator, col); it; ++it) {
            t.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
        }
    }
    for (int k = 0; k < d; ++k) {
        const int col = k * (d + 1);
        for (Eigen::Index r = 0; r < m; ++r) {
            if (rho_vec[r] != Complex{0.0, 0.0}) t.emplace_back(static_cast<int>(r), col, -c * rho_vec[r]);
        }
    }
    SparseC deflated(m, m);
    deflated.setFromTriplets(t.begin(), t.end());
    deflated.makeCompressed();

    SpectrumTrace trace;
    trace.x.assign(delta_omega.begin(), delta_omega.end());
    trace.y.assign(delta_omega.size(), 0.0);
    trace.x_label = "delta_omega";
    trace.y_label = "s_value";
    trace.meta = {{"truncation", std::to_string(L.truncation)},
                  {"frame", L.frame == Frame::kDisplaced ? "displaced" : "rotating"},
                  {"ordering", ordering == CorrelationOrdering::kEmission ? "emission" : "absorption"}};

    for_each_index(exec, delta_omega.size(), [&](std::size_t i) {
        const double w = delta_omega[i];
        SparseC resolvent = deflated;
        for (Eigen::Index r = 0; r < m; ++r) resolvent.coeffRef(r, r) += kI * w;
        SparseLU lu;
        factorize(lu, resolvent);
        bool ok = lu.info() == Eigen::Success;
        CVector x;
        if (ok) {
            x = lu.solve(b);
            ok = lu.info() == Eigen::Success && x.allFinite();
        }
        if (!ok) {
            std::ostringstream msg;
            msg << "singular resolvent at delta_omega = " << w << " rad/s";
            throw Error(ErrorCode::kSolver, kModule, msg.str());
        }
        const CMatrix xm = superop::unvectorize(x, d);
        trace.y[i] = 2.0 * std::real(-(da.cwiseProduct(xm.transpose())).sum());
    });
    return trace;
}

SidebandOracleResult qubit_resonator_sideband_oracle(const ResonatorParams &res,
                                                     const DriveParams &drive,
                                                     const QubitParams &qubit,
                                                     const SpectroscopyDrive &spec,
                                                     Branch branch,
                                                     const SidebandOracleOptions &options) {
    res.validate();
    drive.validate();
    qubit.validate();
    check_truncation(options.truncation);
    if (options.harmonics < 0 || options.steps_per_period < 4 || !(options.tol > 0.0)) {
        throw Error(ErrorCode::kDomain, kModule, "invalid sideband oracle options");
    }
    const auto solutions = solve_steady_states(res, drive);
    const auto picked = find_branch(solutions, branch);
    if (!picked) {
        std::ostringstream msg;
        msg << "branch " << branch_name(branch) << " does not exist at this drive";
        throw Error(ErrorCode::kDomain, kModule, msg.str());
    }
    const Complex alpha = picked->alpha;
    const int n = options.truncation;
    const int d = 2 * n;
    const Eigen::Index m = static_cast<Eigen::Index>(d) * d;

    // qubit basis |g> = 0, |e> = 1; qubit is the outer tensor factor
    SparseC sm(2, 2), sp(2, 2), sz(2, 2);
    sm.insert(0, 1) = 1.0;
    sp.insert(1, 0) = 1.0;
    sz.insert(1, 1) = 1.0;
    sz.insert(0, 0) = -1.0;
    const SparseC iq = fock::identity(2);
    const SparseC ic = fock::identity(n);
    const SparseC a_bar = fock::annihilation(n) + alpha * ic;
    const SparseC a_bar_dag = a_bar.adjoint();

    const SparseC hc = displaced_hamiltonian(res, drive, alpha, n);
    const SparseC spsm = sp * sm;
    const SparseC sx = sp + sm;
    SparseC h0 = kron(iq, hc) + (qubit.omega_ge - spec.omega_q) * kron(spsm, ic) +
                 spec.epsilon_s * kron(sx, ic);
    const SparseC hp = qubit.g0 * kron(sp, a_bar);
    const SparseC hm = qubit.g0 * kron(sm, a_bar_dag);

    SparseC l0 = superop::hamiltonian(h0) + superop::dissipator(kron(iq, a_bar), res.kappa) +
                 superop::dissipator(kron(sm, ic), qubit.gamma_down_extra) +
                 superop::dissipator(kron(sp, ic), qubit.gamma_up_extra) +
                 superop::dissipator(kron(sz, ic), 0.5 * qubit.gamma_phi);
    const SparseC lp = superop::hamiltonian(hp);
    const SparseC lm = superop::hamiltonian(hm);
    l0.makeCompressed();

    const double w = spec.omega_q - drive.omega_p;
    auto excited = [&](const CVector &v) {
        double p = 0.0;
        for (int k = 0; k < n; ++k) p += std::real(v[static_cast<Eigen::Index>(n + k) * (d + 1)]);
        return p;
    };

    SidebandOracleResult result;
    if (w == 0.0) {
        Liouvillian L;
        L.generator = l0 + lp + lm;
        L.truncation = n;
        L.qubit_levels = 2;
        L.frame = Frame::kDisplaced;
        L.displacement = alpha;
        const auto rho = steady_state(L);
        result.p_e = excited(superop::vectorize(rho.rho));
        result.warm_start_p_e = result.p_e;
        return result;
    }

    // Fourier blocks k = -M..M of rho(t) = sum_k rho_k exp(i k w t):
    //   (L0 - i k w) rho_k + Lp rho_{k-1} + Lm rho_{k+1} = 0.
    // The first row of block 0 is replaced by tr(rho_0) = 1.
    const int harmonics = options.harmonics;
    const int blocks = 2 * harmonics + 1;
    const Eigen::Index total = m * blocks;
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>((l0.nonZeros() + lp.nonZeros() + lm.nonZeros()) * blocks + m));
    const Eigen::Index trace_row = m * harmonics;
    auto add_block = [&](const SparseC &op, int row_block, int col_block, Complex diag) {
        const Eigen::Index r0 = m * row_block, c0 = m * col_block;
        for (int col = 0; col < op.outerSize(); ++col) {
            for (SparseC::InnerIterator it(op, col); it; ++it) {
                if (r0 + it.row() == trace_row) continue;
                t.emplace_back(static_cast<int>(r0 + it.row()), static_cast<int>(c0 + it.col()), it.value());
            }
        }
        if (diag != Complex{0.0, 0.0}) {
            for (Eigen::Index i = 0; i < m; ++i) {
                if (r0 + i == trace_row) continue;
                t.emplace_back(static_cast<int>(r0 + i), static_cast<int>(c0 + i), diag);
            }
        }
    };
    for (int b = 0; b < blocks; ++b) {
        const int k = b - harmonics;
        add_block(l0, b, b, -kI * (static_cast<double>(k) * w));
        if (b > 0) add_block(lp, b, b - 1, 0.0);
        if (b + 1 < blocks) add_block(lm, b, b + 1, 0.0);
    }
    for (int i = 0; i < d; ++i) {
        t.emplace_back(static_cast<int>(trace_row), static_cast<int>(trace_row + static_cast<Eigen::Index>(i) * (d + 1)),
                       Complex{1.0, 0.0});
    }
    SparseC system(total, total);
    system.setFromTriplets(t.begin(), t.end());
    system.makeCompressed();
    CVector rhs = CVector::Zero(total);
    rhs[trace_row] = 1.0;
    SparseLU lu;
    factorize(lu, system);
    if (lu.info() != Eigen::Success) {
        throw Error(ErrorCode::kSolver, kModule, "Fourier steady-state system is singular");
    }
    const CVector fourier = lu.solve(rhs);
    result.warm_start_p_e = excited(fourier.segment(trace_row, m));

    CVector x = CVector::Zero(m);
    for (int b = 0; b < blocks; ++b) x += fourier.segment(m * b, m);

    const double period = kTwoPi / std::abs(w);
    const int steps = options.steps_per_period;
    const double dt = period / steps;
    auto rhs_at = [&](double time, const CVector &v) -> CVector {
        const Complex phase = std::polar(1.0, w * time);
        CVector out = l0 * v;
        out += phase * (lp * v);
        out += std::conj(phase) * (lm * v);
        return out;
    };
    double previous = std::numeric_limits<double>::quiet_NaN();
    for (int p = 0; p < options.max_periods; ++p) {
        double acc = 0.0;
        for (int s = 0; s < steps; ++s) {
            // time restarts each period: the generator is periodic
            const double time = s * dt;
            const CVector k1 = rhs_at(time, x);
            const CVector k2 = rhs_at(time + 0.5 * dt, x + (0.5 * dt) * k1);
            const CVector k3 = rhs_at(time + 0.5 * dt, x + (0.5 * dt) * k2);
            const CVector k4 = rhs_at(time + dt, x + dt * k3);
            x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            acc += excited(x);
        }
        const double average = acc / steps;
        result.periods = p + 1;
        if (std::abs(average - previous) < options.tol) {
            result.p_e = average;
            return result;
        }
        previous = average;
    }
    std::ostringstream msg;
    msg << "period averages of p_e did not settle within " << options.max_periods << " periods";
    throw Error(ErrorCode::kConvergence, kModule, msg.str());
}

}  // namespace knr
