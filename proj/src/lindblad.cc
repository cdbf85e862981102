// Copyright 2026 The qjump Authors
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

#include "qjump/lindblad/lindblad.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace qjump {

namespace {

double hermitian_defect(const ComplexMatrix &m) {
    double worst = 0;
    for (size_t r = 0; r < m.rows(); ++r) {
        for (size_t c = r; c < m.cols(); ++c) {
            worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
        }
    }
    return worst;
}

ComplexMatrix hermitize(const ComplexMatrix &m) {
    ComplexMatrix out = m + m.adjoint();
    out *= 0.5;
    return out;
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix entries) : m_(std::move(entries)) {
    if (!m_.is_square() || m_.rows() == 0) {
        throw std::invalid_argument("density matrix must be square and non-empty");
    }
    if (const double d = hermitian_defect(m_); d > kDensityHermitianTolerance) {
        throw std::invalid_argument(fmt::format("density matrix not Hermitian (defect {:.3g})", d));
    }
    if (const Complex tr = m_.trace(); std::abs(tr - 1.0) > kDensityTraceTolerance) {
        throw std::invalid_argument(fmt::format("density matrix trace {:.12g} != 1", tr.real()));
    }
    const auto ev = hermitian_eigenvalues(hermitize(m_));
    if (ev.front() < kDensityEigenvalueFloor) {
        throw std::invalid_argument(fmt::format("density matrix has eigenvalue {:.3g}", ev.front()));
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector &psi) {
    if (std::abs(psi.norm_squared() - 1) > kNormTolerance) {
        throw std::invalid_argument("from_pure: state is not normalized");
    }
    return DensityMatrix(ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()));
}

DensityMatrix DensityMatrix::mixture(const std::vector<StateVector> &states, const std::vector<double> &weights) {
    if (states.empty() || states.size() != weights.size()) {
        throw std::invalid_argument("mixture: need one weight per state");
    }
    const size_t dim = states.front().dim();
    ComplexMatrix acc(dim, dim);
    for (size_t i = 0; i < states.size(); ++i) {
        if (states[i].dim() != dim || weights[i] < 0) {
            throw std::invalid_argument("mixture: bad state dimension or negative weight");
        }
        acc += ComplexMatrix::outer(states[i].amplitudes(), states[i].amplitudes()) * weights[i];
    }
    return DensityMatrix(std::move(acc));
}

double DensityMatrix::purity() const {
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    double s = 0;
    for (const auto &e : m_.entries()) {
        s += std::norm(e);
    }
    return s;
}

std::vector<double> DensityMatrix::populations() const {
    std::vector<double> out(dim());
    for (size_t i = 0; i < dim(); ++i) {
        out[i] = m_(i, i).real();
    }
    return out;
}

double DensityMatrix::expectation(const ComplexMatrix &op) const {
    if (op.rows() != dim() || op.cols() != dim()) {
        throw std::invalid_argument("expectation: operator dimension mismatch");
    }
    return (op * m_).trace().real();
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("trace_distance: dimension mismatch");
    }
    double s = 0;
    for (double ev : hermitian_eigenvalues(hermitize(a.matrix() - b.matrix()))) {
        s += std::abs(ev);
    }
    return 0.5 * s;
}

OpenSystem::OpenSystem(ComplexMatrix hamiltonian, std::vector<JumpChannel> channels)
    : h_(std::move(hamiltonian)), channels_(std::move(channels)) {
    if (!h_.is_square() || h_.rows() == 0) {
        throw std::invalid_argument("Hamiltonian must be square and non-empty");
    }
    if (!h_.is_hermitian(1e-10)) {
        throw std::invalid_argument("Hamiltonian is not Hermitian");
    }
    for (size_t k = 0; k < channels_.size(); ++k) {
        const auto &ch = channels_[k];
        if (ch.op.rows() != h_.rows() || ch.op.cols() != h_.cols()) {
            throw std::invalid_argument(fmt::format("jump operator {} has shape {}x{}, system dim {}", k,
                                                    ch.op.rows(), ch.op.cols(), h_.rows()));
        }
        if (!(ch.rate >= 0) || !std::isfinite(ch.rate)) {
            throw std::invalid_argument(fmt::format("jump rate {} must be finite and >= 0", k));
        }
    }
}

ComplexMatrix lindblad_rhs(const OpenSystem &sys, const ComplexMatrix &rho) {
    if (rho.rows() != sys.dim() || rho.cols() != sys.dim()) {
        throw std::invalid_argument(fmt::format("lindblad_rhs: rho is {}x{}, system dim {}", rho.rows(), rho.cols(),
                                                sys.dim()));
    }
    const Complex minus_i(0, -1);
    const auto &h = sys.hamiltonian();
    ComplexMatrix out = (h * rho - rho * h) * minus_i;
    for (const auto &ch : sys.channels()) {
        if (ch.rate == 0) {
            continue;
        }
        const ComplexMatrix jd = ch.op.adjoint();
        const ComplexMatrix jdj = jd * ch.op;
        ComplexMatrix d = ch.op * rho * jd;
        d -= (jdj * rho + rho * jdj) * 0.5;
        out += d * ch.rate;
    }
    return out;
}

namespace {

ComplexMatrix rk4_step(const OpenSystem &sys, const ComplexMatrix &rho, double h) {
    const ComplexMatrix k1 = lindblad_rhs(sys, rho);
    const ComplexMatrix k2 = lindblad_rhs(sys, rho + k1 * (h / 2));
    const ComplexMatrix k3 = lindblad_rhs(sys, rho + k2 * (h / 2));
    const ComplexMatrix k4 = lindblad_rhs(sys, rho + k3 * h);
    return rho + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6);
}

template <class OnStep>
ComplexMatrix integrate(const OpenSystem &sys, const DensityMatrix &rho0, double t_final, double dt,
                        OnStep &&on_step) {
    if (!(dt > 0) || !std::isfinite(dt)) {
        throw std::invalid_argument("evolve: dt must be positive");
    }
    if (!(t_final >= 0) || !std::isfinite(t_final)) {
        throw std::invalid_argument("evolve: t_final must be >= 0");
    }
    if (rho0.dim() != sys.dim()) {
        throw std::invalid_argument("evolve: rho0 dimension does not match the system");
    }
    // Step count with slack so that t_final = k * dt is not split into a
    // spurious tiny extra step by rounding.
    const auto steps = static_cast<size_t>(std::ceil(t_final / dt - 1e-9));
    ComplexMatrix rho = rho0.matrix();
    for (size_t s = 0; s < steps; ++s) {
        const double h = (s + 1 == steps) ? t_final - static_cast<double>(s) * dt : dt;
        rho = rk4_step(sys, rho, h);
        const Complex tr = rho.trace();
        if (!(std::abs(tr - 1.0) <= kTraceDriftLimit)) {
            throw std::runtime_error(fmt::format("evolve: trace drifted to {:.12g}{:+.3g}i at step {} (t = {:.6g})",
                                                 tr.real(), tr.imag(), s + 1,
                                                 static_cast<double>(s) * dt + h));
        }
        rho = hermitize(rho);
        rho *= 1.0 / rho.trace().real();
        on_step(rho);
    }
    return rho;
}

}  // namespace

DensityMatrix evolve(const OpenSystem &sys, const DensityMatrix &rho0, double t_final, double dt) {
    return DensityMatrix(integrate(sys, rho0, t_final, dt, [](const ComplexMatrix &) {}));
}

std::vector<DensityMatrix> evolve_trace(const OpenSystem &sys, const DensityMatrix &rho0, double t_final,
                                        double dt) {
    std::vector<DensityMatrix> out;
    integrate(sys, rho0, t_final, dt, [&](const ComplexMatrix &rho) { out.emplace_back(rho); });
    return out;
}

namespace operators {

ComplexMatrix lowering() { return {{0, 1}, {0, 0}}; }
ComplexMatrix pauli_x() { return {{0, 1}, {1, 0}}; }
ComplexMatrix pauli_y() { return {{0, Complex(0, -1)}, {Complex(0, 1), 0}}; }
ComplexMatrix pauli_z() { return {{1, 0}, {0, -1}}; }

ComplexMatrix on_qubit(const ComplexMatrix &op, size_t qubit, size_t num_qubits) {
    if (op.rows() != 2 || op.cols() != 2 || qubit >= num_qubits) {
        throw std::invalid_argument("on_qubit: need a 2x2 operator and a qubit inside the register");
    }
    const size_t high = size_t{1} << (num_qubits - qubit - 1);
    const size_t low = size_t{1} << qubit;
    return kron(kron(ComplexMatrix::identity(high), op), ComplexMatrix::identity(low));
}

}  // namespace operators

}  // namespace qjump
