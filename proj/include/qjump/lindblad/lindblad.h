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

#pragma once

#include <cstddef>
#include <vector>

#include "qjump/core/complex_matrix.h"
#include "qjump/core/state_vector.h"

namespace qjump {

inline constexpr double kDensityHermitianTolerance = 1e-9;
inline constexpr double kDensityTraceTolerance = 1e-9;
inline constexpr double kDensityEigenvalueFloor = -1e-8;

/// A mixed state. Construction checks Hermiticity, unit trace and
/// positivity with the tolerances above and throws std::invalid_argument
/// otherwise.
class DensityMatrix {
   public:
    explicit DensityMatrix(ComplexMatrix entries);

    static DensityMatrix from_pure(const StateVector &psi);
    /// Uniform sum of |psi_i><psi_i| is built by ensemble_density(); this
    /// one takes explicit weights that must sum to 1.
    static DensityMatrix mixture(const std::vector<StateVector> &states, const std::vector<double> &weights);

    size_t dim() const { return m_.rows(); }
    const ComplexMatrix &matrix() const { return m_; }
    Complex operator()(size_t r, size_t c) const { return m_(r, c); }

    double purity() const;
    /// <i|rho|i> for every basis state.
    std::vector<double> populations() const;
    double expectation(const ComplexMatrix &op) const;

   private:
    ComplexMatrix m_;
};

/// Half the trace norm of a - b.
double trace_distance(const DensityMatrix &a, const DensityMatrix &b);

struct JumpChannel {
    ComplexMatrix op;
    double rate = 0;
};

/// H_S plus jump channels (hbar = 1). Throws std::invalid_argument for a
/// non-Hermitian H_S, a negative rate or mismatched dimensions.
class OpenSystem {
   public:
    OpenSystem(ComplexMatrix hamiltonian, std::vector<JumpChannel> channels = {});

    size_t dim() const { return h_.rows(); }
    const ComplexMatrix &hamiltonian() const { return h_; }
    const std::vector<JumpChannel> &channels() const { return channels_; }

   private:
    ComplexMatrix h_;
    std::vector<JumpChannel> channels_;
};

/// -i[H, rho] + sum_k g_k (J rho J^dag - 1/2 {J^dag J, rho}).
ComplexMatrix lindblad_rhs(const OpenSystem &sys, const ComplexMatrix &rho);
inline ComplexMatrix lindblad_rhs(const OpenSystem &sys, const DensityMatrix &rho) {
    return lindblad_rhs(sys, rho.matrix());
}

inline constexpr double kTraceDriftLimit = 1e-6;

/// Fixed-step RK4 up to t_final. After every step the state is replaced by
/// (rho + rho^dag)/2 divided by its trace; a step whose trace moved by more
/// than kTraceDriftLimit throws std::runtime_error. The last step is
/// shortened so that the end time is hit exactly.
DensityMatrix evolve(const OpenSystem &sys, const DensityMatrix &rho0, double t_final, double dt);

/// Same integration, also returning the state after every full step.
std::vector<DensityMatrix> evolve_trace(const OpenSystem &sys, const DensityMatrix &rho0, double t_final,
                                        double dt);

namespace operators {

/// sigma^- = |0><1|.
ComplexMatrix lowering();
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
/// Embeds a single-qubit operator on `qubit` of an n-qubit register.
ComplexMatrix on_qubit(const ComplexMatrix &op, size_t qubit, size_t num_qubits);

}  // namespace operators

}  // namespace qjump
