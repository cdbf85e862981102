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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qjump/core/complex_matrix.h"

namespace qjump {

/// A gate: label, arity and its 2^k x 2^k unitary.
///
/// Local basis index convention: bit b of the index is the state of
/// targets[b], so targets[0] is the least significant bit. For "CX" the
/// targets are (control, target).
///
/// Diagonal gates keep only their diagonal (multi-controlled Z on 11 qubits
/// would otherwise carry a 2048 x 2048 matrix). Pseudo gates (barrier,
/// measure) have no matrix at all and are skipped by the simulator.
class GateDef {
   public:
    static GateDef dense(std::string label, size_t arity, ComplexMatrix matrix,
                         std::optional<double> parameter = std::nullopt);
    static GateDef diagonal(std::string label, size_t arity, std::vector<Complex> diag,
                            std::optional<double> parameter = std::nullopt);
    static GateDef pseudo(std::string label, size_t arity);

    const std::string &label() const { return label_; }
    size_t arity() const { return arity_; }
    const std::optional<double> &parameter() const { return parameter_; }

    bool is_pseudo() const { return pseudo_; }
    bool is_diagonal() const { return !diagonal_.empty(); }
    const std::vector<Complex> &diagonal_entries() const { return diagonal_; }

    /// The full unitary; materialized from the diagonal when needed.
    ComplexMatrix matrix() const;
    /// Dense entries when stored densely (empty for diagonal/pseudo gates).
    const ComplexMatrix &dense_matrix() const { return matrix_; }

    GateDef adjoint() const;

   private:
    std::string label_;
    size_t arity_ = 0;
    std::optional<double> parameter_;
    ComplexMatrix matrix_;
    std::vector<Complex> diagonal_;
    bool pseudo_ = false;
};

namespace gates {

GateDef identity();
GateDef x();
GateDef y();
GateDef z();
GateDef h();
GateDef s();
GateDef rx(double theta);
GateDef ry(double theta);
/// diag(e^{-i theta/2}, e^{+i theta/2}).
GateDef rz(double theta);
/// diag(1, e^{i lambda}).
GateDef phase(double lambda);
GateDef cx();
GateDef cz();
/// Controlled phase: diag(1, 1, 1, e^{i lambda}).
GateDef cp(double lambda);
GateDef swap();
/// Z on |1...1> of k qubits, -1 on the last diagonal entry only.
GateDef mcz(size_t k);
/// Tensor product matrix of a Pauli string; character b acts on local bit b.
ComplexMatrix pauli_string_matrix(std::string_view pauli);
/// exp(-i theta/2 P) for a Pauli string P over {I,X,Y,Z}; character b acts on targets[b].
GateDef pauli_rotation(std::string_view pauli, double theta);
GateDef barrier(size_t k);

/// Rebuilds a gate from its label, parameter and arity, as written by the circuit dump.
GateDef from_label(std::string_view label, std::optional<double> parameter, size_t arity);

}  // namespace gates

}  // namespace qjump
