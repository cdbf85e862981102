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
#include <cstdint>
#include <span>
#include <vector>

#include "qjump/core/complex_matrix.h"
#include "qjump/core/gates.h"
#include "qjump/core/random.h"

namespace qjump {

/// Tolerance used for "rounding error only" norm checks.
inline constexpr double kNormTolerance = 1e-9;

/// Dense pure state of n qubits. Qubit 0 is the least significant bit of the
/// basis index.
class StateVector {
   public:
    StateVector() = default;
    /// |0...0> on num_qubits qubits.
    explicit StateVector(size_t num_qubits);
    /// Takes ownership of amplitudes; length must be a power of two.
    explicit StateVector(std::vector<Complex> amplitudes);

    static StateVector basis(size_t num_qubits, uint64_t index);

    size_t num_qubits() const { return num_qubits_; }
    size_t dim() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    std::span<Complex> amplitudes() { return amplitudes_; }
    const Complex &operator[](size_t k) const { return amplitudes_[k]; }
    Complex &operator[](size_t k) { return amplitudes_[k]; }

    double norm_squared() const;
    /// Rescales to unit norm; throws std::domain_error if the norm is ~0.
    void normalize();

    /// In-place gate application, see apply_gate().
    void apply(const GateDef &gate, std::span<const size_t> targets);
    /// Applies an arbitrary full-register operator (dim x dim).
    void apply_full(const ComplexMatrix &op);

    bool operator==(const StateVector &other) const = default;

   private:
    size_t num_qubits_ = 0;
    std::vector<Complex> amplitudes_;
};

/// Returns gate applied to targets (targets[b] <-> local bit b of the gate).
/// Throws std::invalid_argument on arity mismatch or repeated targets and
/// std::out_of_range when a target is not a qubit of state.
StateVector apply_gate(StateVector state, const GateDef &gate, std::span<const size_t> targets);
inline StateVector apply_gate(StateVector state, const GateDef &gate, std::initializer_list<size_t> targets) {
    return apply_gate(std::move(state), gate, std::span<const size_t>(targets.begin(), targets.size()));
}

std::vector<double> probabilities(const StateVector &state);

/// Distribution of the sub-register `qubits`; outcome bit b is qubits[b].
std::vector<double> marginal_probabilities(const StateVector &state, std::span<const size_t> qubits);

/// Index of the most likely outcome; ties resolve to the smallest index.
size_t argmax(std::span<const double> distribution);

/// Draws a basis index with probability |amplitude|^2.
uint64_t sample_outcome(const StateVector &state, RandomStream &rng);

Complex inner_product(const StateVector &a, const StateVector &b);

/// |<a|b>|^2.
double fidelity(const StateVector &a, const StateVector &b);

/// <psi|op|psi>.
Complex expectation(const StateVector &state, const ComplexMatrix &op);

}  // namespace qjump
