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
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qjump/circuit/circuit_dag.h"
#include "qjump/core/state_vector.h"

namespace qjump {

enum class AlgorithmName { BernsteinVazirani, DeutschJozsa, Grover, Simon, QPE, EOH };

/// All six, in report order.
const std::vector<AlgorithmName> &all_algorithms();
/// Machine name used in CSV/JSON ("bernstein_vazirani", ..., "eoh").
std::string to_string(AlgorithmName name);
/// Table name ("BernsteinVazirani", ..., "EOH").
std::string display_name(AlgorithmName name);
/// Accepts the machine name, display name and short aliases (bv, dj).
AlgorithmName parse_algorithm(std::string_view text);

/// Verdict on one execution, judged on the exact final distribution (or
/// state) so that it is deterministic for a given faulty circuit.
struct SuccessPredicate {
    std::string rule;
    std::function<bool(const StateVector &final_state, const StateVector &ideal_state)> test;

    bool operator()(const StateVector &final_state, const StateVector &ideal_state) const {
        return test(final_state, ideal_state);
    }
};

struct AlgorithmInstance {
    AlgorithmName name;
    size_t num_qubits = 0;
    CircuitDag dag;
    /// Problem parameter in printable form, e.g. "s=101" or "theta=1/8".
    std::string secret;
    SuccessPredicate predicate;
};

/// Bit string with character 0 = highest qubit, the usual printed order.
std::string bitstring(uint64_t value, size_t width);

// -- Bernstein-Vazirani -------------------------------------------------------

/// n problem qubits (0..n-1) plus an ancilla (n) prepared in |->; the oracle
/// is one CX per set bit of s. Success: argmax over the problem register is s.
AlgorithmInstance build_bernstein_vazirani(size_t n, uint64_t s);
/// Node count of build_bernstein_vazirani(n, s): 1 + (n + 1) + popcount(s) + n.
size_t bernstein_vazirani_gate_count(size_t n, uint64_t s);

// -- Deutsch-Jozsa -------------------------------------------------------------

enum class OracleMode { Constant, Balanced };

/// Same register layout as Bernstein-Vazirani. The constant oracle is f = c
/// (an X on the ancilla when c = 1); the balanced one is f(x) = s.x ^ c with
/// s != 0. Both s and c come from `seed`. Success: the argmax outcome is
/// all-zeros iff the oracle is constant.
AlgorithmInstance build_deutsch_jozsa(size_t n, OracleMode mode, uint64_t seed);

// -- Grover ---------------------------------------------------------------------

/// round(pi/4 * sqrt(2^n)).
size_t grover_default_iterations(size_t n);
/// n search qubits, no ancilla: oracle = X-conjugated multi-controlled Z,
/// diffuser = H X MCZ X H. Success: argmax is `marked`.
AlgorithmInstance build_grover(size_t n, uint64_t marked, std::optional<size_t> iterations = std::nullopt);

// -- Simon ----------------------------------------------------------------------

/// n input qubits, `output_bits` (n or n-1) output qubits. The oracle copies
/// x and then XORs s into the output controlled on the pivot bit p (lowest
/// set bit of s), which makes output p constant; with n - 1 output bits that
/// constant slot is dropped. Success: every input-register outcome with
/// probability > 1e-9 is orthogonal to s.
AlgorithmInstance build_simon(size_t n, uint64_t s, std::optional<size_t> output_bits = std::nullopt);

// -- Phase estimation --------------------------------------------------------

/// m counting qubits and one eigenstate qubit in |1> of U = P(2 pi theta);
/// theta must equal k / 2^m. Success: argmax of the counting register is k.
AlgorithmInstance build_qpe(size_t m, double theta);

// -- Hamiltonian evolution ---------------------------------------------------

/// coefficient * P, where pauli[b] acts on qubit b.
struct PauliTerm {
    double coefficient = 0;
    std::string pauli;
};

enum class EohInitialState { Zero, Plus };

/// sum_i J_i Z_i Z_{i+1} + sum_i h_i X_i with J_i, h_i drawn from [0.5, 1.5).
/// Terms are ordered even bonds, odd bonds, fields, so that one Trotter step
/// is three layers deep.
std::vector<PauliTerm> transverse_field_ising(size_t n, uint64_t seed);

/// Dense matrix of a Pauli sum (for checks against exact evolution).
ComplexMatrix pauli_sum_matrix(size_t n, const std::vector<PauliTerm> &terms);

/// First-order Trotter circuit for exp(-i H t): `trotter_steps` repetitions of
/// exp(-i c_k (t/steps) P_k) in term order, after the chosen preparation
/// layer. Success: fidelity with the ideal final state >= 1 - 1e-6.
AlgorithmInstance build_eoh(size_t n, const std::vector<PauliTerm> &hamiltonian, double t, size_t trotter_steps,
                            EohInitialState initial = EohInitialState::Plus);

/// Trotter steps used for the experiment grid at n qubits.
size_t eoh_default_steps(size_t n);

inline constexpr double kEohFidelityThreshold = 1 - 1e-6;

// -- Experiment grid -----------------------------------------------------------

/// Builds the instance used by the experiment harness for a total qubit
/// count (ancillas included). Problem parameters come from `seed`.
AlgorithmInstance build_for_size(AlgorithmName name, size_t total_qubits, uint64_t seed);

/// {3, 5, 7, 9, 11} for the oracle algorithms, {3, 5, 7} for QPE and EOH.
std::vector<size_t> default_grid_sizes(AlgorithmName name);

/// Smallest total qubit count build_for_size accepts.
size_t min_total_qubits(AlgorithmName name);

}  // namespace qjump
