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

#include "qjump/core/state_vector.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qjump {

namespace {

void validate_targets(const StateVector &state, const GateDef &gate, std::span<const size_t> targets) {
    if (targets.size() != gate.arity()) {
        throw std::invalid_argument("gate " + gate.label() + " expects " + std::to_string(gate.arity()) +
                                    " targets, got " + std::to_string(targets.size()));
    }
    for (size_t b = 0; b < targets.size(); ++b) {
        if (targets[b] >= state.num_qubits()) {
            throw std::out_of_range("gate " + gate.label() + ": qubit " + std::to_string(targets[b]) +
                                    " out of range for " + std::to_string(state.num_qubits()) + " qubits");
        }
        for (size_t c = 0; c < b; ++c) {
            if (targets[c] == targets[b]) {
                throw std::invalid_argument("gate " + gate.label() + ": repeated target qubit " +
                                            std::to_string(targets[b]));
            }
        }
    }
}

/// Spreads the bits of `compact` into the zero positions of a full index,
/// skipping the (sorted) target positions.
uint64_t insert_zero_bits(uint64_t compact, std::span<const size_t> sorted_targets) {
    for (size_t t : sorted_targets) {
        const uint64_t low = compact & ((uint64_t{1} << t) - 1);
        compact = ((compact >> t) << (t + 1)) | low;
    }
    return compact;
}

void apply_single_dense(std::vector<Complex> &amps, const ComplexMatrix &m, size_t target) {
    const uint64_t stride = uint64_t{1} << target;
    const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (uint64_t base = 0; base < amps.size(); base += 2 * stride) {
        for (uint64_t k = base; k < base + stride; ++k) {
            const Complex a0 = amps[k], a1 = amps[k + stride];
            amps[k] = m00 * a0 + m01 * a1;
            amps[k + stride] = m10 * a0 + m11 * a1;
        }
    }
}

}  // namespace

StateVector::StateVector(size_t num_qubits) : num_qubits_(num_qubits), amplitudes_(size_t{1} << num_qubits) {
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty() || !std::has_single_bit(amplitudes_.size())) {
        throw std::invalid_argument("StateVector: length " + std::to_string(amplitudes_.size()) +
                                    " is not a power of two");
    }
    num_qubits_ = static_cast<size_t>(std::countr_zero(amplitudes_.size()));
}

StateVector StateVector::basis(size_t num_qubits, uint64_t index) {
    StateVector s(num_qubits);
    if (index >= s.dim()) {
        throw std::out_of_range("basis index " + std::to_string(index) + " out of range");
    }
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[index] = 1.0;
    return s;
}

double StateVector::norm_squared() const {
    double acc = 0;
    for (const auto &a : amplitudes_) {
        acc += std::norm(a);
    }
    return acc;
}

void StateVector::normalize() {
    const double n2 = norm_squared();
    if (!(n2 > 1e-300)) {
        throw std::domain_error("cannot normalize a state with zero norm");
    }
    const double inv = 1 / std::sqrt(n2);
    for (auto &a : amplitudes_) {
        a *= inv;
    }
}

void StateVector::apply(const GateDef &gate, std::span<const size_t> targets) {
    validate_targets(*this, gate, targets);
    if (gate.is_pseudo()) {
        return;
    }
    const size_t k = gate.arity();

    if (gate.is_diagonal()) {
        const auto &diag = gate.diagonal_entries();
        for (uint64_t i = 0; i < amplitudes_.size(); ++i) {
            uint64_t local = 0;
            for (size_t b = 0; b < k; ++b) {
                local |= ((i >> targets[b]) & 1) << b;
            }
            amplitudes_[i] *= diag[local];
        }
        return;
    }

    const ComplexMatrix &m = gate.dense_matrix();
    if (k == 1) {
        apply_single_dense(amplitudes_, m, targets[0]);
        return;
    }

    std::vector<size_t> sorted(targets.begin(), targets.end());
    std::sort(sorted.begin(), sorted.end());
    const size_t local_dim = size_t{1} << k;
    std::vector<uint64_t> offsets(local_dim, 0);
    for (size_t l = 0; l < local_dim; ++l) {
        for (size_t b = 0; b < k; ++b) {
            if ((l >> b) & 1) {
                offsets[l] |= uint64_t{1} << targets[b];
            }
        }
    }
    std::vector<Complex> in(local_dim), out(local_dim);
    const uint64_t groups = amplitudes_.size() >> k;
    for (uint64_t g = 0; g < groups; ++g) {
        const uint64_t base = insert_zero_bits(g, sorted);
        for (size_t l = 0; l < local_dim; ++l) {
            in[l] = amplitudes_[base | offsets[l]];
        }
        for (size_t r = 0; r < local_dim; ++r) {
            Complex acc = 0;
            for (size_t c = 0; c < local_dim; ++c) {
                acc += m(r, c) * in[c];
            }
            out[r] = acc;
        }
        for (size_t l = 0; l < local_dim; ++l) {
            amplitudes_[base | offsets[l]] = out[l];
        }
    }
}

void StateVector::apply_full(const ComplexMatrix &op) {
    if (op.rows() != dim() || op.cols() != dim()) {
        throw std::invalid_argument("apply_full: operator dimension does not match state");
    }
    amplitudes_ = op.apply(amplitudes_);
}

StateVector apply_gate(StateVector state, const GateDef &gate, std::span<const size_t> targets) {
    state.apply(gate, targets);
    return state;
}

std::vector<double> probabilities(const StateVector &state) {
    std::vector<double> p(state.dim());
    for (size_t k = 0; k < p.size(); ++k) {
        p[k] = std::norm(state[k]);
    }
    return p;
}

std::vector<double> marginal_probabilities(const StateVector &state, std::span<const size_t> qubits) {
    for (size_t q : qubits) {
        if (q >= state.num_qubits()) {
            throw std::out_of_range("marginal_probabilities: qubit " + std::to_string(q) + " out of range");
        }
    }
    std::vector<double> p(size_t{1} << qubits.size(), 0.0);
    for (uint64_t i = 0; i < state.dim(); ++i) {
        uint64_t local = 0;
        for (size_t b = 0; b < qubits.size(); ++b) {
            local |= ((i >> qubits[b]) & 1) << b;
        }
        p[local] += std::norm(state[i]);
    }
    return p;
}

size_t argmax(std::span<const double> distribution) {
    if (distribution.empty()) {
        throw std::invalid_argument("argmax of an empty distribution");
    }
    return static_cast<size_t>(std::max_element(distribution.begin(), distribution.end()) - distribution.begin());
}

uint64_t sample_outcome(const StateVector &state, RandomStream &rng) {
    const double total = state.norm_squared();
    if (!(total > 1e-12)) {
        throw std::domain_error("sample_outcome: state has (near) zero norm");
    }
    const double u = rng.uniform() * total;
    double acc = 0;
    uint64_t last_nonzero = 0;
    for (uint64_t k = 0; k < state.dim(); ++k) {
        const double p = std::norm(state[k]);
        if (p > 0) {
            last_nonzero = k;
        }
        acc += p;
        if (u < acc) {
            return k;
        }
    }
    // u landed in the rounding slack past the last partial sum.
    return last_nonzero;
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("inner_product: dimension mismatch (" + std::to_string(a.num_qubits()) +
                                    " vs " + std::to_string(b.num_qubits()) + " qubits)");
    }
    Complex acc = 0;
    for (size_t k = 0; k < a.dim(); ++k) {
        acc += std::conj(a[k]) * b[k];
    }
    return acc;
}

double fidelity(const StateVector &a, const StateVector &b) { return std::min(1.0, std::norm(inner_product(a, b))); }

Complex expectation(const StateVector &state, const ComplexMatrix &op) {
    if (op.rows() != state.dim() || op.cols() != state.dim()) {
        throw std::invalid_argument("expectation: operator dimension does not match state");
    }
    const auto v = op.apply(state.amplitudes());
    Complex acc = 0;
    for (size_t k = 0; k < v.size(); ++k) {
        acc += std::conj(state[k]) * v[k];
    }
    return acc;
}

}  // namespace qjump
