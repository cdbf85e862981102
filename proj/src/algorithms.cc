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

#include "qjump/algorithms/algorithms.h"

#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "qjump/core/random.h"

namespace qjump {

namespace {

std::vector<size_t> iota(size_t first, size_t count) {
    std::vector<size_t> v(count);
    std::iota(v.begin(), v.end(), first);
    return v;
}

unsigned parity(uint64_t x) { return static_cast<unsigned>(std::popcount(x) & 1); }

uint64_t low_mask(size_t n) { return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1; }

/// Predicate: argmax over `qubits` equals `expected`.
SuccessPredicate argmax_predicate(std::vector<size_t> qubits, uint64_t expected, size_t width) {
    SuccessPredicate p;
    p.rule = fmt::format("argmax over qubits [0..{}) == {}", width, bitstring(expected, width));
    p.test = [qubits = std::move(qubits), expected](const StateVector &final_state, const StateVector &) {
        return argmax(marginal_probabilities(final_state, qubits)) == expected;
    };
    return p;
}

RandomStream instance_stream(uint64_t seed, std::string_view what, size_t n) {
    return RandomStream::derived(seed, {hash_label(what), n});
}

uint64_t nonzero_bits(RandomStream &rng, size_t n) { return 1 + rng.below(low_mask(n)); }

void apply_all(CircuitDag &dag, const GateDef &g, const std::vector<size_t> &qubits) {
    auto shared = std::make_shared<const GateDef>(g);
    for (size_t q : qubits) {
        dag.apply_operation_back(shared, {q});
    }
}

/// Problem register in |+>^n, ancilla (index n) in |->, so each oracle CX
/// kicks back a phase; shared by Bernstein-Vazirani and Deutsch-Jozsa.
CircuitDag phase_kickback_circuit(size_t n, uint64_t s, bool flip) {
    CircuitDag dag(n + 1);
    dag.apply_operation_back(gates::x(), {n});
    apply_all(dag, gates::h(), iota(0, n + 1));
    if (flip) {
        dag.apply_operation_back(gates::x(), {n});
    }
    auto cx = std::make_shared<const GateDef>(gates::cx());
    for (size_t i = 0; i < n; ++i) {
        if ((s >> i) & 1) {
            dag.apply_operation_back(cx, {i, n});
        }
    }
    apply_all(dag, gates::h(), iota(0, n));
    return dag;
}

}  // namespace

const std::vector<AlgorithmName> &all_algorithms() {
    static const std::vector<AlgorithmName> names{AlgorithmName::BernsteinVazirani, AlgorithmName::DeutschJozsa,
                                                  AlgorithmName::Grover,            AlgorithmName::Simon,
                                                  AlgorithmName::QPE,               AlgorithmName::EOH};
    return names;
}

std::string to_string(AlgorithmName name) {
    switch (name) {
        case AlgorithmName::BernsteinVazirani:
            return "bernstein_vazirani";
        case AlgorithmName::DeutschJozsa:
            return "deutsch_jozsa";
        case AlgorithmName::Grover:
            return "grover";
        case AlgorithmName::Simon:
            return "simon";
        case AlgorithmName::QPE:
            return "qpe";
        case AlgorithmName::EOH:
            return "eoh";
    }
    return "?";
}

std::string display_name(AlgorithmName name) {
    switch (name) {
        case AlgorithmName::BernsteinVazirani:
            return "BernsteinVazirani";
        case AlgorithmName::DeutschJozsa:
            return "DeutschJozsa";
        case AlgorithmName::Grover:
            return "Grover";
        case AlgorithmName::Simon:
            return "Simon";
        case AlgorithmName::QPE:
            return "QPE";
        case AlgorithmName::EOH:
            return "EOH";
    }
    return "?";
}

AlgorithmName parse_algorithm(std::string_view text) {
    std::string t;
    for (char c : text) {
        if (c != '_' && c != '-') {
            t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    static const std::map<std::string, AlgorithmName> names{
        {"bernsteinvazirani", AlgorithmName::BernsteinVazirani},
        {"bv", AlgorithmName::BernsteinVazirani},
        {"deutschjozsa", AlgorithmName::DeutschJozsa},
        {"dj", AlgorithmName::DeutschJozsa},
        {"grover", AlgorithmName::Grover},
        {"simon", AlgorithmName::Simon},
        {"qpe", AlgorithmName::QPE},
        {"eoh", AlgorithmName::EOH},
    };
    if (const auto it = names.find(t); it != names.end()) {
        return it->second;
    }
    throw std::invalid_argument("unknown algorithm '" + std::string(text) +
                                "' (expected bernstein_vazirani, deutsch_jozsa, grover, simon, qpe or eoh)");
}

std::string bitstring(uint64_t value, size_t width) {
    std::string s(width, '0');
    for (size_t b = 0; b < width; ++b) {
        if ((value >> b) & 1) {
            s[width - 1 - b] = '1';
        }
    }
    return s;
}

size_t bernstein_vazirani_gate_count(size_t n, uint64_t s) {
    return 1 + (n + 1) + static_cast<size_t>(std::popcount(s & low_mask(n))) + n;
}

AlgorithmInstance build_bernstein_vazirani(size_t n, uint64_t s) {
    if (n < 1) {
        throw std::invalid_argument("Bernstein-Vazirani needs at least one problem qubit");
    }
    if (s == 0 || (s & ~low_mask(n)) != 0) {
        throw std::invalid_argument(fmt::format("secret must be a nonzero {}-bit string", n));
    }
    AlgorithmInstance inst{AlgorithmName::BernsteinVazirani, n + 1, phase_kickback_circuit(n, s, false),
                           "s=" + bitstring(s, n), argmax_predicate(iota(0, n), s, n)};
    return inst;
}

AlgorithmInstance build_deutsch_jozsa(size_t n, OracleMode mode, uint64_t seed) {
    if (n < 1) {
        throw std::invalid_argument("Deutsch-Jozsa needs at least one problem qubit");
    }
    auto rng = instance_stream(seed, "deutsch_jozsa", n);
    const uint64_t s = mode == OracleMode::Balanced ? nonzero_bits(rng, n) : 0;
    const bool c = rng.below(2) == 1;

    SuccessPredicate p;
    const bool constant = mode == OracleMode::Constant;
    p.rule = constant ? "argmax over problem register == 0" : "argmax over problem register != 0";
    p.test = [qubits = iota(0, n), constant](const StateVector &final_state, const StateVector &) {
        return (argmax(marginal_probabilities(final_state, qubits)) == 0) == constant;
    };
    std::string secret = constant ? fmt::format("constant f={}", c ? 1 : 0)
                                  : fmt::format("balanced f=s.x^{} s={}", c ? 1 : 0, bitstring(s, n));
    return AlgorithmInstance{AlgorithmName::DeutschJozsa, n + 1, phase_kickback_circuit(n, s, c), std::move(secret),
                             std::move(p)};
}

size_t grover_default_iterations(size_t n) {
    return static_cast<size_t>(std::llround(std::numbers::pi / 4 * std::sqrt(std::ldexp(1.0, static_cast<int>(n)))));
}

AlgorithmInstance build_grover(size_t n, uint64_t marked, std::optional<size_t> iterations) {
    if (n < 1) {
        throw std::invalid_argument("Grover needs at least one qubit");
    }
    if ((marked & ~low_mask(n)) != 0) {
        throw std::invalid_argument("marked element does not fit in the search register");
    }
    const size_t rounds = iterations.value_or(grover_default_iterations(n));
    const auto all = iota(0, n);
    std::vector<size_t> zeros;
    for (size_t q = 0; q < n; ++q) {
        if (!((marked >> q) & 1)) {
            zeros.push_back(q);
        }
    }
    const GateDef h = gates::h(), x = gates::x();
    auto mcz = std::make_shared<const GateDef>(gates::mcz(n));

    CircuitDag dag(n);
    apply_all(dag, h, all);
    for (size_t r = 0; r < rounds; ++r) {
        apply_all(dag, x, zeros);
        dag.apply_operation_back(mcz, all);
        apply_all(dag, x, zeros);

        apply_all(dag, h, all);
        apply_all(dag, x, all);
        dag.apply_operation_back(mcz, all);
        apply_all(dag, x, all);
        apply_all(dag, h, all);
    }
    return AlgorithmInstance{AlgorithmName::Grover, n, std::move(dag),
                             fmt::format("marked={} iterations={}", bitstring(marked, n), rounds),
                             argmax_predicate(all, marked, n)};
}

AlgorithmInstance build_simon(size_t n, uint64_t s, std::optional<size_t> output_bits) {
    if (n < 1) {
        throw std::invalid_argument("Simon needs at least one input qubit");
    }
    if (s == 0 || (s & ~low_mask(n)) != 0) {
        throw std::invalid_argument(fmt::format("hidden string must be a nonzero {}-bit string", n));
    }
    const size_t r = output_bits.value_or(n);
    if (r != n && r != n - 1) {
        throw std::invalid_argument("Simon output register must have n or n - 1 qubits");
    }
    const size_t pivot = static_cast<size_t>(std::countr_zero(s));
    // Output slot of input bit j; the pivot slot only exists when r == n.
    auto slot = [&](size_t j) { return n + (r == n || j < pivot ? j : j - 1); };

    CircuitDag dag(n + r);
    const auto inputs = iota(0, n);
    apply_all(dag, gates::h(), inputs);
    auto cx = std::make_shared<const GateDef>(gates::cx());
    for (size_t j = 0; j < n; ++j) {
        if (j != pivot || r == n) {
            dag.apply_operation_back(cx, {j, slot(j)});
        }
    }
    for (size_t j = 0; j < n; ++j) {
        if (((s >> j) & 1) && (j != pivot || r == n)) {
            dag.apply_operation_back(cx, {pivot, slot(j)});
        }
    }
    apply_all(dag, gates::h(), inputs);

    SuccessPredicate p;
    p.rule = "every input-register outcome with p > 1e-9 has y.s = 0 (mod 2)";
    p.test = [inputs, s](const StateVector &final_state, const StateVector &) {
        const auto dist = marginal_probabilities(final_state, inputs);
        for (uint64_t y = 0; y < dist.size(); ++y) {
            if (dist[y] > 1e-9 && parity(y & s) != 0) {
                return false;
            }
        }
        return true;
    };
    return AlgorithmInstance{AlgorithmName::Simon, n + r, std::move(dag), "s=" + bitstring(s, n), std::move(p)};
}

AlgorithmInstance build_qpe(size_t m, double theta) {
    if (m < 1) {
        throw std::invalid_argument("QPE needs at least one counting qubit");
    }
    const double scaled = std::ldexp(theta, static_cast<int>(m));
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > 1e-9 || rounded < 0 || rounded >= std::ldexp(1.0, static_cast<int>(m))) {
        throw std::invalid_argument(fmt::format("theta={} is not k/2^{} with 0 <= k < 2^{}", theta, m, m));
    }
    const auto k = static_cast<uint64_t>(rounded);
    const size_t eig = m;
    const auto counting = iota(0, m);

    CircuitDag dag(m + 1);
    dag.apply_operation_back(gates::x(), {eig});
    apply_all(dag, gates::h(), counting);
    for (size_t j = 0; j < m; ++j) {
        // U^(2^j) = P(2 pi k 2^j / 2^m); reduce the numerator mod 2^m first.
        const uint64_t num = (k << j) & low_mask(m);
        dag.apply_operation_back(gates::cp(2 * std::numbers::pi * std::ldexp(static_cast<double>(num), -static_cast<int>(m))),
                                 {j, eig});
    }
    // Inverse of the textbook QFT with final swaps.
    for (size_t i = 0; i < m / 2; ++i) {
        dag.apply_operation_back(gates::swap(), {i, m - 1 - i});
    }
    for (size_t j = 0; j < m; ++j) {
        for (size_t c = 0; c < j; ++c) {
            dag.apply_operation_back(gates::cp(-std::numbers::pi * std::ldexp(1.0, static_cast<int>(c) - static_cast<int>(j))),
                                     {j, c});
        }
        dag.apply_operation_back(gates::h(), {j});
    }
    return AlgorithmInstance{AlgorithmName::QPE, m + 1, std::move(dag),
                             fmt::format("theta={}/{}", k, uint64_t{1} << m), argmax_predicate(counting, k, m)};
}

std::vector<PauliTerm> transverse_field_ising(size_t n, uint64_t seed) {
    auto rng = instance_stream(seed, "transverse_field_ising", n);
    std::vector<double> couplings(n > 0 ? n - 1 : 0), fields(n);
    for (auto &j : couplings) {
        j = 0.5 + rng.uniform();
    }
    for (auto &h : fields) {
        h = 0.5 + rng.uniform();
    }
    std::vector<PauliTerm> terms;
    auto bond = [&](size_t i) {
        std::string p(n, 'I');
        p[i] = p[i + 1] = 'Z';
        terms.push_back({couplings[i], p});
    };
    for (size_t i = 0; i + 1 < n; i += 2) {
        bond(i);
    }
    for (size_t i = 1; i + 1 < n; i += 2) {
        bond(i);
    }
    for (size_t i = 0; i < n; ++i) {
        std::string p(n, 'I');
        p[i] = 'X';
        terms.push_back({fields[i], p});
    }
    return terms;
}

ComplexMatrix pauli_sum_matrix(size_t n, const std::vector<PauliTerm> &terms) {
    const size_t dim = size_t{1} << n;
    ComplexMatrix out(dim, dim);
    for (const auto &t : terms) {
        if (t.pauli.size() != n) {
            throw std::invalid_argument("Pauli term '" + t.pauli + "' does not have " + std::to_string(n) + " letters");
        }
        out += gates::pauli_string_matrix(t.pauli) * Complex(t.coefficient);
    }
    return out;
}

AlgorithmInstance build_eoh(size_t n, const std::vector<PauliTerm> &hamiltonian, double t, size_t trotter_steps,
                            EohInitialState initial) {
    if (n < 1) {
        throw std::invalid_argument("EOH needs at least one qubit");
    }
    if (trotter_steps < 1) {
        throw std::invalid_argument("EOH needs at least one Trotter step");
    }
    const double dt = t / static_cast<double>(trotter_steps);

    // One rotation gate per term, acting on the term's support only.
    struct Rotation {
        std::shared_ptr<const GateDef> gate;
        std::vector<size_t> support;
    };
    std::vector<Rotation> step;
    for (const auto &term : hamiltonian) {
        if (term.pauli.size() != n) {
            throw std::invalid_argument("Pauli term '" + term.pauli + "' does not have " + std::to_string(n) +
                                        " letters");
        }
        Rotation rot;
        std::string local;
        for (size_t q = 0; q < n; ++q) {
            if (term.pauli[q] != 'I') {
                rot.support.push_back(q);
                local += term.pauli[q];
            }
        }
        if (rot.support.empty()) {
            continue;  // identity terms only contribute a global phase
        }
        rot.gate = std::make_shared<const GateDef>(gates::pauli_rotation(local, 2 * term.coefficient * dt));
        step.push_back(std::move(rot));
    }

    CircuitDag dag(n);
    if (initial == EohInitialState::Plus) {
        apply_all(dag, gates::h(), iota(0, n));
    }
    for (size_t s = 0; s < trotter_steps; ++s) {
        for (const auto &rot : step) {
            dag.apply_operation_back(rot.gate, rot.support);
        }
    }
    SuccessPredicate p;
    p.rule = "fidelity with the ideal final state >= 1 - 1e-6";
    p.test = [](const StateVector &final_state, const StateVector &ideal_state) {
        return fidelity(final_state, ideal_state) >= kEohFidelityThreshold;
    };
    return AlgorithmInstance{AlgorithmName::EOH, n, std::move(dag),
                             fmt::format("terms={} t={} steps={}", hamiltonian.size(), t, trotter_steps), std::move(p)};
}

size_t eoh_default_steps(size_t n) {
    // Circuit depths of the reference EOH instances; one step adds three layers.
    static const std::map<size_t, size_t> target_depth{{3, 11}, {5, 72}, {7, 348}};
    const auto it = target_depth.find(n);
    if (it == target_depth.end()) {
        return 3;
    }
    return std::max<size_t>(1, static_cast<size_t>(std::llround(static_cast<double>(it->second - 1) / 3.0)));
}

size_t min_total_qubits(AlgorithmName name) {
    switch (name) {
        case AlgorithmName::BernsteinVazirani:
        case AlgorithmName::DeutschJozsa:
        case AlgorithmName::QPE:
        case AlgorithmName::Simon:
            return 2;
        case AlgorithmName::Grover:
        case AlgorithmName::EOH:
            return 1;
    }
    return 1;
}

AlgorithmInstance build_for_size(AlgorithmName name, size_t total_qubits, uint64_t seed) {
    if (total_qubits < min_total_qubits(name)) {
        throw std::invalid_argument(fmt::format("{} needs at least {} qubits", display_name(name),
                                                min_total_qubits(name)));
    }
    if (total_qubits > 16) {
        throw std::invalid_argument("at most 16 qubits are supported");
    }
    auto rng = instance_stream(seed, to_string(name), total_qubits);
    switch (name) {
        case AlgorithmName::BernsteinVazirani: {
            const size_t n = total_qubits - 1;
            return build_bernstein_vazirani(n, nonzero_bits(rng, n));
        }
        case AlgorithmName::DeutschJozsa:
            return build_deutsch_jozsa(total_qubits - 1, OracleMode::Balanced, rng());
        case AlgorithmName::Grover: {
            const size_t n = total_qubits;
            return build_grover(n, rng.below(uint64_t{1} << n));
        }
        case AlgorithmName::Simon: {
            const size_t n = (total_qubits + 1) / 2;
            return build_simon(n, nonzero_bits(rng, n), total_qubits - n);
        }
        case AlgorithmName::QPE: {
            const size_t m = total_qubits - 1;
            const uint64_t k = nonzero_bits(rng, m);
            return build_qpe(m, std::ldexp(static_cast<double>(k), -static_cast<int>(m)));
        }
        case AlgorithmName::EOH: {
            const size_t n = total_qubits;
            return build_eoh(n, transverse_field_ising(n, rng()), 1.0, eoh_default_steps(n));
        }
    }
    throw std::invalid_argument("unknown algorithm");
}

std::vector<size_t> default_grid_sizes(AlgorithmName name) {
    if (name == AlgorithmName::QPE || name == AlgorithmName::EOH) {
        return {3, 5, 7};
    }
    return {3, 5, 7, 9, 11};
}

}  // namespace qjump
