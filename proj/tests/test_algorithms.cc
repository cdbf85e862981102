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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.h"
#include "qjump/algorithms/algorithms.h"
#include "qjump/circuit/error_spec.h"

namespace qjump {
namespace {

size_t find_node(const CircuitDag &dag, const std::string &label, std::vector<size_t> qargs, size_t from = 0) {
    for (size_t i = from; i < dag.size(); ++i) {
        if (dag.node(i).gate->label() == label && dag.node(i).qargs == qargs) {
            return i;
        }
    }
    ADD_FAILURE() << "no " << label << " node";
    return 0;
}

bool verdict(const AlgorithmInstance &inst, const GateDef &error, size_t index) {
    return inst.predicate(execute(inject_error(inst.dag, error, index)), execute(inst.dag));
}

std::vector<size_t> iota(size_t n) {
    std::vector<size_t> v(n);
    for (size_t i = 0; i < n; ++i) {
        v[i] = i;
    }
    return v;
}

TEST(Names, RoundTrip) {
    for (AlgorithmName a : all_algorithms()) {
        EXPECT_EQ(parse_algorithm(to_string(a)), a);
        EXPECT_EQ(parse_algorithm(display_name(a)), a);
    }
    EXPECT_EQ(parse_algorithm("bv"), AlgorithmName::BernsteinVazirani);
    EXPECT_EQ(parse_algorithm("DJ"), AlgorithmName::DeutschJozsa);
    EXPECT_THROW(parse_algorithm("shor"), std::invalid_argument);
    EXPECT_EQ(bitstring(0b101, 3), "101");
    EXPECT_EQ(bitstring(0b1, 3), "001");
}

TEST(BernsteinVazirani, Examples) {
    const auto inst = build_bernstein_vazirani(3, 0b101);
    const auto ideal = execute(inst.dag);
    const auto dist = marginal_probabilities(ideal, iota(3));
    EXPECT_NEAR(dist[0b101], 1, 1e-12);
    EXPECT_TRUE(inst.predicate(ideal, ideal));

    // X after each final-layer H flips exactly that bit of the answer.
    const size_t last_cx = find_node(inst.dag, "CX", {2, 3});
    for (size_t q = 0; q < 3; ++q) {
        const size_t h = find_node(inst.dag, "H", {q}, last_cx + 1);
        const auto out = execute(inject_error(inst.dag, gates::x(), h));
        EXPECT_NEAR(marginal_probabilities(out, iota(3))[0b101 ^ (1u << q)], 1, 1e-12);
        EXPECT_FALSE(inst.predicate(out, ideal));
    }

    const auto tiny = build_bernstein_vazirani(1, 1);
    EXPECT_TRUE(tiny.predicate(execute(tiny.dag), execute(tiny.dag)));
    EXPECT_EQ(tiny.num_qubits, 2u);
    EXPECT_THROW(build_bernstein_vazirani(0, 1), std::invalid_argument);
    EXPECT_THROW(build_bernstein_vazirani(3, 0), std::invalid_argument);
    EXPECT_THROW(build_bernstein_vazirani(3, 8), std::invalid_argument);
}

TEST(BernsteinVazirani, MatchesOracleForAllSecrets) {
    const size_t n = 4;
    for (uint64_t s = 1; s < 16; ++s) {
        const auto inst = build_bernstein_vazirani(n, s);
        const oracle::Vec out = oracle::simulate(inst.dag, oracle::zero_state(n + 1));
        // Problem register |s>, ancilla |->: all weight on s and s + 2^n.
        EXPECT_NEAR(std::norm(out(s)) + std::norm(out(s | (1u << n))), 1, 1e-12) << s;
        EXPECT_EQ(inst.dag.size(), bernstein_vazirani_gate_count(n, s));
    }
}

TEST(DeutschJozsa, Examples) {
    for (uint64_t seed = 0; seed < 6; ++seed) {
        const auto c = build_deutsch_jozsa(3, OracleMode::Constant, seed);
        const auto ideal = execute(c.dag);
        EXPECT_NEAR(marginal_probabilities(ideal, iota(3))[0], 1, 1e-12);
        EXPECT_TRUE(c.predicate(ideal, ideal));

        // Z on the ancilla right after its H, before the oracle.
        const size_t anc_h = find_node(c.dag, "H", {3});
        EXPECT_TRUE(verdict(c, gates::z(), anc_h));

        const auto b = build_deutsch_jozsa(3, OracleMode::Balanced, seed);
        const auto ib = execute(b.dag);
        EXPECT_NEAR(marginal_probabilities(ib, iota(3))[0], 0, 1e-12);
        EXPECT_TRUE(b.predicate(ib, ib));
    }
}

TEST(DeutschJozsa, BalancedOracleIsBalanced) {
    // Classical check of the encoded f via the phase pattern before the last H layer.
    for (uint64_t seed = 0; seed < 10; ++seed) {
        const auto b = build_deutsch_jozsa(4, OracleMode::Balanced, seed);
        const auto psi = execute(b.dag);
        // Balanced f gives zero amplitude on the all-zero problem outcome.
        EXPECT_NEAR(marginal_probabilities(psi, iota(4))[0], 0, 1e-12) << seed;
    }
}

TEST(Grover, Examples) {
    const auto two = build_grover(2, 0b11, 1);
    const auto ideal2 = execute(two.dag);
    EXPECT_NEAR(probabilities(ideal2)[0b11], 1, 1e-12);
    EXPECT_TRUE(two.predicate(ideal2, ideal2));

    for (uint64_t marked = 0; marked < 8; ++marked) {
        const auto g = build_grover(3, marked);
        const oracle::Vec out = oracle::simulate(g.dag, oracle::zero_state(3));
        EXPECT_NEAR(std::norm(out(marked)), 0.9453125, 1e-9);
        EXPECT_TRUE(g.predicate(execute(g.dag), execute(g.dag)));
    }
    EXPECT_EQ(grover_default_iterations(3), 2u);
    EXPECT_EQ(grover_default_iterations(2), 2u);

    // X on a diffuser node: the verdict is whatever the oracle run says.
    const auto g = build_grover(3, 0b110);
    const size_t mcz2 = find_node(g.dag, "MCZ", {0, 1, 2}, find_node(g.dag, "MCZ", {0, 1, 2}) + 1);
    for (size_t i = mcz2 - 3; i <= mcz2; ++i) {
        const auto faulty = inject_error(g.dag, gates::x(), i);
        const oracle::Vec out = oracle::simulate(faulty, oracle::zero_state(3));
        Eigen::Index best = 0;
        out.cwiseAbs2().maxCoeff(&best);
        EXPECT_EQ(g.predicate(execute(faulty), execute(g.dag)), best == 0b110) << i;
    }
}

TEST(Simon, Examples) {
    const auto a = build_simon(2, 0b11);
    const auto ia = execute(a.dag);
    const auto da = marginal_probabilities(ia, iota(2));
    EXPECT_NEAR(da[0b00] + da[0b11], 1, 1e-12);
    EXPECT_TRUE(a.predicate(ia, ia));

    const auto b = build_simon(3, 0b100);
    const auto ib = execute(b.dag);
    const auto db = marginal_probabilities(ib, iota(3));
    for (uint64_t y = 0; y < 8; ++y) {
        if (db[y] > 1e-9) {
            EXPECT_EQ(std::popcount(y & 0b100) % 2, 0) << y;
        }
    }
    EXPECT_TRUE(b.predicate(ib, ib));

    // X on input qubit 2 after the final H: y -> y ^ 100, so y.s flips.
    const size_t h2 = find_node(b.dag, "H", {2}, find_node(b.dag, "H", {2}) + 1);
    EXPECT_FALSE(verdict(b, gates::x(), h2));
}

TEST(Simon, OracleIsTwoToOne) {
    for (size_t n = 2; n <= 4; ++n) {
        for (uint64_t s = 1; s < (1u << n); ++s) {
            for (size_t r : {n, n - 1}) {
                const auto inst = build_simon(n, s, r);
                // Replace the final H layer by nothing: evaluate the oracle on each |x>.
                CircuitDag oracle_only(n + r);
                const auto &nodes = inst.dag.op_nodes();
                for (size_t i = n; i + n < nodes.size(); ++i) {
                    oracle_only.apply_operation_back(nodes[i].gate, nodes[i].qargs);
                }
                std::vector<uint64_t> f(1u << n);
                for (uint64_t x = 0; x < (1u << n); ++x) {
                    const auto out = execute(oracle_only, StateVector::basis(n + r, x));
                    const size_t idx = argmax(probabilities(out));
                    EXPECT_EQ(idx & ((1u << n) - 1), x);
                    f[x] = idx >> n;
                }
                for (uint64_t x = 0; x < (1u << n); ++x) {
                    for (uint64_t y = 0; y < (1u << n); ++y) {
                        EXPECT_EQ(f[x] == f[y], x == y || (x ^ y) == s) << n << " " << s << " " << r;
                    }
                }
                EXPECT_TRUE(inst.predicate(execute(inst.dag), execute(inst.dag)));
            }
        }
    }
}

TEST(Qpe, Examples) {
    const auto a = build_qpe(3, 1.0 / 8);
    const auto ia = execute(a.dag);
    EXPECT_NEAR(marginal_probabilities(ia, iota(3))[0b001], 1, 1e-12);
    EXPECT_TRUE(a.predicate(ia, ia));

    const auto zero = build_qpe(2, 0);
    EXPECT_NEAR(marginal_probabilities(execute(zero.dag), iota(2))[0], 1, 1e-12);

    // Z on counting qubit j right after its controlled power, before the inverse QFT.
    for (size_t j = 0; j < 3; ++j) {
        const size_t cp = find_node(a.dag, "CP", {j, 3});
        const auto out = execute(inject_error(a.dag, gates::z(), cp));
        EXPECT_FALSE(a.predicate(out, ia)) << j;
        if (j == 0) {
            // A pi phase on the lowest counting qubit is exactly k -> k + 2^(m-1).
            EXPECT_NEAR(marginal_probabilities(out, iota(3))[0b101], 1, 1e-12);
        }
    }
    EXPECT_THROW(build_qpe(3, 0.1), std::invalid_argument);
}

TEST(Qpe, PointMassForEveryPhase) {
    for (size_t m = 1; m <= 5; ++m) {
        for (uint64_t k = 0; k < (1u << m); ++k) {
            const auto inst = build_qpe(m, std::ldexp(static_cast<double>(k), -static_cast<int>(m)));
            const oracle::Vec out = oracle::simulate(inst.dag, oracle::zero_state(m + 1));
            // Eigenstate qubit m stays |1>.
            EXPECT_NEAR(std::norm(out(k | (1u << m))), 1, 1e-9) << m << " " << k;
        }
    }
}

TEST(Eoh, SingleZTermIsExact) {
    const double c = 0.8, t = 1.7;
    for (size_t steps : {1u, 4u}) {
        const auto inst = build_eoh(1, {{c, "Z"}}, t, steps);
        oracle::Mat z = oracle::pauli('Z') * c;
        const oracle::Vec want = oracle::expm_hermitian(z, t) * oracle::hadamard() * oracle::zero_state(1);
        EXPECT_NEAR(oracle::fidelity(oracle::to_eigen(execute(inst.dag)), want), 1, 1e-12);
    }
}

TEST(Eoh, ZeroHamiltonianIsIdentity) {
    const auto inst = build_eoh(3, {{0.0, "ZZI"}, {0.0, "IIX"}}, 1, 3, EohInitialState::Zero);
    const auto out = execute(inst.dag);
    EXPECT_NEAR(fidelity(out, StateVector(3)), 1, 1e-15);
}

TEST(Eoh, TrotterConvergesToExactEvolution) {
    const size_t n = 3;
    const auto terms = transverse_field_ising(n, 5);
    const oracle::Mat h = oracle::to_eigen(pauli_sum_matrix(n, terms));
    oracle::Vec plus = oracle::Vec::Constant(8, 1 / std::sqrt(8.0));
    const oracle::Vec exact = oracle::expm_hermitian(h, 1.0) * plus;
    double prev = 1;
    for (size_t steps : {4u, 16u, 64u}) {
        const auto inst = build_eoh(n, terms, 1.0, steps);
        const double infid = 1 - oracle::fidelity(oracle::to_eigen(execute(inst.dag)), exact);
        EXPECT_LT(infid, prev);
        prev = infid;
    }
    EXPECT_LT(prev, 1e-3);
}

TEST(Eoh, ErrorVerdictMatchesIntermediateStateOracle) {
    // Everything after the error site is unitary, so the final fidelity with
    // the ideal state equals |<phi|E|phi>|^2 at the site.
    const auto inst = build_for_size(AlgorithmName::EOH, 3, 9);
    std::vector<GateDef> errors{gates::x(), gates::y(), gates::z()};
    for (const auto &a : standard_rz_angles()) {
        errors.push_back(error_gate(ErrorKind::RZ, a));
    }
    oracle::Vec phi = oracle::zero_state(3);
    for (size_t i = 0; i < inst.dag.size(); ++i) {
        const auto &node = inst.dag.node(i);
        phi = oracle::full_operator(oracle::to_eigen(node.gate->matrix()), node.qargs, 3) * phi;
        for (const auto &e : errors) {
            oracle::Vec hit = phi;
            for (size_t q : node.qargs) {
                hit = oracle::full_operator(oracle::to_eigen(e.matrix()), {q}, 3) * hit;
            }
            const bool expect = oracle::fidelity(hit, phi) >= kEohFidelityThreshold;
            EXPECT_EQ(verdict(inst, e, i), expect) << e.label() << " after node " << i;
            if (e.label() == "RZ") {
                EXPECT_FALSE(expect) << "RZ leaves the state invariant at node " << i;
            }
        }
    }
}

TEST(Eoh, StepTable) {
    EXPECT_EQ(eoh_default_steps(3), 3u);
    EXPECT_EQ(eoh_default_steps(5), 24u);
    EXPECT_EQ(eoh_default_steps(7), 116u);
    EXPECT_EQ(depth(build_for_size(AlgorithmName::EOH, 3, 1).dag), 10u);
}

TEST(Grid, NoiselessSuccessEverywhere) {
    for (AlgorithmName a : all_algorithms()) {
        for (size_t q : default_grid_sizes(a)) {
            for (uint64_t seed : {0u, 7u}) {
                const auto inst = build_for_size(a, q, seed);
                EXPECT_EQ(inst.num_qubits, q);
                const auto ideal = execute(inst.dag);
                EXPECT_TRUE(inst.predicate(ideal, ideal)) << to_string(a) << " " << q;
            }
        }
    }
}

TEST(Grid, BuildsAreDeterministic) {
    for (AlgorithmName a : all_algorithms()) {
        for (size_t q : {3u, 5u}) {
            const auto x = build_for_size(a, q, 31);
            const auto y = build_for_size(a, q, 31);
            EXPECT_EQ(x.dag.dump(), y.dag.dump());
            EXPECT_TRUE(x.dag == y.dag);
            EXPECT_EQ(x.secret, y.secret);
        }
    }
}

TEST(Grid, PointMassForBvAndQpe) {
    for (size_t q : {3u, 5u, 7u}) {
        for (AlgorithmName a : {AlgorithmName::BernsteinVazirani, AlgorithmName::QPE}) {
            // Measured register only; the BV ancilla ends in |->.
            const auto p = marginal_probabilities(execute(build_for_size(a, q, 2).dag), iota(q - 1));
            EXPECT_GT(*std::max_element(p.begin(), p.end()), 1 - 1e-9);
        }
    }
}

}  // namespace
}  // namespace qjump
