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
#include <set>

#include <gtest/gtest.h>

#include "oracles.h"
#include "qjump/core/complex_matrix.h"
#include "qjump/core/gates.h"
#include "qjump/core/random.h"
#include "qjump/core/state_vector.h"

namespace qjump {
namespace {

constexpr double kPi = std::numbers::pi;

StateVector plus() { return apply_gate(StateVector(1), gates::h(), {0}); }

std::vector<GateDef> builtin_gates() {
    return {gates::identity(), gates::x(),       gates::y(),          gates::z(),         gates::h(),
            gates::s(),        gates::rx(0.37),  gates::ry(-1.2),     gates::rz(kPi / 8), gates::phase(0.9),
            gates::cx(),       gates::cz(),      gates::cp(kPi / 3),  gates::swap(),      gates::mcz(1),
            gates::mcz(3),     gates::mcz(5),    gates::pauli_rotation("ZZ", 0.4),
            gates::pauli_rotation("XYZ", -2.1)};
}

TEST(ComplexMatrix, ShapeAndArithmetic) {
    EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), std::invalid_argument);
    const ComplexMatrix a{{1, 2}, {3, 4}};
    const ComplexMatrix b{{0, 1}, {1, 0}};
    const ComplexMatrix ab = a * b;
    EXPECT_EQ(ab(0, 0), Complex(2));
    EXPECT_EQ(ab(1, 1), Complex(3));
    EXPECT_EQ(a.trace(), Complex(5));
    EXPECT_THROW(a * ComplexMatrix(3, 3), std::invalid_argument);
    EXPECT_THROW(ComplexMatrix(2, 3).trace(), std::invalid_argument);
    EXPECT_TRUE(ComplexMatrix::identity(4).is_unitary());
    EXPECT_FALSE(a.is_hermitian());
}

TEST(ComplexMatrix, KronMatchesOracle) {
    const ComplexMatrix a{{1, Complex(0, 2)}, {3, 4}};
    const ComplexMatrix b{{5, 6}, {Complex(7, -1), 8}};
    EXPECT_LT(oracle::max_abs(oracle::to_eigen(kron(a, b)) - oracle::kron(oracle::to_eigen(a), oracle::to_eigen(b))),
              1e-15);
}

TEST(ComplexMatrix, HermitianEigenvalues) {
    const auto ev = hermitian_eigenvalues(ComplexMatrix{{2, Complex(0, 1)}, {Complex(0, -1), 2}});
    ASSERT_EQ(ev.size(), 2u);
    EXPECT_NEAR(ev[0], 1, 1e-12);
    EXPECT_NEAR(ev[1], 3, 1e-12);
}

TEST(Gates, AllBuiltinsAreUnitary) {
    for (const auto &g : builtin_gates()) {
        EXPECT_TRUE(g.matrix().is_unitary(1e-10)) << g.label();
        EXPECT_EQ(g.matrix().rows(), size_t{1} << g.arity()) << g.label();
    }
}

TEST(Gates, RzIsDiagonalPhasePair) {
    const double theta = 0.731;
    const auto m = gates::rz(theta).matrix();
    EXPECT_LT(std::abs(m(0, 0) - std::exp(Complex(0, -theta / 2))), 1e-15);
    EXPECT_LT(std::abs(m(1, 1) - std::exp(Complex(0, theta / 2))), 1e-15);
    EXPECT_EQ(m(0, 1), Complex(0));
    EXPECT_EQ(gates::rz(theta).parameter(), theta);
}

TEST(Gates, PauliRotationMatchesExponential) {
    for (const char *p : {"X", "Y", "Z", "ZZ", "XI", "YZX"}) {
        const std::string pauli(p);
        std::vector<oracle::Mat> factors;
        for (char c : pauli) {
            factors.push_back(oracle::pauli(c));
        }
        const double theta = 0.83;
        const oracle::Mat expected = oracle::expm_hermitian(oracle::kron_chain(factors), theta / 2);
        const oracle::Mat got = oracle::to_eigen(gates::pauli_rotation(pauli, theta).matrix());
        EXPECT_LT(oracle::max_abs(got - expected), 1e-12) << pauli;
    }
}

TEST(Gates, FromLabelRoundTrip) {
    for (const auto &g : builtin_gates()) {
        const auto back = gates::from_label(g.label(), g.parameter(), g.arity());
        EXPECT_LT(back.matrix().max_abs_diff(g.matrix()), 1e-15) << g.label();
    }
    EXPECT_THROW(gates::from_label("NOPE", std::nullopt, 1), std::invalid_argument);
    EXPECT_THROW(gates::from_label("RZ", std::nullopt, 1), std::invalid_argument);
}

TEST(Gates, AdjointInverts) {
    for (const auto &g : builtin_gates()) {
        const auto prod = g.adjoint().matrix() * g.matrix();
        EXPECT_LT(prod.max_abs_diff(ComplexMatrix::identity(prod.rows())), 1e-12) << g.label();
    }
}

TEST(StateVector, Construction) {
    EXPECT_EQ(StateVector(3).dim(), 8u);
    EXPECT_EQ(StateVector(3)[0], Complex(1));
    EXPECT_THROW(StateVector(std::vector<Complex>(3)), std::invalid_argument);
    EXPECT_THROW(StateVector::basis(2, 4), std::out_of_range);
    StateVector zero(std::vector<Complex>(4));
    EXPECT_THROW(zero.normalize(), std::domain_error);
}

TEST(ApplyGate, Examples) {
    const auto one = apply_gate(StateVector(1), gates::x(), {0});
    EXPECT_EQ(one, StateVector::basis(1, 1));

    const auto minus = apply_gate(plus(), gates::z(), {0});
    EXPECT_NEAR(minus[0].real(), 1 / std::sqrt(2), 1e-15);
    EXPECT_NEAR(minus[1].real(), -1 / std::sqrt(2), 1e-15);

    const auto rz = apply_gate(plus(), gates::rz(kPi), {0});
    EXPECT_NEAR(fidelity(rz, minus), 1, 1e-12);
}

TEST(ApplyGate, Errors) {
    EXPECT_THROW(apply_gate(StateVector(2), gates::cx(), {0}), std::invalid_argument);
    EXPECT_THROW(apply_gate(StateVector(2), gates::cx(), {0, 0}), std::invalid_argument);
    EXPECT_THROW(apply_gate(StateVector(2), gates::x(), {2}), std::out_of_range);
}

TEST(ApplyGate, CxControlIsFirstTarget) {
    // |q1 q0> = |01>: control q0 set, so q1 flips.
    const auto out = apply_gate(StateVector::basis(2, 0b01), gates::cx(), {0, 1});
    EXPECT_EQ(out, StateVector::basis(2, 0b11));
    const auto same = apply_gate(StateVector::basis(2, 0b10), gates::cx(), {0, 1});
    EXPECT_EQ(same, StateVector::basis(2, 0b10));
}

TEST(ApplyGate, MatchesFullOperatorOracle) {
    RandomStream rng(2024);
    const size_t n = 5;
    const auto pool = builtin_gates();
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Complex> amps(size_t{1} << n);
        for (auto &a : amps) {
            a = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
        }
        StateVector psi(amps);
        psi.normalize();
        const GateDef &g = pool[rng.below(pool.size())];
        if (g.arity() > n) {
            continue;
        }
        std::vector<size_t> targets;
        while (targets.size() < g.arity()) {
            const size_t q = rng.below(n);
            if (std::find(targets.begin(), targets.end(), q) == targets.end()) {
                targets.push_back(q);
            }
        }
        const auto got = apply_gate(psi, g, targets);
        const oracle::Vec want = oracle::full_operator(oracle::to_eigen(g.matrix()), targets, n) * oracle::to_eigen(psi);
        EXPECT_LT((oracle::to_eigen(got) - want).cwiseAbs().maxCoeff(), 1e-12) << g.label();
    }
}

TEST(ApplyGate, NormPreservedOverLongSequences) {
    RandomStream rng(99);
    const auto pool = builtin_gates();
    for (size_t n : {1u, 4u, 8u}) {
        StateVector psi(n);
        for (int i = 0; i < 1000; ++i) {
            const GateDef &g = pool[rng.below(pool.size())];
            if (g.arity() > n) {
                continue;
            }
            std::vector<size_t> targets;
            while (targets.size() < g.arity()) {
                const size_t q = rng.below(n);
                if (std::find(targets.begin(), targets.end(), q) == targets.end()) {
                    targets.push_back(q);
                }
            }
            psi.apply(g, targets);
        }
        EXPECT_NEAR(psi.norm_squared(), 1, 1e-9) << n;
        double total = 0;
        for (double p : probabilities(psi)) {
            total += p;
        }
        EXPECT_NEAR(total, 1, 1e-9);
    }
}

TEST(ApplyGate, Involutions) {
    RandomStream rng(5);
    std::vector<Complex> amps(8);
    for (auto &a : amps) {
        a = Complex(rng.uniform(), rng.uniform());
    }
    StateVector psi(amps);
    psi.normalize();
    for (const auto &g : {gates::x(), gates::z()}) {
        const auto twice = apply_gate(apply_gate(psi, g, {1}), g, {1});
        for (size_t i = 0; i < psi.dim(); ++i) {
            EXPECT_LT(std::abs(twice[i] - psi[i]), 1e-9);
        }
    }
    const auto back = apply_gate(apply_gate(psi, gates::rz(0.7), {2}), gates::rz(-0.7), {2});
    EXPECT_NEAR(fidelity(back, psi), 1, 1e-9);
}

TEST(Probabilities, Examples) {
    EXPECT_EQ(probabilities(StateVector(1)), (std::vector<double>{1, 0}));
    const auto p = probabilities(plus());
    EXPECT_NEAR(p[0], 0.5, 1e-15);
    EXPECT_NEAR(p[1], 0.5, 1e-15);

    const auto bell = apply_gate(apply_gate(StateVector(2), gates::h(), {0}), gates::cx(), {0, 1});
    const oracle::Vec want = oracle::full_operator(oracle::to_eigen(gates::cx().matrix()), {0, 1}, 2) *
                             oracle::full_operator(oracle::hadamard(), {0}, 2) * oracle::zero_state(2);
    const auto pb = probabilities(bell);
    for (size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(pb[i], std::norm(want(i)), 1e-15);
    }
    EXPECT_NEAR(pb[0], 0.5, 1e-15);
    EXPECT_NEAR(pb[3], 0.5, 1e-15);
}

TEST(Probabilities, MarginalAndArgmax) {
    // |q2 q1 q0> = |100>.
    const auto psi = StateVector::basis(3, 0b100);
    const std::vector<size_t> q{2, 0};
    const auto m = marginal_probabilities(psi, q);
    EXPECT_EQ(m, (std::vector<double>{0, 1, 0, 0}));
    EXPECT_EQ(argmax(std::vector<double>{0.2, 0.4, 0.4}), 1u);
}

TEST(Sampling, Examples) {
    RandomStream rng(1);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(sample_outcome(StateVector::basis(1, 1), rng), 1u);
    }
    RandomStream a(42), b(42);
    for (int i = 0; i < 50; ++i) {
        EXPECT_EQ(sample_outcome(plus(), a), sample_outcome(plus(), b));
    }
    const auto bell = apply_gate(apply_gate(StateVector(2), gates::h(), {0}), gates::cx(), {0, 1});
    RandomStream r(7);
    int zeros = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        zeros += sample_outcome(bell, r) == 0 ? 1 : 0;
    }
    const double f = static_cast<double>(zeros) / n;
    EXPECT_GE(f, 0.48);
    EXPECT_LE(f, 0.52);
    EXPECT_THROW(sample_outcome(StateVector(std::vector<Complex>(2)), r), std::domain_error);
}

TEST(Fidelity, Examples) {
    const auto psi = apply_gate(plus(), gates::rz(0.3), {0});
    EXPECT_NEAR(fidelity(psi, psi), 1, 1e-15);
    EXPECT_NEAR(fidelity(StateVector::basis(1, 0), StateVector::basis(1, 1)), 0, 1e-15);
    EXPECT_NEAR(fidelity(StateVector(1), plus()), 0.5, 1e-15);
    EXPECT_THROW(fidelity(StateVector(1), StateVector(2)), std::invalid_argument);
}

TEST(Random, DerivedStreamsAreStable) {
    EXPECT_EQ(derive_seed(7, {1, 2}), derive_seed(7, {1, 2}));
    EXPECT_NE(derive_seed(7, {1, 2}), derive_seed(7, {2, 1}));
    EXPECT_NE(derive_seed(7, {1}), derive_seed(8, {1}));
    std::set<uint64_t> seen;
    for (uint64_t i = 0; i < 1000; ++i) {
        seen.insert(derive_seed(0, {i}));
    }
    EXPECT_EQ(seen.size(), 1000u);
    RandomStream r(3);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform();
        EXPECT_GE(u, 0);
        EXPECT_LT(u, 1);
        EXPECT_LT(r.below(7), 7u);
    }
}

}  // namespace
}  // namespace qjump
