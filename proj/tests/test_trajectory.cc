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

#include <gtest/gtest.h>

#include "oracles.h"
#include "qjump/trajectory/trajectory.h"

namespace qjump {
namespace {

using operators::lowering;

OpenSystem damping(double gamma) { return OpenSystem(ComplexMatrix::zeros(2, 2), {JumpChannel{lowering(), gamma}}); }

const StateVector kExcited = StateVector::basis(1, 1);

StateVector random_state(size_t n, RandomStream &rng) {
    std::vector<Complex> a(size_t{1} << n);
    for (auto &x : a) {
        x = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
    }
    StateVector s(a);
    s.normalize();
    return s;
}

ComplexMatrix projector(const StateVector &s) { return ComplexMatrix::outer(s.amplitudes(), s.amplitudes()); }

TEST(EffectiveHamiltonian, Examples) {
    const ComplexMatrix h{{0.3, Complex(0, 0.2)}, {Complex(0, -0.2), -0.1}};
    EXPECT_EQ(effective_hamiltonian(OpenSystem(h)).matrix, h);

    const double g = 0.8;
    const auto heff = effective_hamiltonian(damping(g)).matrix;
    EXPECT_LT(heff.max_abs_diff(ComplexMatrix{{0, 0}, {0, Complex(0, -g / 2)}}), 1e-15);

    const auto unitary_jump = effective_hamiltonian(OpenSystem(h, {JumpChannel{operators::pauli_x(), g}})).matrix;
    EXPECT_LT(unitary_jump.max_abs_diff(h - ComplexMatrix::identity(2) * Complex(0, g / 2)), 1e-15);
}

TEST(EffectiveHamiltonian, AntiHermitianPartIsNegative) {
    RandomStream rng(1);
    const size_t n = 2;
    const OpenSystem sys(ComplexMatrix::zeros(4, 4), {{operators::on_qubit(lowering(), 0, n), 0.4},
                                                      {operators::on_qubit(operators::pauli_z(), 1, n), 1.1}});
    const auto heff = effective_hamiltonian(sys).matrix;
    // (H - H^dag) / 2i is the anti-Hermitian part's Hermitian generator.
    ComplexMatrix anti = (heff - heff.adjoint()) * Complex(0, -0.5);
    for (double ev : hermitian_eigenvalues(anti)) {
        EXPECT_LE(ev, 1e-12);
    }
}

TEST(JumpProbabilities, Examples) {
    const double dt = 0.01, g = 2;
    EXPECT_EQ(jump_probabilities(StateVector(1), damping(g), dt).total, 0);
    EXPECT_NEAR(jump_probabilities(kExcited, damping(g), dt).total, g * dt, 1e-15);

    const OpenSystem two(ComplexMatrix::zeros(2, 2), {{lowering(), 1.0}, {operators::pauli_z(), 0.5}});
    const auto p = jump_probabilities(kExcited, two, dt);
    ASSERT_EQ(p.per_channel.size(), 2u);
    EXPECT_NEAR(p.per_channel[0], 1.0 * dt, 1e-15);
    EXPECT_NEAR(p.per_channel[1], 0.5 * dt, 1e-15);
    EXPECT_NEAR(p.total, p.per_channel[0] + p.per_channel[1], 1e-15);

    EXPECT_THROW(jump_probabilities(kExcited, damping(1), 0.1), std::domain_error);
    EXPECT_NO_THROW(jump_probabilities(kExcited, damping(1), 0.0999));
}

TEST(Step, Examples) {
    const PreparedSystem closed(OpenSystem(ComplexMatrix::zeros(2, 2)));
    RandomStream rng(1);
    RandomStream probe(5);
    const auto psi = random_state(1, probe);
    EXPECT_EQ(step(psi, closed, 0.01, rng), psi);

    const PreparedSystem d(damping(1));
    const auto jumped = step_with_draw(kExcited, d, 0.01, 0.0);
    ASSERT_TRUE(jumped.jump.has_value());
    EXPECT_NEAR(fidelity(jumped.state, StateVector(1)), 1, 1e-15);

    const auto stayed = step_with_draw(kExcited, d, 0.01, 0.5);
    EXPECT_FALSE(stayed.jump.has_value());
    EXPECT_NEAR(fidelity(stayed.state, kExcited), 1, 1e-15);
    EXPECT_NEAR(stayed.state.norm_squared(), 1, 1e-9);
}

TEST(Step, FirstOrderNoJumpUpdate) {
    // Hand-evaluated (1 - i dt H) psi / sqrt(1 - dp) for a driven, damped qubit.
    const ComplexMatrix h{{0, 0.5}, {0.5, 0}};
    const double g = 0.3, dt = 0.02;
    const PreparedSystem sys(OpenSystem(h, {JumpChannel{lowering(), g}}));
    RandomStream rng(3);
    const auto psi = random_state(1, rng);
    const double dp = dt * g * std::norm(psi[1]);
    const oracle::Mat heff = oracle::to_eigen(h) - oracle::C(0, g / 2) * oracle::to_eigen(projector(kExcited));
    oracle::Vec want = (oracle::Mat::Identity(2, 2) - oracle::C(0, dt) * heff) * oracle::to_eigen(psi);
    want /= std::sqrt(1 - dp);
    want.normalize();
    const auto got = step_with_draw(psi, sys, dt, 0.999);
    EXPECT_LT((oracle::to_eigen(got.state) - want).norm(), 1e-12);
}

TEST(Step, UnitNormOnBothBranches) {
    RandomStream rng(17);
    const size_t n = 2;
    const PreparedSystem sys(OpenSystem(ComplexMatrix{{0.2, 0, 0, 0.3}, {0, -0.1, 0.4, 0}, {0, 0.4, 0.5, 0},
                                                      {0.3, 0, 0, 0.1}},
                                        {{operators::on_qubit(lowering(), 0, n), 0.9},
                                         {operators::on_qubit(lowering(), 1, n), 0.4},
                                         {operators::on_qubit(operators::pauli_x(), 1, n), 0.2}}));
    for (int i = 0; i < 2000; ++i) {
        const auto psi = random_state(n, rng);
        const auto dp = jump_probabilities(psi, sys, 0.05);
        const double u = (i % 2 == 0) ? rng.uniform() * dp.total : dp.total + rng.uniform() * (1 - dp.total);
        const auto r = step_with_draw(psi, sys, 0.05, u);
        EXPECT_EQ(r.jump.has_value(), i % 2 == 0);
        EXPECT_NEAR(r.state.norm_squared(), 1, 1e-9);
    }
}

TEST(Step, ChannelPartitionOrder) {
    const OpenSystem two(ComplexMatrix::zeros(2, 2), {{lowering(), 1.0}, {operators::pauli_z(), 1.0}});
    const PreparedSystem sys(two);
    const double dt = 0.01;  // dp_1 = dp_2 = 0.01 on |1>
    EXPECT_EQ(step_with_draw(kExcited, sys, dt, 0.005).jump, std::optional<size_t>(0));
    EXPECT_EQ(step_with_draw(kExcited, sys, dt, 0.015).jump, std::optional<size_t>(1));
    EXPECT_EQ(step_with_draw(kExcited, sys, dt, 0.02).jump, std::nullopt);
}

TEST(Step, JumpFrequencyMatchesProbability) {
    RandomStream probe(2);
    const auto psi = random_state(1, probe);
    const PreparedSystem sys(damping(3));
    const double dt = 0.02;
    const double dp = jump_probabilities(psi, sys, dt).total;
    RandomStream rng(77);
    const int n = 100000;
    int jumps = 0;
    for (int i = 0; i < n; ++i) {
        jumps += step_detailed(psi, sys, dt, rng).jump ? 1 : 0;
    }
    const double sd = std::sqrt(n * dp * (1 - dp));
    EXPECT_LE(std::abs(jumps - n * dp), 5 * sd);
}

TEST(RunTrajectory, Examples) {
    const TrajectoryConfig zero{1e-3, 0, 9, 1};
    EXPECT_EQ(run_trajectory(damping(1), kExcited, zero, 0).final_state, kExcited);

    const TrajectoryConfig cfg{1e-3, 1, 9, 10000};
    const auto a = run_trajectory(damping(1), kExcited, cfg, 42, true);
    const auto b = run_trajectory(damping(1), kExcited, cfg, 42, true);
    EXPECT_EQ(a.final_state, b.final_state);
    EXPECT_EQ(a.trace, b.trace);
    EXPECT_EQ(a.trace.size(), 1000u);

    const auto states = run_ensemble(damping(1), kExcited, cfg);
    size_t still = 0;
    for (const auto &s : states) {
        still += std::norm(s[1]) > 0.5 ? 1 : 0;
    }
    EXPECT_NEAR(static_cast<double>(still) / 10000, std::exp(-1.0), 0.02);
}

TEST(RunTrajectory, ConfigValidation) {
    EXPECT_THROW(run_trajectory(damping(1), kExcited, {0, 1, 0, 1}, 0), std::invalid_argument);
    EXPECT_THROW(run_trajectory(damping(1), kExcited, {1e-3, -1, 0, 1}, 0), std::invalid_argument);
    EXPECT_THROW(run_ensemble(damping(1), kExcited, {1e-3, 1, 0, 0}), std::invalid_argument);
    EXPECT_THROW(run_trajectory(damping(10), kExcited, {0.02, 1, 0, 1}, 0), std::domain_error);
}

TEST(Ensemble, Examples) {
    RandomStream rng(1);
    const auto psi = random_state(2, rng);
    EXPECT_LT(ensemble_density({psi}).matrix().max_abs_diff(projector(psi)), 1e-15);
    const auto mixed = ensemble_density({StateVector::basis(1, 0), StateVector::basis(1, 1)});
    EXPECT_LT(mixed.matrix().max_abs_diff(ComplexMatrix{{0.5, 0}, {0, 0.5}}), 1e-15);
    EXPECT_THROW(ensemble_density({}), std::invalid_argument);
    EXPECT_THROW(ensemble_density({StateVector(1), StateVector(2)}), std::invalid_argument);

    const TrajectoryConfig cfg{1e-3, 1, 3, 10000};
    const auto rho = ensemble_density(run_ensemble(damping(1), kExcited, cfg));
    const auto exact = evolve(damping(1), DensityMatrix::from_pure(kExcited), 1, 1e-3);
    EXPECT_LE(trace_distance(rho, exact), 0.02);
}

TEST(Ensemble, ParallelEqualsSerialAndOrderInsensitive) {
    const OpenSystem sys(ComplexMatrix{{0, 0.7}, {0.7, 0}}, {JumpChannel{lowering(), 0.5}});
    RandomStream rng(4);
    const auto psi0 = random_state(1, rng);
    const TrajectoryConfig cfg{1e-2, 2, 11, 400};
    const auto serial = run_ensemble(sys, psi0, cfg, 1);
    const auto parallel = run_ensemble(sys, psi0, cfg, 4);
    EXPECT_EQ(serial, parallel);

    auto reversed = serial;
    std::reverse(reversed.begin(), reversed.end());
    EXPECT_LT(ensemble_density(serial).matrix().max_abs_diff(ensemble_density(reversed).matrix()), 1e-12);
}

TEST(EstimateObservable, Examples) {
    RandomStream rng(6);
    const auto psi = random_state(1, rng);
    const auto same = estimate_observable(std::vector<StateVector>(50, psi), operators::pauli_z());
    EXPECT_EQ(same.standard_error, 0);

    std::vector<StateVector> mix;
    for (int i = 0; i < 100; ++i) {
        mix.push_back(random_state(2, rng));
    }
    EXPECT_DOUBLE_EQ(estimate_observable(mix, ComplexMatrix::identity(4)).mean, 1);

    const TrajectoryConfig cfg{1e-3, 1, 5, 10000};
    const auto est = estimate_observable(run_ensemble(damping(1), kExcited, cfg), projector(kExcited));
    EXPECT_LE(std::abs(est.mean - std::exp(-1.0)), 3 * est.standard_error);

    EXPECT_THROW(estimate_observable({psi}, operators::pauli_z()), std::invalid_argument);
    EXPECT_THROW(estimate_observable(mix, ComplexMatrix{{0, 1}, {0, 0}}), std::invalid_argument);
}

TEST(Ensemble, StatisticalErrorShrinksWithM) {
    // Quadrupling M should about halve the mean distance; 20 repeats per size
    // keep the ratio's own spread well inside the factor-of-two band.
    const auto exact = evolve(damping(1), DensityMatrix::from_pure(kExcited), 1, 1e-3);
    auto mean_distance = [&](size_t m) {
        double total = 0;
        for (uint64_t seed = 100; seed < 120; ++seed) {
            const TrajectoryConfig cfg{2e-3, 1, seed, m};
            total += trace_distance(ensemble_density(run_ensemble(damping(1), kExcited, cfg)), exact);
        }
        return total / 20;
    };
    const double ratio = mean_distance(250) / mean_distance(1000);
    EXPECT_GE(ratio, 1.0);
    EXPECT_LE(ratio, 4.0);
}

}  // namespace
}  // namespace qjump
