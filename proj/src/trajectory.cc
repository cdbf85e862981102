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

#include "qjump/trajectory/trajectory.h"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "qjump/core/parallel.h"

namespace qjump {

namespace {

/// Neumaier summation of one real stream.
struct CompensatedSum {
    double sum = 0;
    double carry = 0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + carry; }
};

double real_expectation(const StateVector &psi, const ComplexMatrix &op) {
    const auto v = op.apply(psi.amplitudes());
    Complex s = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        s += std::conj(psi[i]) * v[i];
    }
    return s.real();
}

size_t step_count(double t_final, double dt) { return static_cast<size_t>(std::ceil(t_final / dt - 1e-9)); }

}  // namespace

void TrajectoryConfig::validate() const {
    if (!(dt > 0) || !std::isfinite(dt)) {
        throw std::invalid_argument("trajectory: dt must be positive");
    }
    if (!(t_final >= 0) || !std::isfinite(t_final)) {
        throw std::invalid_argument("trajectory: t_final must be >= 0");
    }
    if (num_trajectories == 0) {
        throw std::invalid_argument("trajectory: need at least one trajectory");
    }
}

EffectiveHamiltonian effective_hamiltonian(const OpenSystem &sys) {
    ComplexMatrix h = sys.hamiltonian();
    for (const auto &ch : sys.channels()) {
        h -= (ch.op.adjoint() * ch.op) * Complex(0, 0.5 * ch.rate);
    }
    return {std::move(h)};
}

PreparedSystem::PreparedSystem(OpenSystem sys) : sys_(std::move(sys)), h_eff_(effective_hamiltonian(sys_)) {
    jdj_.reserve(sys_.channels().size());
    for (const auto &ch : sys_.channels()) {
        jdj_.push_back(ch.op.adjoint() * ch.op);
    }
}

JumpProbabilities jump_probabilities(const StateVector &state, const PreparedSystem &sys, double dt) {
    if (state.dim() != sys.system().dim()) {
        throw std::invalid_argument(fmt::format("jump_probabilities: state dim {}, system dim {}", state.dim(),
                                                sys.system().dim()));
    }
    JumpProbabilities out;
    out.per_channel.resize(sys.num_channels());
    for (size_t k = 0; k < sys.num_channels(); ++k) {
        // <J^dag J> is real and >= 0 up to rounding.
        const double p = dt * sys.system().channels()[k].rate * real_expectation(state, sys.jump_norm_op(k));
        out.per_channel[k] = std::max(0.0, p);
        out.total += out.per_channel[k];
    }
    if (out.total >= kMaxStepJumpProbability) {
        throw std::domain_error(fmt::format("jump probability {:.4g} per step is >= {}; reduce dt (now {:.4g})",
                                            out.total, kMaxStepJumpProbability, dt));
    }
    return out;
}

JumpProbabilities jump_probabilities(const StateVector &state, const OpenSystem &sys, double dt) {
    return jump_probabilities(state, PreparedSystem(sys), dt);
}

StepResult step_with_draw(const StateVector &state, const PreparedSystem &sys, double dt, double u) {
    const auto dp = jump_probabilities(state, sys, dt);
    double edge = 0;
    for (size_t k = 0; k < dp.per_channel.size(); ++k) {
        edge += dp.per_channel[k];
        if (u < edge) {
            const auto &ch = sys.system().channels()[k];
            StateVector next(ch.op.apply(state.amplitudes()));
            const double scale = std::sqrt(ch.rate * dt / dp.per_channel[k]);
            for (auto &a : next.amplitudes()) {
                a *= scale;
            }
            next.normalize();
            return {std::move(next), k};
        }
    }
    // (1 - i dt H) psi / sqrt(1 - dp)
    const auto &h = sys.effective();
    StateVector next(h.apply(state.amplitudes()));
    const Complex minus_i_dt(0, -dt);
    const double scale = 1 / std::sqrt(1 - dp.total);
    for (size_t i = 0; i < next.dim(); ++i) {
        next[i] = (state[i] + minus_i_dt * next[i]) * scale;
    }
    next.normalize();
    return {std::move(next), std::nullopt};
}

StepResult step_detailed(const StateVector &state, const PreparedSystem &sys, double dt, RandomStream &rng) {
    return step_with_draw(state, sys, dt, rng.uniform());
}

StateVector step(const StateVector &state, const PreparedSystem &sys, double dt, RandomStream &rng) {
    return step_detailed(state, sys, dt, rng).state;
}

StateVector step(const StateVector &state, const OpenSystem &sys, double dt, RandomStream &rng) {
    return step(state, PreparedSystem(sys), dt, rng);
}

TrajectoryResult run_trajectory(const PreparedSystem &sys, const StateVector &psi0, const TrajectoryConfig &cfg,
                                uint64_t index, bool record_trace) {
    cfg.validate();
    if (std::abs(psi0.norm_squared() - 1) > kNormTolerance) {
        throw std::invalid_argument("run_trajectory: initial state is not normalized");
    }
    auto rng = RandomStream::derived(cfg.seed, {index});
    const size_t steps = step_count(cfg.t_final, cfg.dt);
    TrajectoryResult out{psi0, 0, {}};
    if (record_trace) {
        out.trace.reserve(steps);
    }
    for (size_t s = 0; s < steps; ++s) {
        const double h = (s + 1 == steps) ? cfg.t_final - static_cast<double>(s) * cfg.dt : cfg.dt;
        auto r = step_detailed(out.final_state, sys, h, rng);
        out.final_state = std::move(r.state);
        if (r.jump) {
            ++out.num_jumps;
        }
        if (record_trace) {
            out.trace.push_back(out.final_state);
        }
    }
    return out;
}

TrajectoryResult run_trajectory(const OpenSystem &sys, const StateVector &psi0, const TrajectoryConfig &cfg,
                                uint64_t index, bool record_trace) {
    return run_trajectory(PreparedSystem(sys), psi0, cfg, index, record_trace);
}

std::vector<StateVector> run_ensemble(const OpenSystem &sys, const StateVector &psi0, const TrajectoryConfig &cfg,
                                      size_t threads) {
    cfg.validate();
    const PreparedSystem prepared(sys);
    std::vector<StateVector> out(cfg.num_trajectories);
    parallel_for(cfg.num_trajectories, worker_count(threads),
                 [&](size_t i) { out[i] = run_trajectory(prepared, psi0, cfg, i).final_state; });
    return out;
}

DensityMatrix ensemble_density(const std::vector<StateVector> &trajectories) {
    if (trajectories.empty()) {
        throw std::invalid_argument("ensemble_density: empty ensemble");
    }
    const size_t dim = trajectories.front().dim();
    std::vector<CompensatedSum> re(dim * dim), im(dim * dim);
    for (const auto &psi : trajectories) {
        if (psi.dim() != dim) {
            throw std::invalid_argument("ensemble_density: trajectories differ in dimension");
        }
        for (size_t r = 0; r < dim; ++r) {
            for (size_t c = 0; c < dim; ++c) {
                const Complex v = psi[r] * std::conj(psi[c]);
                re[r * dim + c].add(v.real());
                im[r * dim + c].add(v.imag());
            }
        }
    }
    const double inv = 1.0 / static_cast<double>(trajectories.size());
    ComplexMatrix rho(dim, dim);
    for (size_t r = 0; r < dim; ++r) {
        for (size_t c = 0; c < dim; ++c) {
            rho(r, c) = Complex(re[r * dim + c].value(), im[r * dim + c].value()) * inv;
        }
    }
    return DensityMatrix(std::move(rho));
}

ObservableEstimate estimate_observable(const std::vector<StateVector> &trajectories, const ComplexMatrix &op) {
    if (!op.is_hermitian(1e-10)) {
        throw std::invalid_argument("estimate_observable: observable is not Hermitian");
    }
    const size_t m = trajectories.size();
    if (m < 2) {
        throw std::invalid_argument("estimate_observable: need at least two trajectories for an error estimate");
    }
    // Shifted by the first value: exact zero spread for identical samples.
    std::vector<double> values(m);
    CompensatedSum total;
    for (size_t i = 0; i < m; ++i) {
        if (trajectories[i].dim() != op.rows()) {
            throw std::invalid_argument("estimate_observable: dimension mismatch");
        }
        values[i] = real_expectation(trajectories[i], op);
        total.add(values[i] - values[0]);
    }
    const double shift = total.value() / static_cast<double>(m);
    const double mean = values[0] + shift;
    CompensatedSum sq;
    for (double v : values) {
        const double d = (v - values[0]) - shift;
        sq.add(d * d);
    }
    const double variance = sq.value() / static_cast<double>(m - 1);
    return {mean, std::sqrt(variance / static_cast<double>(m))};
}

}  // namespace qjump
