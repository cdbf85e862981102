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
#include <optional>
#include <vector>

#include "qjump/core/complex_matrix.h"
#include "qjump/core/random.h"
#include "qjump/core/state_vector.h"
#include "qjump/lindblad/lindblad.h"

namespace qjump {

/// Largest total jump probability accepted in one step.
inline constexpr double kMaxStepJumpProbability = 0.1;

struct TrajectoryConfig {
    double dt = 1e-3;
    double t_final = 0;
    uint64_t seed = 0;
    size_t num_trajectories = 1;

    /// Throws std::invalid_argument on non-positive dt, negative time or zero trajectories.
    void validate() const;
};

struct EffectiveHamiltonian {
    ComplexMatrix matrix;
};

/// H_S - (i/2) sum_k g_k J_k^dag J_k.
EffectiveHamiltonian effective_hamiltonian(const OpenSystem &sys);

/// An OpenSystem with H_eff and every J^dag J computed once.
class PreparedSystem {
   public:
    explicit PreparedSystem(OpenSystem sys);

    const OpenSystem &system() const { return sys_; }
    const ComplexMatrix &effective() const { return h_eff_.matrix; }
    const ComplexMatrix &jump_norm_op(size_t k) const { return jdj_[k]; }
    size_t num_channels() const { return sys_.channels().size(); }

   private:
    OpenSystem sys_;
    EffectiveHamiltonian h_eff_;
    std::vector<ComplexMatrix> jdj_;
};

struct JumpProbabilities {
    std::vector<double> per_channel;
    double total = 0;
};

/// dp_k = dt g_k <psi|J_k^dag J_k|psi>. Throws std::domain_error when the
/// total reaches kMaxStepJumpProbability (dt too large).
JumpProbabilities jump_probabilities(const StateVector &state, const PreparedSystem &sys, double dt);
JumpProbabilities jump_probabilities(const StateVector &state, const OpenSystem &sys, double dt);

struct StepResult {
    StateVector state;
    /// Channel that fired, or empty for the no-jump branch.
    std::optional<size_t> jump;
};

/// One step with an explicit uniform draw u in [0, 1): u < dp_1 selects
/// channel 1, u < dp_1 + dp_2 channel 2, ..., u >= dp no jump.
StepResult step_with_draw(const StateVector &state, const PreparedSystem &sys, double dt, double u);

StepResult step_detailed(const StateVector &state, const PreparedSystem &sys, double dt, RandomStream &rng);
StateVector step(const StateVector &state, const PreparedSystem &sys, double dt, RandomStream &rng);
StateVector step(const StateVector &state, const OpenSystem &sys, double dt, RandomStream &rng);

struct TrajectoryResult {
    StateVector final_state;
    size_t num_jumps = 0;
    /// State after each step (empty unless requested).
    std::vector<StateVector> trace;
};

/// ceil(t_final / dt) steps (the last one shortened to land on t_final),
/// drawing from RandomStream::derived(cfg.seed, {index}).
TrajectoryResult run_trajectory(const PreparedSystem &sys, const StateVector &psi0, const TrajectoryConfig &cfg,
                                uint64_t index, bool record_trace = false);
TrajectoryResult run_trajectory(const OpenSystem &sys, const StateVector &psi0, const TrajectoryConfig &cfg,
                                uint64_t index, bool record_trace = false);

/// Final states of trajectories 0..M-1, in index order. `threads` = 0 uses
/// worker_count(); the result does not depend on the thread count.
std::vector<StateVector> run_ensemble(const OpenSystem &sys, const StateVector &psi0, const TrajectoryConfig &cfg,
                                      size_t threads = 0);

/// (1/M) sum |psi_i><psi_i| with compensated summation.
DensityMatrix ensemble_density(const std::vector<StateVector> &trajectories);

struct ObservableEstimate {
    double mean = 0;
    double standard_error = 0;
};

/// Sample mean of <psi_i|O|psi_i> and its standard error s / sqrt(M).
/// Throws std::invalid_argument when O is not Hermitian or M < 2.
ObservableEstimate estimate_observable(const std::vector<StateVector> &trajectories, const ComplexMatrix &op);

}  // namespace qjump
