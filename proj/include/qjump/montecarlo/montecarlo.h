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
#include <string>
#include <vector>

#include "qjump/algorithms/algorithms.h"
#include "qjump/circuit/circuit_dag.h"
#include "qjump/circuit/error_spec.h"
#include "qjump/core/random.h"

namespace qjump {

/// ceil(1 / (sigma^2 N)). A quotient within 1e-9 (relative) of an integer
/// counts as that integer, so 1/(0.01^2 * 8) gives 1250 and not 1251.
size_t num_runs(double sigma, double capacity_n);

/// 100 * sqrt(p (1 - p) / runs) with p = successes / runs.
double binomial_stderr(size_t successes, size_t runs);

/// `error.count` node indices drawn uniformly, with replacement, from the
/// injectable nodes of `dag`. Throws std::invalid_argument when there are none.
std::vector<size_t> place_errors(const CircuitDag &dag, const ErrorSpec &error, RandomStream &rng);

/// Injects `error` after each listed node. Indices refer to `dag`; they are
/// applied from the highest down so that each one still names its node.
CircuitDag inject_errors(const CircuitDag &dag, std::shared_ptr<const GateDef> error,
                         const std::vector<size_t> &indices);

struct ExperimentSpec {
    AlgorithmName algorithm = AlgorithmName::BernsteinVazirani;
    size_t num_qubits = 3;
    ErrorSpec error;
    double sigma_target = 0.01;
    double capacity_n = 8;
    uint64_t master_seed = 0;
    std::optional<size_t> runs_override;
    bool allow_free_angle = false;

    void validate() const;
    size_t runs() const;
    /// Stable text id of the cell; hashed into the per-run stream path.
    std::string case_id() const;
};

/// Runs and successes of the runs that drew one particular Pauli.
struct KindTally {
    ErrorKind kind = ErrorKind::X;
    size_t runs = 0;
    size_t successes = 0;
};

struct SuccessReport {
    AlgorithmName algorithm = AlgorithmName::BernsteinVazirani;
    size_t num_qubits = 0;
    /// Depth of the error-free circuit.
    size_t depth = 0;
    ErrorKind kind = ErrorKind::Pauli;
    /// Row holds only the runs of a Pauli case that drew `kind`.
    bool pauli_component = false;
    std::optional<Angle> angle;
    unsigned error_count = 0;
    size_t runs = 0;
    size_t successes = 0;
    double success_pct = 0;
    double stderr_pct = 0;
    uint64_t seed = 0;
    /// X, Y, Z tallies for Pauli cases with errors; empty otherwise.
    std::vector<KindTally> per_kind;

    /// One row per entry of per_kind, with pauli_component set.
    std::vector<SuccessReport> breakdown() const;

    bool operator==(const SuccessReport &other) const;
};

/// Fills success_pct and stderr_pct from successes / runs.
void finish_report(SuccessReport &report);

/// One cell: build the instance, then per run derive a stream from
/// (master_seed, case id, run), draw the Pauli kind (Pauli cases) and the
/// placement, inject, execute and judge against the ideal run. `threads` = 0
/// uses worker_count(); the report does not depend on it.
SuccessReport run_case(const ExperimentSpec &spec, size_t threads = 0);

struct SweepGrid {
    std::vector<AlgorithmName> algorithms;
    /// Empty: default_grid_sizes() of each algorithm.
    std::vector<size_t> sizes;
    std::vector<ErrorKind> kinds;
    /// Used for RZ cells only.
    std::vector<Angle> angles;
    std::vector<unsigned> counts{1};
    double sigma_target = 0.01;
    double capacity_n = 8;
    uint64_t master_seed = 0;
    std::optional<size_t> runs_override;
    bool allow_free_angle = false;
};

/// Cells in algorithm, size, kind, angle, count order.
std::vector<ExperimentSpec> expand(const SweepGrid &grid);
std::vector<SuccessReport> sweep(const SweepGrid &grid, size_t threads = 0);

/// Exact success probability of a uniformly placed error (every placement
/// enumerated, Pauli kinds weighted 1/3). Cost grows as nodes^count; meant
/// for small circuits.
double exact_success_probability(const AlgorithmInstance &instance, const ErrorSpec &error);

/// Spearman rank correlation with average ranks for ties. NaN when either
/// side has no spread.
double spearman(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace qjump
