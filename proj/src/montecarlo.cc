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

#include "qjump/montecarlo/montecarlo.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "qjump/core/parallel.h"

namespace qjump {

namespace {

constexpr ErrorKind kPaulis[] = {ErrorKind::X, ErrorKind::Y, ErrorKind::Z};
}  // namespace

size_t num_runs(double sigma, double capacity_n) {
    if (!(sigma > 0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("num_runs: sigma must be positive");
    }
    if (!(capacity_n >= 1) || !std::isfinite(capacity_n)) {
        throw std::invalid_argument("num_runs: N must be >= 1");
    }
    const double x = 1.0 / (sigma * sigma * capacity_n);
    const double r = std::round(x);
    if (std::abs(x - r) <= 1e-9 * x) {
        return static_cast<size_t>(std::max(1.0, r));
    }
    return static_cast<size_t>(std::ceil(x));
}

double binomial_stderr(size_t successes, size_t runs) {
    if (runs == 0) {
        throw std::invalid_argument("binomial_stderr: runs must be >= 1");
    }
    if (successes > runs) {
        throw std::invalid_argument("binomial_stderr: more successes than runs");
    }
    const double p = static_cast<double>(successes) / static_cast<double>(runs);
    return 100.0 * std::sqrt(p * (1 - p) / static_cast<double>(runs));
}

std::vector<size_t> place_errors(const CircuitDag &dag, const ErrorSpec &error, RandomStream &rng) {
    const auto sites = dag.injectable_nodes();
    if (sites.empty()) {
        throw std::invalid_argument("place_errors: circuit has no injectable nodes");
    }
    std::vector<size_t> out(error.count);
    for (auto &idx : out) {
        idx = sites[rng.below(sites.size())];
    }
    return out;
}

CircuitDag inject_errors(const CircuitDag &dag, std::shared_ptr<const GateDef> error,
                         const std::vector<size_t> &indices) {
    std::vector<size_t> order = indices;
    std::sort(order.begin(), order.end(), std::greater<>());
    CircuitDag out = dag;
    for (size_t idx : order) {
        out = inject_error(out, error, idx);
    }
    return out;
}

void ExperimentSpec::validate() const {
    error.validate(allow_free_angle);
    if (!(sigma_target > 0) || !(sigma_target <= 1)) {
        throw std::invalid_argument(fmt::format("sigma {} must lie in (0, 1]", sigma_target));
    }
    if (!(capacity_n >= 1) || !std::isfinite(capacity_n)) {
        throw std::invalid_argument(fmt::format("capacity N {} must be >= 1", capacity_n));
    }
    if (runs_override && *runs_override == 0) {
        throw std::invalid_argument("run count override must be >= 1");
    }
    if (num_qubits < min_total_qubits(algorithm)) {
        throw std::invalid_argument(fmt::format("{} needs at least {} qubits", display_name(algorithm),
                                                min_total_qubits(algorithm)));
    }
}

size_t ExperimentSpec::runs() const { return runs_override ? *runs_override : num_runs(sigma_target, capacity_n); }

std::string ExperimentSpec::case_id() const {
    return fmt::format("{}/{}/{}/{}/{}", to_string(algorithm), num_qubits, to_string(error.kind),
                       error.angle ? error.angle->to_string() : "", error.count);
}

void finish_report(SuccessReport &report) {
    if (report.runs == 0) {
        report.success_pct = 0;
        report.stderr_pct = 0;
        return;
    }
    report.success_pct = 100.0 * static_cast<double>(report.successes) / static_cast<double>(report.runs);
    report.stderr_pct = binomial_stderr(report.successes, report.runs);
}

std::vector<SuccessReport> SuccessReport::breakdown() const {
    std::vector<SuccessReport> out;
    for (const auto &t : per_kind) {
        SuccessReport row = *this;
        row.kind = t.kind;
        row.pauli_component = true;
        row.runs = t.runs;
        row.successes = t.successes;
        row.per_kind.clear();
        finish_report(row);
        out.push_back(std::move(row));
    }
    return out;
}

bool SuccessReport::operator==(const SuccessReport &o) const {
    auto same_tallies = [&] {
        if (per_kind.size() != o.per_kind.size()) {
            return false;
        }
        for (size_t i = 0; i < per_kind.size(); ++i) {
            if (per_kind[i].kind != o.per_kind[i].kind || per_kind[i].runs != o.per_kind[i].runs ||
                per_kind[i].successes != o.per_kind[i].successes) {
                return false;
            }
        }
        return true;
    };
    return algorithm == o.algorithm && num_qubits == o.num_qubits && depth == o.depth && kind == o.kind &&
           pauli_component == o.pauli_component && angle == o.angle && error_count == o.error_count &&
           runs == o.runs && successes == o.successes && success_pct == o.success_pct &&
           stderr_pct == o.stderr_pct && seed == o.seed && same_tallies();
}

SuccessReport run_case(const ExperimentSpec &spec, size_t threads) {
    spec.validate();
    const AlgorithmInstance instance = build_for_size(spec.algorithm, spec.num_qubits, spec.master_seed);
    const StateVector ideal = execute(instance.dag);
    if (instance.dag.injectable_nodes().empty()) {
        throw std::invalid_argument("run_case: circuit has no injectable nodes");
    }
    for (size_t idx : spec.error.placement) {
        if (idx >= instance.dag.size() || !instance.dag.node(idx).injectable()) {
            throw std::invalid_argument(fmt::format("placement {} is not an injectable node", idx));
        }
    }

    const bool pauli = spec.error.kind == ErrorKind::Pauli;
    std::shared_ptr<const GateDef> fixed_gate;
    std::vector<std::shared_ptr<const GateDef>> pauli_gates;
    if (pauli) {
        for (ErrorKind k : kPaulis) {
            pauli_gates.push_back(std::make_shared<const GateDef>(error_gate(k)));
        }
    } else {
        fixed_gate = std::make_shared<const GateDef>(error_gate(spec.error.kind, spec.error.angle));
    }

    const size_t runs = spec.runs();
    const uint64_t case_hash = hash_label(spec.case_id());
    std::vector<uint8_t> ok(runs, 0);
    std::vector<uint8_t> drawn(runs, 0);

    if (spec.error.count == 0) {
        // No error is drawn or injected, so every run is the ideal circuit.
        const bool verdict = instance.predicate(ideal, ideal);
        std::fill(ok.begin(), ok.end(), verdict ? 1 : 0);
    } else {
        parallel_for(runs, worker_count(threads), [&](size_t r) {
            auto rng = RandomStream::derived(spec.master_seed, {case_hash, r});
            std::shared_ptr<const GateDef> gate = fixed_gate;
            if (pauli) {
                drawn[r] = static_cast<uint8_t>(rng.below(3));
                gate = pauli_gates[drawn[r]];
            }
            const std::vector<size_t> sites =
                spec.error.placement.empty() ? place_errors(instance.dag, spec.error, rng) : spec.error.placement;
            const StateVector final_state = execute(inject_errors(instance.dag, gate, sites));
            ok[r] = instance.predicate(final_state, ideal) ? 1 : 0;
        });
    }

    SuccessReport report;
    report.algorithm = spec.algorithm;
    report.num_qubits = spec.num_qubits;
    report.depth = depth(instance.dag);
    report.kind = spec.error.kind;
    report.angle = spec.error.angle;
    report.error_count = spec.error.count;
    report.runs = runs;
    report.seed = spec.master_seed;
    report.successes = static_cast<size_t>(std::count(ok.begin(), ok.end(), uint8_t{1}));
    // Nothing is drawn for the noiseless control, so it has no tallies.
    if (pauli && spec.error.count > 0) {
        for (ErrorKind k : kPaulis) {
            report.per_kind.push_back(KindTally{k, 0, 0});
        }
        for (size_t r = 0; r < runs; ++r) {
            auto &t = report.per_kind[drawn[r]];
            ++t.runs;
            t.successes += ok[r];
        }
    }
    finish_report(report);
    return report;
}

std::vector<ExperimentSpec> expand(const SweepGrid &grid) {
    std::vector<ExperimentSpec> out;
    for (AlgorithmName name : grid.algorithms) {
        const std::vector<size_t> sizes = grid.sizes.empty() ? default_grid_sizes(name) : grid.sizes;
        for (size_t q : sizes) {
            for (ErrorKind kind : grid.kinds) {
                std::vector<std::optional<Angle>> angles;
                if (kind == ErrorKind::RZ) {
                    if (grid.angles.empty()) {
                        throw std::invalid_argument("sweep: RZ cells need at least one angle");
                    }
                    angles.assign(grid.angles.begin(), grid.angles.end());
                } else {
                    angles.push_back(std::nullopt);
                }
                for (const auto &angle : angles) {
                    for (unsigned count : grid.counts) {
                        ExperimentSpec spec;
                        spec.algorithm = name;
                        spec.num_qubits = q;
                        spec.error.kind = kind;
                        spec.error.angle = angle;
                        spec.error.count = count;
                        spec.sigma_target = grid.sigma_target;
                        spec.capacity_n = grid.capacity_n;
                        spec.master_seed = grid.master_seed;
                        spec.runs_override = grid.runs_override;
                        spec.allow_free_angle = grid.allow_free_angle;
                        spec.validate();
                        out.push_back(std::move(spec));
                    }
                }
            }
        }
    }
    return out;
}

std::vector<SuccessReport> sweep(const SweepGrid &grid, size_t threads) {
    std::vector<SuccessReport> out;
    for (const auto &spec : expand(grid)) {
        out.push_back(run_case(spec, threads));
    }
    return out;
}

double exact_success_probability(const AlgorithmInstance &instance, const ErrorSpec &error) {
    error.validate(true);
    const StateVector ideal = execute(instance.dag);
    if (error.count == 0) {
        return instance.predicate(ideal, ideal) ? 1.0 : 0.0;
    }
    std::vector<std::shared_ptr<const GateDef>> gates;
    if (error.kind == ErrorKind::Pauli) {
        for (ErrorKind k : kPaulis) {
            gates.push_back(std::make_shared<const GateDef>(error_gate(k)));
        }
    } else {
        gates.push_back(std::make_shared<const GateDef>(error_gate(error.kind, error.angle)));
    }
    std::vector<std::vector<size_t>> placements;
    if (!error.placement.empty()) {
        placements.push_back(error.placement);
    } else {
        const auto sites = instance.dag.injectable_nodes();
        if (sites.empty()) {
            throw std::invalid_argument("exact_success_probability: no injectable nodes");
        }
        std::vector<size_t> cursor(error.count, 0);
        while (true) {
            std::vector<size_t> p(error.count);
            for (size_t i = 0; i < error.count; ++i) {
                p[i] = sites[cursor[i]];
            }
            placements.push_back(std::move(p));
            size_t i = 0;
            while (i < cursor.size() && ++cursor[i] == sites.size()) {
                cursor[i++] = 0;
            }
            if (i == cursor.size()) {
                break;
            }
        }
    }
    size_t good = 0;
    for (const auto &g : gates) {
        for (const auto &p : placements) {
            good += instance.predicate(execute(inject_errors(instance.dag, g, p)), ideal) ? 1 : 0;
        }
    }
    return static_cast<double>(good) / static_cast<double>(gates.size() * placements.size());
}

namespace {

std::vector<double> average_ranks(const std::vector<double> &v) {
    std::vector<size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    for (size_t i = 0; i < idx.size();) {
        size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) {
            ++j;
        }
        const double r = 0.5 * static_cast<double>(i + j) + 1;
        for (size_t k = i; k <= j; ++k) {
            rank[idx[k]] = r;
        }
        i = j + 1;
    }
    return rank;
}

}  // namespace

double spearman(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("spearman: need two equal-length samples of size >= 2");
    }
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0 || syy == 0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace qjump
