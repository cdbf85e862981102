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

#include "qjump/circuit/circuit_dag.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace qjump {

namespace {

bool takes_parameter(std::string_view label) {
    return label == "P" || label == "CP" ||
           (label.size() >= 2 && label[0] == 'R' && label.substr(1).find_first_not_of("IXYZ") == std::string_view::npos);
}

}  // namespace

void CircuitDag::apply_operation_back(GateDef gate, std::vector<size_t> qargs) {
    apply_operation_back(std::make_shared<const GateDef>(std::move(gate)), std::move(qargs));
}

void CircuitDag::apply_operation_back(std::shared_ptr<const GateDef> gate, std::vector<size_t> qargs) {
    if (qargs.size() != gate->arity()) {
        throw std::invalid_argument(fmt::format("{} expects {} qubits, got {}", gate->label(), gate->arity(),
                                                qargs.size()));
    }
    for (size_t i = 0; i < qargs.size(); ++i) {
        if (qargs[i] >= num_qubits_) {
            throw std::out_of_range(fmt::format("{}: qubit {} out of range for {} qubits", gate->label(), qargs[i],
                                                num_qubits_));
        }
        for (size_t j = 0; j < i; ++j) {
            if (qargs[i] == qargs[j]) {
                throw std::invalid_argument(fmt::format("{}: repeated qubit {}", gate->label(), qargs[i]));
            }
        }
    }
    nodes_.push_back(OpNode{std::move(gate), std::move(qargs)});
    link_last(nodes_.size() - 1);
}

void CircuitDag::link_last(size_t index) {
    const auto &qargs = nodes_[index].qargs;
    std::vector<std::optional<size_t>> preds(qargs.size());
    for (size_t pos = 0; pos < qargs.size(); ++pos) {
        preds[pos] = last_on_wire_[qargs[pos]];
        last_on_wire_[qargs[pos]] = index;
    }
    preds_.push_back(std::move(preds));
}

void CircuitDag::rebuild_edges() {
    preds_.clear();
    last_on_wire_.assign(num_qubits_, std::nullopt);
    for (size_t i = 0; i < nodes_.size(); ++i) {
        link_last(i);
    }
}

std::vector<size_t> CircuitDag::injectable_nodes() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].injectable()) {
            out.push_back(i);
        }
    }
    return out;
}

std::optional<size_t> CircuitDag::wire_predecessor(size_t index, size_t pos) const { return preds_.at(index).at(pos); }

std::vector<size_t> CircuitDag::successors(size_t index) const {
    if (index >= nodes_.size()) {
        throw std::out_of_range("successors: node index out of range");
    }
    std::set<size_t> out;
    for (size_t j = index + 1; j < nodes_.size(); ++j) {
        for (const auto &p : preds_[j]) {
            if (p == index) {
                out.insert(j);
            }
        }
    }
    return {out.begin(), out.end()};
}

std::vector<size_t> CircuitDag::topological_order() const {
    std::vector<size_t> indegree(nodes_.size(), 0);
    std::vector<std::vector<size_t>> succ(nodes_.size());
    for (size_t j = 0; j < nodes_.size(); ++j) {
        std::set<size_t> distinct;
        for (const auto &p : preds_[j]) {
            if (p) {
                distinct.insert(*p);
            }
        }
        indegree[j] = distinct.size();
        for (size_t p : distinct) {
            succ[p].push_back(j);
        }
    }
    std::priority_queue<size_t, std::vector<size_t>, std::greater<>> ready;
    for (size_t j = 0; j < nodes_.size(); ++j) {
        if (indegree[j] == 0) {
            ready.push(j);
        }
    }
    std::vector<size_t> order;
    order.reserve(nodes_.size());
    while (!ready.empty()) {
        const size_t j = ready.top();
        ready.pop();
        order.push_back(j);
        for (size_t s : succ[j]) {
            if (--indegree[s] == 0) {
                ready.push(s);
            }
        }
    }
    return order;
}

CircuitDag CircuitDag::with_nodes_after(size_t index, std::vector<OpNode> replacement) const {
    if (index >= nodes_.size()) {
        throw std::out_of_range(fmt::format("node index {} out of range for {} nodes", index, nodes_.size()));
    }
    CircuitDag out(num_qubits_);
    out.nodes_.reserve(nodes_.size() + replacement.size());
    out.nodes_.insert(out.nodes_.end(), nodes_.begin(), nodes_.begin() + static_cast<std::ptrdiff_t>(index) + 1);
    out.nodes_.insert(out.nodes_.end(), std::make_move_iterator(replacement.begin()),
                      std::make_move_iterator(replacement.end()));
    out.nodes_.insert(out.nodes_.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(index) + 1, nodes_.end());
    out.rebuild_edges();
    return out;
}

std::string CircuitDag::dump() const {
    std::string out = fmt::format("qubits {}\n", num_qubits_);
    for (const auto &n : nodes_) {
        out += n.gate->label();
        if (n.gate->parameter()) {
            out += fmt::format(" {:.17g}", *n.gate->parameter());
        }
        for (size_t q : n.qargs) {
            out += fmt::format(" {}", q);
        }
        out += '\n';
    }
    return out;
}

CircuitDag CircuitDag::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<CircuitDag> dag;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream tokens(line);
        std::string label;
        if (!(tokens >> label)) {
            continue;
        }
        if (!dag) {
            size_t n = 0;
            if (label != "qubits" || !(tokens >> n)) {
                throw std::invalid_argument(fmt::format("line {}: expected 'qubits N' header", line_no));
            }
            dag.emplace(n);
            continue;
        }
        std::optional<double> parameter;
        if (takes_parameter(label)) {
            std::string angle;
            if (!(tokens >> angle)) {
                throw std::invalid_argument(fmt::format("line {}: {} needs an angle", line_no, label));
            }
            parameter = std::stod(angle);
        }
        std::vector<size_t> qargs;
        size_t q = 0;
        while (tokens >> q) {
            qargs.push_back(q);
        }
        if (!tokens.eof()) {
            throw std::invalid_argument(fmt::format("line {}: malformed qubit list", line_no));
        }
        try {
            GateDef gate = gates::from_label(label, parameter, qargs.size());
            dag->apply_operation_back(std::move(gate), std::move(qargs));
        } catch (const std::exception &e) {
            throw std::invalid_argument(fmt::format("line {}: {}", line_no, e.what()));
        }
    }
    if (!dag) {
        throw std::invalid_argument("circuit text has no 'qubits N' header");
    }
    return *dag;
}

bool CircuitDag::operator==(const CircuitDag &other) const {
    if (num_qubits_ != other.num_qubits_ || nodes_.size() != other.nodes_.size()) {
        return false;
    }
    for (size_t i = 0; i < nodes_.size(); ++i) {
        const auto &a = nodes_[i];
        const auto &b = other.nodes_[i];
        if (a.qargs != b.qargs || a.gate->label() != b.gate->label() || a.gate->parameter() != b.gate->parameter() ||
            a.gate->is_pseudo() != b.gate->is_pseudo()) {
            return false;
        }
        if (a.gate->diagonal_entries() != b.gate->diagonal_entries() ||
            a.gate->dense_matrix() != b.gate->dense_matrix()) {
            return false;
        }
    }
    return true;
}

CircuitDag inject_error(const CircuitDag &dag, const GateDef &error, size_t index) {
    return inject_error(dag, std::make_shared<const GateDef>(error), index);
}

CircuitDag inject_error(const CircuitDag &dag, std::shared_ptr<const GateDef> error, size_t index) {
    if (index >= dag.size()) {
        throw std::out_of_range(fmt::format("error index {} out of range for {} nodes", index, dag.size()));
    }
    if (error->arity() != 1 || error->is_pseudo()) {
        throw std::invalid_argument("error gate must be a single-qubit unitary, got " + error->label());
    }
    const OpNode &target = dag.node(index);
    if (!target.injectable()) {
        throw std::invalid_argument(fmt::format("node {} ({}) is not an injectable op node", index,
                                                target.gate->label()));
    }
    std::vector<OpNode> added;
    added.reserve(target.qargs.size());
    for (size_t q : target.qargs) {
        added.push_back(OpNode{error, {q}});
    }
    return dag.with_nodes_after(index, std::move(added));
}

size_t depth(const CircuitDag &dag) {
    std::vector<size_t> layer(dag.size(), 0);
    size_t deepest = 0;
    for (size_t i = 0; i < dag.size(); ++i) {
        size_t before = 0;
        for (size_t pos = 0; pos < dag.node(i).qargs.size(); ++pos) {
            if (const auto p = dag.wire_predecessor(i, pos)) {
                before = std::max(before, layer[*p]);
            }
        }
        layer[i] = before + (dag.node(i).injectable() ? 1 : 0);
        deepest = std::max(deepest, layer[i]);
    }
    return deepest;
}

StateVector execute(const CircuitDag &dag, const StateVector &initial) {
    if (initial.num_qubits() != dag.num_qubits()) {
        throw std::invalid_argument(fmt::format("execute: circuit has {} qubits, state has {}", dag.num_qubits(),
                                                initial.num_qubits()));
    }
    StateVector state = initial;
    for (const auto &n : dag.op_nodes()) {
        state.apply(*n.gate, n.qargs);
    }
    return state;
}

StateVector execute(const CircuitDag &dag) { return execute(dag, StateVector(dag.num_qubits())); }

}  // namespace qjump
