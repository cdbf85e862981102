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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qjump/core/gates.h"
#include "qjump/core/state_vector.h"

namespace qjump {

/// One operation of a circuit. Gates are immutable and shared between DAG
/// copies, so copying a DAG to inject an error does not copy matrices.
struct OpNode {
    std::shared_ptr<const GateDef> gate;
    std::vector<size_t> qargs;

    bool injectable() const { return !gate->is_pseudo(); }
};

/// A circuit as a DAG over qubit wires.
///
/// Nodes are held in a topological order; with insertion-order tie breaking
/// that order is exactly the order in which nodes were appended, so node i
/// names the same operation in every identical build. Each node records, per
/// qarg, its predecessor on that wire (the wire edges of the DAG).
class CircuitDag {
   public:
    CircuitDag() = default;
    explicit CircuitDag(size_t num_qubits) : num_qubits_(num_qubits), last_on_wire_(num_qubits) {}

    size_t num_qubits() const { return num_qubits_; }
    size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }

    /// Adds a node at the end of every wire it touches.
    void apply_operation_back(GateDef gate, std::vector<size_t> qargs);
    void apply_operation_back(std::shared_ptr<const GateDef> gate, std::vector<size_t> qargs);

    /// Nodes in deterministic topological order.
    const std::vector<OpNode> &op_nodes() const { return nodes_; }
    const OpNode &node(size_t index) const { return nodes_.at(index); }

    /// Indices (into op_nodes()) of unitary nodes; barriers and other
    /// pseudo nodes are never error sites.
    std::vector<size_t> injectable_nodes() const;

    /// Predecessor of `index` on the wire of its qarg at position `pos`.
    std::optional<size_t> wire_predecessor(size_t index, size_t pos) const;
    /// Distinct successors of `index` over all its wires, ascending.
    std::vector<size_t> successors(size_t index) const;

    /// Kahn's algorithm over the wire edges, smallest index first among
    /// ready nodes. Always equals 0..size()-1; kept as an explicit check.
    std::vector<size_t> topological_order() const;

    /// Returns a copy where `replacement` nodes are placed right after node
    /// `index`, which itself stays in place.
    CircuitDag with_nodes_after(size_t index, std::vector<OpNode> replacement) const;

    /// One node per line: `<gate> <angle?> <qubits...>`, preceded by a
    /// `qubits N` header.
    std::string dump() const;
    static CircuitDag parse(std::string_view text);

    bool operator==(const CircuitDag &other) const;

   private:
    void link_last(size_t index);
    void rebuild_edges();

    size_t num_qubits_ = 0;
    std::vector<OpNode> nodes_;
    std::vector<std::vector<std::optional<size_t>>> preds_;
    std::vector<std::optional<size_t>> last_on_wire_;
};

/// Deterministic node list; identical to dag.op_nodes().
inline const std::vector<OpNode> &op_nodes(const CircuitDag &dag) { return dag.op_nodes(); }

/// Appends one copy of the single-qubit `error` immediately after node
/// `index` on every wire that node touches. Throws std::out_of_range for a
/// bad index and std::invalid_argument for a pseudo node or a multi-qubit
/// error gate.
CircuitDag inject_error(const CircuitDag &dag, const GateDef &error, size_t index);
CircuitDag inject_error(const CircuitDag &dag, std::shared_ptr<const GateDef> error, size_t index);

/// Longest wire-dependency path, counting unitary op nodes.
size_t depth(const CircuitDag &dag);

/// Applies the nodes in op_nodes() order to `initial`.
StateVector execute(const CircuitDag &dag, const StateVector &initial);
/// Executes on |0...0>.
StateVector execute(const CircuitDag &dag);

}  // namespace qjump
