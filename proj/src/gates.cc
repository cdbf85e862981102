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

#include "qjump/core/gates.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qjump {

namespace {

constexpr Complex I{0, 1};

ComplexMatrix pauli_matrix(char p) {
    switch (p) {
        case 'I':
            return ComplexMatrix::identity(2);
        case 'X':
            return {{0, 1}, {1, 0}};
        case 'Y':
            return {{0, -I}, {I, 0}};
        case 'Z':
            return {{1, 0}, {0, -1}};
        default:
            throw std::invalid_argument(std::string("unknown Pauli letter '") + p + "'");
    }
}

}  // namespace

GateDef GateDef::dense(std::string label, size_t arity, ComplexMatrix matrix, std::optional<double> parameter) {
    const size_t dim = size_t{1} << arity;
    if (matrix.rows() != dim || matrix.cols() != dim) {
        throw std::invalid_argument("gate " + label + ": matrix is not " + std::to_string(dim) + "x" +
                                    std::to_string(dim));
    }
    GateDef g;
    g.label_ = std::move(label);
    g.arity_ = arity;
    g.parameter_ = parameter;
    g.matrix_ = std::move(matrix);
    return g;
}

GateDef GateDef::diagonal(std::string label, size_t arity, std::vector<Complex> diag,
                          std::optional<double> parameter) {
    if (diag.size() != (size_t{1} << arity)) {
        throw std::invalid_argument("gate " + label + ": diagonal has wrong length");
    }
    GateDef g;
    g.label_ = std::move(label);
    g.arity_ = arity;
    g.parameter_ = parameter;
    g.diagonal_ = std::move(diag);
    return g;
}

GateDef GateDef::pseudo(std::string label, size_t arity) {
    GateDef g;
    g.label_ = std::move(label);
    g.arity_ = arity;
    g.pseudo_ = true;
    return g;
}

ComplexMatrix GateDef::matrix() const {
    if (pseudo_) {
        throw std::logic_error("pseudo gate " + label_ + " has no matrix");
    }
    if (is_diagonal()) {
        return ComplexMatrix::diagonal(diagonal_);
    }
    return matrix_;
}

GateDef GateDef::adjoint() const {
    GateDef g = *this;
    if (pseudo_) {
        return g;
    }
    g.label_ = label_ + "_dg";
    if (is_diagonal()) {
        for (auto &d : g.diagonal_) {
            d = std::conj(d);
        }
    } else {
        g.matrix_ = matrix_.adjoint();
    }
    return g;
}

namespace gates {

GateDef identity() { return GateDef::dense("I", 1, ComplexMatrix::identity(2)); }
GateDef x() { return GateDef::dense("X", 1, pauli_matrix('X')); }
GateDef y() { return GateDef::dense("Y", 1, pauli_matrix('Y')); }
GateDef z() { return GateDef::diagonal("Z", 1, {1, -1}); }

GateDef h() {
    const double r = 1 / std::numbers::sqrt2;
    return GateDef::dense("H", 1, {{r, r}, {r, -r}});
}

GateDef s() { return GateDef::diagonal("S", 1, {1, I}); }

GateDef rx(double theta) {
    const double c = std::cos(theta / 2), sn = std::sin(theta / 2);
    return GateDef::dense("RX", 1, {{c, -I * sn}, {-I * sn, c}}, theta);
}

GateDef ry(double theta) {
    const double c = std::cos(theta / 2), sn = std::sin(theta / 2);
    return GateDef::dense("RY", 1, {{c, -sn}, {sn, c}}, theta);
}

GateDef rz(double theta) {
    return GateDef::diagonal("RZ", 1, {std::exp(-I * (theta / 2)), std::exp(I * (theta / 2))}, theta);
}

GateDef phase(double lambda) { return GateDef::diagonal("P", 1, {1, std::exp(I * lambda)}, lambda); }

GateDef cx() {
    // Local index = control + 2 * target.
    return GateDef::dense("CX", 2, {{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}});
}

GateDef cz() { return GateDef::diagonal("CZ", 2, {1, 1, 1, -1}); }

GateDef cp(double lambda) { return GateDef::diagonal("CP", 2, {1, 1, 1, std::exp(I * lambda)}, lambda); }

GateDef swap() { return GateDef::dense("SWAP", 2, {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}); }

GateDef mcz(size_t k) {
    if (k == 0) {
        throw std::invalid_argument("mcz needs at least one qubit");
    }
    std::vector<Complex> diag(size_t{1} << k, 1.0);
    diag.back() = -1.0;
    return GateDef::diagonal("MCZ", k, std::move(diag));
}

ComplexMatrix pauli_string_matrix(std::string_view pauli) {
    if (pauli.empty()) {
        throw std::invalid_argument("empty Pauli string");
    }
    // Character b acts on local bit b, which is the *last* Kronecker factor
    // for b = 0, so build the product from the highest bit down.
    ComplexMatrix p = pauli_matrix(pauli.back());
    for (size_t b = pauli.size() - 1; b-- > 0;) {
        p = kron(p, pauli_matrix(pauli[b]));
    }
    return p;
}

GateDef pauli_rotation(std::string_view pauli, double theta) {
    const ComplexMatrix p = pauli_string_matrix(pauli);
    // exp(-i theta/2 P) = cos(theta/2) 1 - i sin(theta/2) P, since P^2 = 1.
    const size_t dim = p.rows();
    ComplexMatrix u = ComplexMatrix::identity(dim) * Complex(std::cos(theta / 2));
    u += p * Complex(0, -std::sin(theta / 2));
    return GateDef::dense("R" + std::string(pauli), pauli.size(), std::move(u), theta);
}

GateDef barrier(size_t k) { return GateDef::pseudo("BARRIER", k); }

GateDef from_label(std::string_view label, std::optional<double> parameter, size_t arity) {
    auto need_param = [&]() {
        if (!parameter) {
            throw std::invalid_argument("gate " + std::string(label) + " needs an angle");
        }
        return *parameter;
    };
    auto expect_arity = [&](size_t k, GateDef g) {
        if (arity != k) {
            throw std::invalid_argument("gate " + std::string(label) + " acts on " + std::to_string(k) +
                                        " qubits, got " + std::to_string(arity));
        }
        return g;
    };
    if (label == "I") return expect_arity(1, identity());
    if (label == "X") return expect_arity(1, x());
    if (label == "Y") return expect_arity(1, y());
    if (label == "Z") return expect_arity(1, z());
    if (label == "H") return expect_arity(1, h());
    if (label == "S") return expect_arity(1, s());
    if (label == "P") return expect_arity(1, phase(need_param()));
    if (label == "CX") return expect_arity(2, cx());
    if (label == "CZ") return expect_arity(2, cz());
    if (label == "CP") return expect_arity(2, cp(need_param()));
    if (label == "SWAP") return expect_arity(2, swap());
    if (label == "MCZ") return mcz(arity);
    if (label == "BARRIER") return barrier(arity);
    if (label.size() >= 2 && label[0] == 'R' && label.substr(1).find_first_not_of("IXYZ") == std::string_view::npos) {
        const auto pauli = label.substr(1);
        if (pauli.size() != arity) {
            throw std::invalid_argument("gate " + std::string(label) + " arity mismatch");
        }
        const double theta = need_param();
        if (pauli == "X") return rx(theta);
        if (pauli == "Y") return ry(theta);
        if (pauli == "Z") return rz(theta);
        return pauli_rotation(pauli, theta);
    }
    throw std::invalid_argument("unknown gate label '" + std::string(label) + "'");
}

}  // namespace gates

}  // namespace qjump
