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
#include <string_view>
#include <vector>

#include "qjump/core/gates.h"

namespace qjump {

/// A rational multiple of pi, num/den * pi, kept exact so that angles
/// round-trip through text as "pi/8" rather than as floats.
struct Angle {
    int64_t num = 0;
    int64_t den = 1;

    double radians() const;
    /// "pi/8", "3pi/16", "-pi/4", "pi", "0".
    std::string to_string() const;
    /// Accepts the to_string() forms plus "3*pi/16". Result is reduced.
    static Angle parse(std::string_view text);

    bool operator==(const Angle &other) const = default;
};

/// pi/2, pi/4, pi/8, pi/16, pi/32.
const std::vector<Angle> &standard_rz_angles();
bool is_standard_rz_angle(const Angle &a);

/// Pauli draws X, Y or Z uniformly per run; the others are fixed gates.
enum class ErrorKind { X, Y, Z, RZ, Pauli };

std::string to_string(ErrorKind kind);
ErrorKind parse_error_kind(std::string_view text);

/// What to inject: kind (and angle for RZ), how many copies, and where.
/// An empty placement means "uniform random over injectable nodes".
struct ErrorSpec {
    ErrorKind kind = ErrorKind::Pauli;
    std::optional<Angle> angle;
    unsigned count = 1;
    std::vector<size_t> placement;

    /// count in {0, 1, 2} (0 is the noiseless control), angle iff RZ, and
    /// placement either empty or of length count.
    void validate(bool allow_free_angle = false) const;
};

/// The single-qubit error gate of a concrete kind (not Pauli).
GateDef error_gate(ErrorKind kind, const std::optional<Angle> &angle = std::nullopt);

}  // namespace qjump
