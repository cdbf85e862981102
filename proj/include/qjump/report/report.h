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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qjump/algorithms/algorithms.h"
#include "qjump/circuit/error_spec.h"
#include "qjump/montecarlo/montecarlo.h"

namespace qjump {

enum class Command { Equivalence, Case, Sweep, DumpCircuit };
enum class OutputFormat { Csv, Json, Table };

std::string to_string(Command c);
std::string to_string(OutputFormat f);

struct RunConfig {
    Command command = Command::Case;

    // case / sweep / dump-circuit. `case` and `dump-circuit` hold exactly
    // one algorithm and one size; a sweep with no sizes uses the default grid.
    std::vector<AlgorithmName> algorithms;
    std::vector<size_t> qubits;
    std::vector<ErrorKind> kinds;
    std::vector<Angle> angles;
    std::vector<unsigned> counts;
    double sigma = 0.01;
    double capacity_n = 8;
    std::optional<size_t> runs;
    uint64_t seed = 0;
    bool free_angle = false;
    /// Adds pauli-x/-y/-z rows after each Pauli row of a CSV.
    bool per_kind = true;

    // equivalence
    std::vector<double> dts{1e-2, 5e-3, 1e-3};
    std::vector<size_t> ensemble_sizes{1, 100, 2500, 10000};
    double gamma = 1;
    double t_final = 1;

    OutputFormat format = OutputFormat::Csv;
    std::optional<std::string> out;
};

/// Thrown by parse_config. exit_code 0 means help was requested and what()
/// holds the help text.
class ConfigError : public std::runtime_error {
   public:
    ConfigError(const std::string &message, int exit_code) : std::runtime_error(message), exit_code_(exit_code) {}
    int exit_code() const { return exit_code_; }

   private:
    int exit_code_;
};

/// Parses a command line (argv[0] is the program name). `--config FILE`
/// reads the same options from a TOML/INI file; unknown flags or keys,
/// bad enum values and missing fields raise ConfigError.
RunConfig parse_config(int argc, const char *const *argv);
RunConfig parse_config(const std::vector<std::string> &args);

ExperimentSpec case_spec(const RunConfig &cfg);
SweepGrid sweep_grid(const RunConfig &cfg);

extern const char *const kCsvHeader;

std::string render_csv(const std::vector<SuccessReport> &rows, bool per_kind = true);
std::string render_json(const std::vector<SuccessReport> &rows);
/// One line per (algorithm, qubits, depth), one column per error setting,
/// cells as "(success, stderr)".
std::string render_table(const std::vector<SuccessReport> &rows);
/// "(21.0, 4.07)": success to one decimal, stderr to two with trailing
/// zeros dropped down to one decimal.
std::string format_cell(double success_pct, double stderr_pct);

std::string render(const std::vector<SuccessReport> &rows, OutputFormat format, bool per_kind = true);

/// Parses render_csv() output. Component rows (pauli-x, ...) are folded back
/// into the per_kind tallies of the Pauli row before them.
std::vector<SuccessReport> parse_csv(std::string_view text);

/// Writes to `path`, or stdout when empty. Throws std::runtime_error if the
/// file cannot be written.
void write_output(const std::string &text, const std::optional<std::string> &path);

struct EquivalenceRow {
    double dt = 0;
    size_t trajectories = 0;
    double trace_distance = 0;
    /// Excited population of the ensemble and its standard error (0 for M = 1).
    double population = 0;
    double population_stderr = 0;
    /// e^{-gamma t}.
    double closed_form = 0;
};

/// Amplitude damping of one qubit from |1>: for every (dt, M) the trace
/// distance between the M-trajectory ensemble and the RK4 Lindblad state.
std::vector<EquivalenceRow> equivalence_report(const std::vector<double> &dts, const std::vector<size_t> &sizes,
                                               double gamma = 1, double t_final = 1, uint64_t seed = 0,
                                               size_t threads = 0);

std::string render_equivalence(const std::vector<EquivalenceRow> &rows, OutputFormat format);

/// Runs a parsed configuration and returns the text to write.
std::string run_command(const RunConfig &cfg);

}  // namespace qjump
