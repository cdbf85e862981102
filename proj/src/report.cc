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

#include "qjump/report/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "qjump/lindblad/lindblad.h"
#include "qjump/trajectory/trajectory.h"

namespace qjump {

std::string to_string(Command c) {
    switch (c) {
        case Command::Equivalence:
            return "equivalence";
        case Command::Case:
            return "case";
        case Command::Sweep:
            return "sweep";
        case Command::DumpCircuit:
            return "dump-circuit";
    }
    return "?";
}

std::string to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Csv:
            return "csv";
        case OutputFormat::Json:
            return "json";
        case OutputFormat::Table:
            return "table";
    }
    return "?";
}

// -- configuration --------------------------------------------------------------

namespace {

struct RawOptions {
    std::vector<std::string> algorithms;
    std::vector<size_t> qubits;
    std::vector<std::string> errors;
    std::string angle;
    std::string angles;
    std::vector<unsigned> counts;
    double sigma = 0.01;
    double capacity_n = 8;
    std::optional<size_t> runs;
    uint64_t seed = 0;
    bool free_angle = false;
    bool no_per_kind = false;
    std::vector<double> dts;
    std::vector<size_t> sizes;
    double gamma = 1;
    double t_final = 1;
    std::string format = "csv";
    std::string out;
};

void add_output(CLI::App *cmd, RawOptions &raw) {
    cmd->add_option("--format", raw.format, "csv, json or table")->check(CLI::IsMember({"csv", "json", "table"}));
    cmd->add_option("--out", raw.out, "output file (default stdout)");
}

void add_experiment(CLI::App *cmd, RawOptions &raw, bool many) {
    auto *alg = cmd->add_option(many ? "--algorithm,--algorithms" : "--algorithm", raw.algorithms, many ? "algorithms, comma separated, or all"
                                                                    : "algorithm name");
    auto *q = cmd->add_option("--qubits", raw.qubits, many ? "total qubit counts" : "total qubit count");
    cmd->add_option(many ? "--error,--errors" : "--error", raw.errors, "pauli, x, y, z or rz");
    cmd->add_option(many ? "--count,--counts" : "--count", raw.counts, "errors per run (0 = noiseless control, 1, 2)")
        ->check(CLI::Range(0u, 2u));
    if (many) {
        alg->delimiter(',');
        q->delimiter(',');
        cmd->get_option("--error")->delimiter(',');
        cmd->get_option("--count")->delimiter(',');
        cmd->add_option("--angles", raw.angles, "all, or a comma separated list such as pi/2,pi/8");
    } else {
        alg->required()->expected(1);
        q->required()->expected(1);
        cmd->get_option("--error")->expected(1);
        cmd->get_option("--count")->expected(1);
        cmd->add_option("--angle", raw.angle, "Z-rotation angle, e.g. pi/8");
    }
    cmd->add_option("--sigma", raw.sigma, "target standard error (default 0.01)");
    cmd->add_option("--capacity-n", raw.capacity_n, "N of the run-count formula (default 8)");
    cmd->add_option("--runs", raw.runs, "run count override");
    cmd->add_option("--seed", raw.seed, "master seed");
    cmd->add_flag("--free-angle", raw.free_angle, "accept Z-rotation angles outside pi/2 ... pi/32");
    cmd->add_flag("--no-per-kind", raw.no_per_kind, "omit the pauli-x/-y/-z rows from CSV output");
    add_output(cmd, raw);
}

std::vector<Angle> parse_angle_list(const std::string &text) {
    if (text == "all") {
        return standard_rz_angles();
    }
    std::vector<Angle> out;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) {
        if (!part.empty()) {
            out.push_back(Angle::parse(part));
        }
    }
    return out;
}

RunConfig parse_raw(const std::vector<std::string> &args) {
    CLI::App app{"Quantum jump simulator and logical error injection harness", "qjump"};
    app.require_subcommand(1);
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.set_config("--config", "", "read options from a TOML/INI file");
    RawOptions raw;
    auto *eq = app.add_subcommand("equivalence", "trajectory ensemble vs Lindblad solution for amplitude damping");
    eq->add_option("--dt", raw.dts, "time steps")->delimiter(',');
    eq->add_option("--trajectories", raw.sizes, "ensemble sizes")->delimiter(',');
    eq->add_option("--gamma", raw.gamma, "damping rate");
    eq->add_option("--time", raw.t_final, "final time");
    eq->add_option("--seed", raw.seed, "master seed");
    add_output(eq, raw);
    auto *cs = app.add_subcommand("case", "one experiment cell");
    add_experiment(cs, raw, false);
    auto *sw = app.add_subcommand("sweep", "a grid of experiment cells");
    add_experiment(sw, raw, true);
    auto *dc = app.add_subcommand("dump-circuit", "print the circuit of an algorithm instance");
    dc->add_option("--algorithm", raw.algorithms, "algorithm name")->required()->expected(1);
    dc->add_option("--qubits", raw.qubits, "total qubit count")->required()->expected(1);
    dc->add_option("--seed", raw.seed, "instance seed");
    dc->add_option("--out", raw.out, "output file (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back();  // program name
    }
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        throw ConfigError(app.help(), 0);
    } catch (const CLI::CallForAllHelp &) {
        throw ConfigError(app.help("", CLI::AppFormatMode::All), 0);
    } catch (const CLI::ParseError &e) {
        throw ConfigError(e.what(), e.get_exit_code() == 0 ? 2 : e.get_exit_code());
    }

    RunConfig cfg;
    if (*eq) {
        cfg.command = Command::Equivalence;
    } else if (*cs) {
        cfg.command = Command::Case;
    } else if (*sw) {
        cfg.command = Command::Sweep;
    } else {
        cfg.command = Command::DumpCircuit;
    }

    for (const auto &a : raw.algorithms) {
        if (cfg.command == Command::Sweep && a == "all") {
            cfg.algorithms = all_algorithms();
            continue;
        }
        cfg.algorithms.push_back(parse_algorithm(a));
    }
    if (cfg.command == Command::Sweep && cfg.algorithms.empty()) {
        cfg.algorithms = all_algorithms();
    }
    cfg.qubits = raw.qubits;
    for (const auto &e : raw.errors) {
        cfg.kinds.push_back(parse_error_kind(e));
    }
    if (cfg.kinds.empty()) {
        cfg.kinds.push_back(ErrorKind::Pauli);
    }
    cfg.counts = raw.counts.empty() ? std::vector<unsigned>{1} : raw.counts;
    if (!raw.angle.empty()) {
        cfg.angles.push_back(Angle::parse(raw.angle));
    }
    if (!raw.angles.empty()) {
        cfg.angles = parse_angle_list(raw.angles);
    }
    cfg.sigma = raw.sigma;
    cfg.capacity_n = raw.capacity_n;
    cfg.runs = raw.runs;
    cfg.seed = raw.seed;
    cfg.free_angle = raw.free_angle;
    cfg.per_kind = !raw.no_per_kind;
    if (!raw.dts.empty()) {
        cfg.dts = raw.dts;
    }
    if (!raw.sizes.empty()) {
        cfg.ensemble_sizes = raw.sizes;
    }
    cfg.gamma = raw.gamma;
    cfg.t_final = raw.t_final;
    cfg.format = raw.format == "json" ? OutputFormat::Json
                 : raw.format == "table" ? OutputFormat::Table
                                         : OutputFormat::Csv;
    if (!raw.out.empty()) {
        cfg.out = raw.out;
    }
    return cfg;
}

void validate(const RunConfig &cfg) {
    const bool rz = std::find(cfg.kinds.begin(), cfg.kinds.end(), ErrorKind::RZ) != cfg.kinds.end();
    switch (cfg.command) {
        case Command::Case:
            case_spec(cfg).validate();
            break;
        case Command::Sweep:
            if (rz && cfg.angles.empty()) {
                throw std::invalid_argument("--error rz needs --angles (all or a list)");
            }
            expand(sweep_grid(cfg));
            break;
        case Command::DumpCircuit:
            if (cfg.qubits.front() < min_total_qubits(cfg.algorithms.front())) {
                throw std::invalid_argument(fmt::format("{} needs at least {} qubits",
                                                        display_name(cfg.algorithms.front()),
                                                        min_total_qubits(cfg.algorithms.front())));
            }
            break;
        case Command::Equivalence:
            for (double dt : cfg.dts) {
                if (!(dt > 0)) {
                    throw std::invalid_argument("--dt values must be positive");
                }
            }
            for (size_t m : cfg.ensemble_sizes) {
                if (m == 0) {
                    throw std::invalid_argument("--trajectories values must be >= 1");
                }
            }
            if (!(cfg.gamma >= 0) || !(cfg.t_final >= 0)) {
                throw std::invalid_argument("--gamma and --time must be >= 0");
            }
            break;
    }
}

}  // namespace

RunConfig parse_config(const std::vector<std::string> &args) {
    RunConfig cfg;
    try {
        cfg = parse_raw(args);
        validate(cfg);
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        throw ConfigError(e.what(), 2);
    }
    return cfg;
}

RunConfig parse_config(int argc, const char *const *argv) {
    return parse_config(std::vector<std::string>(argv, argv + argc));
}

ExperimentSpec case_spec(const RunConfig &cfg) {
    if (cfg.algorithms.size() != 1 || cfg.qubits.size() != 1 || cfg.kinds.size() != 1 || cfg.counts.size() != 1) {
        throw std::invalid_argument("case takes exactly one algorithm, qubit count, error kind and count");
    }
    ExperimentSpec spec;
    spec.algorithm = cfg.algorithms.front();
    spec.num_qubits = cfg.qubits.front();
    spec.error.kind = cfg.kinds.front();
    spec.error.count = cfg.counts.front();
    if (cfg.angles.size() > 1) {
        throw std::invalid_argument("case takes one --angle");
    }
    if (!cfg.angles.empty()) {
        spec.error.angle = cfg.angles.front();
    }
    spec.sigma_target = cfg.sigma;
    spec.capacity_n = cfg.capacity_n;
    spec.master_seed = cfg.seed;
    spec.runs_override = cfg.runs;
    spec.allow_free_angle = cfg.free_angle;
    return spec;
}

SweepGrid sweep_grid(const RunConfig &cfg) {
    SweepGrid grid;
    grid.algorithms = cfg.algorithms;
    grid.sizes = cfg.qubits;
    grid.kinds = cfg.kinds;
    grid.angles = cfg.angles;
    grid.counts = cfg.counts;
    grid.sigma_target = cfg.sigma;
    grid.capacity_n = cfg.capacity_n;
    grid.master_seed = cfg.seed;
    grid.runs_override = cfg.runs;
    grid.allow_free_angle = cfg.free_angle;
    return grid;
}

// -- rendering -------------------------------------------------------------------

const char *const kCsvHeader =
    "algorithm,qubits,depth,error_kind,angle,error_count,runs,successes,success_pct,stderr_pct,seed";

namespace {

std::string kind_label(const SuccessReport &r) {
    return r.pauli_component ? "pauli-" + to_string(r.kind) : to_string(r.kind);
}

std::string csv_row(const SuccessReport &r) {
    return fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", to_string(r.algorithm), r.num_qubits, r.depth,
                       kind_label(r), r.angle ? r.angle->to_string() : "", r.error_count, r.runs, r.successes,
                       r.success_pct, r.stderr_pct, r.seed);
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        const size_t pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

template <class T>
T parse_number(const std::string &s, const char *field) {
    std::istringstream in(s);
    T v{};
    in >> v;
    if (in.fail() || !in.eof()) {
        throw std::invalid_argument(fmt::format("CSV: bad {} value '{}'", field, s));
    }
    return v;
}

double parse_double(const std::string &s, const char *field) {
    size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != s.size() || s.empty()) {
        throw std::invalid_argument(fmt::format("CSV: bad {} value '{}'", field, s));
    }
    return v;
}

std::string column_label(const SuccessReport &r) {
    std::string label = to_string(r.kind);
    if (r.angle) {
        label += " " + r.angle->to_string();
    }
    return fmt::format("{} x{}", label, r.error_count);
}

}  // namespace

std::string render_csv(const std::vector<SuccessReport> &rows, bool per_kind) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto &r : rows) {
        out += csv_row(r);
        if (per_kind) {
            for (const auto &c : r.breakdown()) {
                out += csv_row(c);
            }
        }
    }
    return out;
}

std::vector<SuccessReport> parse_csv(std::string_view text) {
    std::vector<SuccessReport> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::invalid_argument("CSV: missing or unexpected header");
    }
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 11) {
            throw std::invalid_argument(fmt::format("CSV line {}: expected 11 fields, got {}", line_no, f.size()));
        }
        SuccessReport r;
        r.algorithm = parse_algorithm(f[0]);
        r.num_qubits = parse_number<size_t>(f[1], "qubits");
        r.depth = parse_number<size_t>(f[2], "depth");
        std::string kind = f[3];
        if (kind.rfind("pauli-", 0) == 0) {
            r.pauli_component = true;
            kind = kind.substr(6);
        }
        r.kind = parse_error_kind(kind);
        if (!f[4].empty()) {
            r.angle = Angle::parse(f[4]);
        }
        r.error_count = parse_number<unsigned>(f[5], "error_count");
        r.runs = parse_number<size_t>(f[6], "runs");
        r.successes = parse_number<size_t>(f[7], "successes");
        r.success_pct = parse_double(f[8], "success_pct");
        r.stderr_pct = parse_double(f[9], "stderr_pct");
        r.seed = parse_number<uint64_t>(f[10], "seed");
        if (r.pauli_component) {
            if (rows.empty() || rows.back().kind != ErrorKind::Pauli) {
                throw std::invalid_argument(fmt::format("CSV line {}: component row without a pauli row", line_no));
            }
            rows.back().per_kind.push_back(KindTally{r.kind, r.runs, r.successes});
            continue;
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string render_json(const std::vector<SuccessReport> &rows) {
    nlohmann::ordered_json doc;
    doc["note"] = "depth is the depth of this tool's error-free circuit for the instance";
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto &r : rows) {
        nlohmann::ordered_json j;
        j["algorithm"] = to_string(r.algorithm);
        j["qubits"] = r.num_qubits;
        j["depth"] = r.depth;
        j["error_kind"] = to_string(r.kind);
        j["angle"] = r.angle ? nlohmann::ordered_json(r.angle->to_string()) : nlohmann::ordered_json(nullptr);
        j["error_count"] = r.error_count;
        j["runs"] = r.runs;
        j["successes"] = r.successes;
        j["success_pct"] = r.success_pct;
        j["stderr_pct"] = r.stderr_pct;
        j["seed"] = r.seed;
        if (!r.per_kind.empty()) {
            auto &pk = j["per_kind"];
            for (const auto &t : r.per_kind) {
                pk[to_string(t.kind)] = {{"runs", t.runs}, {"successes", t.successes}};
            }
        }
        doc["rows"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

std::string format_cell(double success_pct, double stderr_pct) {
    std::string se = fmt::format("{:.2f}", stderr_pct);
    if (se.back() == '0') {
        se.pop_back();
    }
    return fmt::format("({:.1f}, {})", success_pct, se);
}

std::string render_table(const std::vector<SuccessReport> &rows) {
    std::vector<std::string> columns;
    std::vector<std::string> row_keys;
    std::map<std::pair<std::string, std::string>, std::string> cells;
    for (const auto &r : rows) {
        const std::string col = column_label(r);
        const std::string key = fmt::format("{} ({}, {})", display_name(r.algorithm), r.num_qubits, r.depth);
        if (std::find(columns.begin(), columns.end(), col) == columns.end()) {
            columns.push_back(col);
        }
        if (std::find(row_keys.begin(), row_keys.end(), key) == row_keys.end()) {
            row_keys.push_back(key);
        }
        cells[{key, col}] = format_cell(r.success_pct, r.stderr_pct);
    }
    std::vector<size_t> width(columns.size() + 1, 0);
    width[0] = std::string_view("Algorithm (qubits, depth)").size();
    for (const auto &k : row_keys) {
        width[0] = std::max(width[0], k.size());
    }
    for (size_t c = 0; c < columns.size(); ++c) {
        width[c + 1] = columns[c].size();
        for (const auto &k : row_keys) {
            const auto it = cells.find({k, columns[c]});
            width[c + 1] = std::max(width[c + 1], it == cells.end() ? 1 : it->second.size());
        }
    }
    std::string out = fmt::format("{:<{}}", "Algorithm (qubits, depth)", width[0]);
    for (size_t c = 0; c < columns.size(); ++c) {
        out += fmt::format("  {:<{}}", columns[c], width[c + 1]);
    }
    while (!out.empty() && out.back() == ' ') {
        out.pop_back();
    }
    out += '\n';
    for (const auto &k : row_keys) {
        std::string line = fmt::format("{:<{}}", k, width[0]);
        for (size_t c = 0; c < columns.size(); ++c) {
            const auto it = cells.find({k, columns[c]});
            line += fmt::format("  {:<{}}", it == cells.end() ? "-" : it->second, width[c + 1]);
        }
        while (!line.empty() && line.back() == ' ') {
            line.pop_back();
        }
        out += line + '\n';
    }
    return out;
}

std::string render(const std::vector<SuccessReport> &rows, OutputFormat format, bool per_kind) {
    switch (format) {
        case OutputFormat::Csv:
            return render_csv(rows, per_kind);
        case OutputFormat::Json:
            return render_json(rows);
        case OutputFormat::Table:
            return render_table(rows);
    }
    return {};
}

void write_output(const std::string &text, const std::optional<std::string> &path) {
    if (!path || path->empty()) {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream f(*path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("cannot open " + *path + " for writing");
    }
    f << text;
    f.close();
    if (!f) {
        throw std::runtime_error("failed writing " + *path);
    }
}

// -- equivalence -------------------------------------------------------------------

std::vector<EquivalenceRow> equivalence_report(const std::vector<double> &dts, const std::vector<size_t> &sizes,
                                               double gamma, double t_final, uint64_t seed, size_t threads) {
    const OpenSystem sys(ComplexMatrix::zeros(2, 2), {JumpChannel{operators::lowering(), gamma}});
    const StateVector excited = StateVector::basis(1, 1);
    const ComplexMatrix excited_proj = ComplexMatrix::outer(excited.amplitudes(), excited.amplitudes());
    const DensityMatrix exact = evolve(sys, DensityMatrix::from_pure(excited), t_final, 1e-3);
    std::vector<EquivalenceRow> out;
    for (double dt : dts) {
        for (size_t m : sizes) {
            TrajectoryConfig cfg{dt, t_final, derive_seed(seed, {hash_label(fmt::format("{}", dt)), m}), m};
            const auto states = run_ensemble(sys, excited, cfg, threads);
            EquivalenceRow row;
            row.dt = dt;
            row.trajectories = m;
            row.trace_distance = trace_distance(ensemble_density(states), exact);
            if (m >= 2) {
                const auto est = estimate_observable(states, excited_proj);
                row.population = est.mean;
                row.population_stderr = est.standard_error;
            } else {
                row.population = std::norm(states.front()[1]);
            }
            row.closed_form = std::exp(-gamma * t_final);
            out.push_back(row);
        }
    }
    return out;
}

std::string render_equivalence(const std::vector<EquivalenceRow> &rows, OutputFormat format) {
    if (format == OutputFormat::Json) {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (const auto &r : rows) {
            doc.push_back({{"dt", r.dt},
                           {"trajectories", r.trajectories},
                           {"trace_distance", r.trace_distance},
                           {"population", r.population},
                           {"population_stderr", r.population_stderr},
                           {"closed_form", r.closed_form}});
        }
        return doc.dump(2) + "\n";
    }
    if (format == OutputFormat::Table) {
        std::string out = fmt::format("{:>10}  {:>12}  {:>14}  {:>10}  {:>10}  {:>10}\n", "dt", "trajectories",
                                      "trace_distance", "population", "stderr", "exp(-gt)");
        for (const auto &r : rows) {
            out += fmt::format("{:>10g}  {:>12}  {:>14.6f}  {:>10.6f}  {:>10.6f}  {:>10.6f}\n", r.dt, r.trajectories,
                               r.trace_distance, r.population, r.population_stderr, r.closed_form);
        }
        return out;
    }
    std::string out = "dt,trajectories,trace_distance,population,population_stderr,closed_form\n";
    for (const auto &r : rows) {
        out += fmt::format("{},{},{},{},{},{}\n", r.dt, r.trajectories, r.trace_distance, r.population,
                           r.population_stderr, r.closed_form);
    }
    return out;
}

std::string run_command(const RunConfig &cfg) {
    switch (cfg.command) {
        case Command::Equivalence:
            return render_equivalence(
                equivalence_report(cfg.dts, cfg.ensemble_sizes, cfg.gamma, cfg.t_final, cfg.seed), cfg.format);
        case Command::Case:
            return render({run_case(case_spec(cfg))}, cfg.format, cfg.per_kind);
        case Command::Sweep:
            return render(sweep(sweep_grid(cfg)), cfg.format, cfg.per_kind);
        case Command::DumpCircuit: {
            const auto inst = build_for_size(cfg.algorithms.front(), cfg.qubits.front(), cfg.seed);
            return fmt::format("# {} {}\n", to_string(inst.name), inst.secret) + inst.dag.dump();
        }
    }
    return {};
}

}  // namespace qjump
