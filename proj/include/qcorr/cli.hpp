// Copyright 2026 The qcorr Authors
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

// Command-line front end. `run` is the whole program minus process setup so
// it can be driven from tests with in-memory streams.
//
// Exit status: 0 success, 1 domain or contract error (including an invalid
// machine), 2 I/O or parse error.

#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcorr/games.hpp"
#include "qcorr/machine_io.hpp"
#include "qcorr/process.hpp"
#include "qcorr/qmachine.hpp"

namespace qcorr::cli {

enum class Format { kText, kCsv };

enum ExitCode : int { kOk = 0, kDomainError = 1, kIoError = 2 };

struct CommandConfig {
  std::string subcommand;  // machine | complexity | sweep | sample | game
  std::string action;      // machine: validate|minimize|stationary; game: chsh|ghz
  std::string input;
  std::string output;      // empty -> stdout
  Format format = Format::kText;
  std::string family = "and";
  double p = 1.0;
  std::size_t grid = 21;
  bool raw_topology = false;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  bool optimize = false;
  std::size_t iterations = 500;
};

namespace detail {

inline std::string fixed6(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

using qcorr::detail::sig12;

inline ProcessFamily parse_family(const std::string& name) {
  if (name == "and") return ProcessFamily::kAnd;
  if (name == "xor") return ProcessFamily::kXor;
  throw DomainError("unknown process family '" + name + "'");
}

inline void require_valid(const EpsilonMachine& m) {
  const auto report = validate(m);
  if (!report.empty()) throw DomainError("invalid machine: " + report.front().message);
}

inline void machine_command(const CommandConfig& cfg, std::ostream& out, int& status) {
  const auto m = load_machine(cfg.input);
  if (cfg.action == "validate") {
    const auto report = validate(m);
    if (cfg.format == Format::kCsv) {
      out << "kind,magnitude,message\n";
      for (const auto& v : report) {
        const char* kind = v.kind == Violation::Kind::kRowSum           ? "row_sum"
                           : v.kind == Violation::Kind::kProbabilityRange ? "probability_range"
                                                                          : "unreachable";
        out << kind << ',' << sig12(v.magnitude) << ",\"" << v.message << "\"\n";
      }
    } else if (report.empty()) {
      out << "valid (" << m.num_states() << " states, " << m.num_symbols() << " symbols)\n";
    } else {
      out << "invalid: " << report.size() << " violation(s)\n";
      for (const auto& v : report) out << "  - " << v.message << '\n';
    }
    if (!report.empty()) status = kDomainError;
    return;
  }
  require_valid(m);
  if (cfg.action == "minimize") {
    out << format_machine(minimize(m));
  } else {
    const auto pi = stationary(m);
    if (cfg.format == Format::kCsv) out << "state,weight\n";
    for (std::size_t i = 0; i < m.num_states(); ++i) {
      if (cfg.format == Format::kCsv) {
        out << m.states()[i] << ',' << sig12(pi.weights[i]) << '\n';
      } else {
        out << m.states()[i] << ' ' << fixed6(pi.weights[i]) << '\n';
      }
    }
  }
}

inline void complexity_command(const CommandConfig& cfg, std::ostream& out) {
  const auto m = load_machine(cfg.input);
  require_valid(m);
  const auto minimal = minimize(m);
  const double c_mu = statistical_complexity(minimal);
  const auto q = quantum_complexity_of(minimal);
  if (cfg.format == Format::kCsv) {
    out << "states,causal_states,c_mu_bits,c_q_qubits\n"
        << m.num_states() << ',' << minimal.num_states() << ',' << sig12(c_mu) << ',' << sig12(q.c_q) << '\n';
    return;
  }
  out << "states = " << m.num_states() << " (causal states: " << minimal.num_states() << ")\n"
      << "C_mu = " << fixed6(c_mu) << " bits\n"
      << "C_q = " << fixed6(q.c_q) << " qubits\n"
      << "retrodictively deterministic = " << (is_retrodictively_deterministic(minimal) ? "yes" : "no") << '\n';
}

inline void sweep_command(const CommandConfig& cfg, std::ostream& out) {
  const auto table = complexity_sweep(parse_family(cfg.family), uniform_grid(cfg.grid));
  write_sweep_csv(out, table, cfg.raw_topology);
}

inline void sample_command(const CommandConfig& cfg, std::ostream& out) {
  const EpsilonMachine m =
      cfg.input.empty() ? build_process(parse_family(cfg.family), cfg.p) : load_machine(cfg.input);
  require_valid(m);
  const auto seq = sample(m, cfg.n, cfg.seed);
  if (cfg.format == Format::kCsv) {
    out << "t,symbol,state\n";
    for (std::size_t t = 0; t < seq.symbols.size(); ++t)
      out << t << ',' << seq.symbols[t] << ',' << m.states()[seq.states[t]] << '\n';
    return;
  }
  const bool single_char = std::all_of(m.alphabet().symbols().begin(), m.alphabet().symbols().end(),
                                       [](const std::string& s) { return s.size() == 1; });
  for (std::size_t t = 0; t < seq.symbols.size(); ++t) {
    if (!single_char && t > 0) out << ' ';
    out << seq.symbols[t];
  }
  out << '\n';
}

inline void write_strategy(std::ostream& out, Format format, const std::string& name, const BipartiteStrategy& s) {
  const auto g = chsh_value(s);
  if (format == Format::kCsv) {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        out << name << ',' << a << ',' << b << ',' << sig12(g.p_same[a][b]) << ',' << sig12(g.chsh) << ','
            << sig12(g.success) << '\n';
    return;
  }
  out << name << " strategy\n"
      << "  alice angles = (" << fixed6(s.alice[0].polar) << ", " << fixed6(s.alice[1].polar) << ")\n"
      << "  bob angles   = (" << fixed6(s.bob[0].polar) << ", " << fixed6(s.bob[1].polar) << ")\n";
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out << "  p_same(" << a << "," << b << ") = " << fixed6(g.p_same[a][b]) << '\n';
  out << "  C = " << fixed6(g.chsh) << "\n"
      << "  |C| = " << fixed6(std::abs(g.chsh)) << "\n"
      << "  success = " << fixed6(g.success) << '\n';
}

inline void chsh_command(const CommandConfig& cfg, std::ostream& out) {
  const auto classical = classical_chsh_max();
  BipartiteStrategy quantum = tsirelson_strategy();
  std::optional<ChshOptimization> opt;
  if (cfg.optimize) {
    const BipartiteStrategy start{bell_state(),
                                  {MeasurementBasis::in_plane(0), MeasurementBasis::in_plane(0)},
                                  {MeasurementBasis::in_plane(0), MeasurementBasis::in_plane(0)}};
    opt = optimize_chsh(start, cfg.iterations);
    quantum = opt->strategy;
  }
  if (cfg.format == Format::kCsv) {
    out << "strategy,alice_input,bob_input,p_same,chsh,success\n";
    write_strategy(out, cfg.format, "classical", embed(classical.witness));
    write_strategy(out, cfg.format, cfg.optimize ? "optimized" : "tsirelson", quantum);
    return;
  }
  out << "classical deterministic strategies enumerated = " << classical.enumerated << '\n'
      << "classical max |C| = " << fixed6(classical.max_abs) << '\n'
      << "classical success = " << fixed6(success_from_chsh(classical.max_abs)) << '\n';
  write_strategy(out, cfg.format, "classical witness", embed(classical.witness));
  if (opt) {
    out << "optimizer: " << (opt->converged ? "converged" : "not converged") << " after " << opt->iterations
        << " iterations\n";
  }
  write_strategy(out, cfg.format, cfg.optimize ? "optimized" : "tsirelson", quantum);
  out << "tsirelson bound = " << fixed6(kTsirelsonBound) << '\n';
}

inline void ghz_command(const CommandConfig& cfg, std::ostream& out) {
  if (cfg.format == Format::kCsv) out << "a,b,m1,m2,m3,probability,round_success\n";
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const auto dist = ghz_round(a, b);
      const double success = ghz_round_success(a, b);
      if (cfg.format == Format::kCsv) {
        for (int m = 0; m < 8; ++m)
          out << a << ',' << b << ',' << (m >> 2) << ',' << ((m >> 1) & 1) << ',' << (m & 1) << ','
              << sig12(dist[m] < 1e-15 ? 0.0 : dist[m]) << ',' << sig12(success) << '\n';
        continue;
      }
      out << "a=" << a << " b=" << b << " inputs=(" << a << "," << b << "," << (a ^ b) << ") target=" << (a & b)
          << " success = " << fixed6(success) << '\n';
      for (int m = 0; m < 8; ++m)
        out << "  m=" << (m >> 2) << ((m >> 1) & 1) << (m & 1) << "  " << fixed6(dist[m]) << '\n';
    }
  }
  if (cfg.format == Format::kCsv) return;
  const auto classical = classical_ghz_max();
  out << "average success = " << fixed6(ghz_success()) << '\n'
      << "classical max success = " << fixed6(classical.max_success) << " (" << classical.enumerated
      << " deterministic strategies)\n";
}

inline int dispatch(const CommandConfig& cfg, std::ostream& out) {
  int status = kOk;
  if (cfg.subcommand == "machine") {
    machine_command(cfg, out, status);
  } else if (cfg.subcommand == "complexity") {
    complexity_command(cfg, out);
  } else if (cfg.subcommand == "sweep") {
    sweep_command(cfg, out);
  } else if (cfg.subcommand == "sample") {
    sample_command(cfg, out);
  } else if (cfg.action == "chsh") {
    chsh_command(cfg, out);
  } else {
    ghz_command(cfg, out);
  }
  return status;
}

}  // namespace detail

/// Executes an already-parsed command.
inline int run(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  int status = kOk;
  try {
    status = detail::dispatch(cfg, buffer);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  if (cfg.output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file || !(file << buffer.str()) || !file.flush()) {
      err << "error: cannot write '" << cfg.output << "'\n";
      return kIoError;
    }
  }
  return status;
}

/// Parses `argv` and executes it.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CommandConfig cfg;
  CLI::App app{"Classical vs quantum memory of stochastic processes, and correlation-assisted AND games", "qcorr"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("-o,--output", cfg.output, "Write the report to this file instead of stdout");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "csv"}));

  auto* machine = app.add_subcommand("machine", "Validate, minimize, or analyse a machine file");
  machine->add_option("action", cfg.action, "validate | minimize | stationary")
      ->required()
      ->check(CLI::IsMember({"validate", "minimize", "stationary"}));
  machine->add_option("file", cfg.input, "Machine JSON file")->required();

  auto* complexity = app.add_subcommand("complexity", "Print C_mu and C_q for a machine file");
  complexity->add_option("file", cfg.input, "Machine JSON file")->required();

  auto* sweep = app.add_subcommand("sweep", "C_mu and C_q over p in [0,1] as CSV");
  sweep->add_option("--family", cfg.family, "Process family")->check(CLI::IsMember({"and", "xor"}));
  sweep->add_option("--grid", cfg.grid, "Number of evenly spaced p values")->check(CLI::Range(1, 100000));
  sweep->add_flag("--raw-topology", cfg.raw_topology, "Also emit values for the unminimized machine");

  auto* sample_cmd = app.add_subcommand("sample", "Sample a symbol sequence");
  sample_cmd->add_option("--family", cfg.family, "Process family")->check(CLI::IsMember({"and", "xor"}));
  sample_cmd->add_option("--machine", cfg.input, "Sample from a machine file instead of a family");
  sample_cmd->add_option("--p", cfg.p, "Probability of the noiseless gate output")->check(CLI::Range(0.0, 1.0));
  sample_cmd->add_option("--n", cfg.n, "Number of symbols");
  sample_cmd->add_option("--seed", cfg.seed, "Random seed");

  auto* game = app.add_subcommand("game", "Correlation games");
  game->require_subcommand(1);
  auto* chsh = game->add_subcommand("chsh", "Two-site CHSH / AND game");
  chsh->add_flag("--optimize", cfg.optimize, "Search measurement angles starting from all zeros");
  chsh->add_option("--iters", cfg.iterations, "Optimizer iteration budget")->check(CLI::Range(1, 1000000));
  game->add_subcommand("ghz", "Three-site GHZ AND protocol");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }

  cfg.format = format == "csv" ? Format::kCsv : Format::kText;
  for (auto* sub : {machine, complexity, sweep, sample_cmd, game})
    if (sub->parsed()) cfg.subcommand = sub->get_name();
  if (cfg.subcommand == "game") cfg.action = chsh->parsed() ? "chsh" : "ghz";
  return run(cfg, out, err);
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"qcorr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qcorr::cli
