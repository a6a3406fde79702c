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

// Epsilon-machines: finite-state, symbol-labelled stochastic generators.
//
// A machine holds T(i, x, j) = Pr(emit x, move to j | in state i). Rows are
// required to be stochastic and the state graph strongly connected; both are
// reported by validate() rather than enforced at construction so that
// defective machines can still be loaded and diagnosed.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "qcorr/numerics.hpp"

namespace qcorr {

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw ContractViolation("Alphabet: no symbols");
    std::unordered_set<std::string> seen;
    for (const auto& s : symbols_)
      if (!seen.insert(s).second) throw ContractViolation("Alphabet: duplicate symbol '" + s + "'");
  }
  Alphabet(std::initializer_list<std::string> symbols) : Alphabet(std::vector<std::string>(symbols)) {}

  static Alphabet binary() { return Alphabet{"0", "1"}; }

  std::size_t size() const { return symbols_.size(); }
  const std::string& operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<std::string>& symbols() const { return symbols_; }

  std::optional<std::size_t> index_of(const std::string& label) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), label);
    if (it == symbols_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - symbols_.begin());
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
};

struct Transition {
  std::size_t from;
  std::size_t symbol;
  std::size_t to;
  double probability;
};

class EpsilonMachine {
 public:
  EpsilonMachine() = default;

  /// Duplicate (from, symbol, to) triples and out-of-range indices are
  /// structural errors and throw; stochasticity is checked by validate().
  EpsilonMachine(std::vector<std::string> states, Alphabet alphabet, const std::vector<Transition>& transitions)
      : states_(std::move(states)), alphabet_(std::move(alphabet)) {
    if (states_.empty()) throw ContractViolation("EpsilonMachine: no states");
    std::unordered_set<std::string> seen;
    for (const auto& s : states_)
      if (!seen.insert(s).second) throw ContractViolation("EpsilonMachine: duplicate state '" + s + "'");
    tensor_.assign(states_.size() * alphabet_.size() * states_.size(), 0.0);
    std::vector<bool> present(tensor_.size(), false);
    for (const auto& t : transitions) {
      if (t.from >= states_.size() || t.to >= states_.size() || t.symbol >= alphabet_.size()) {
        throw ContractViolation(detail::concat("EpsilonMachine: transition index out of range (", t.from, ", ",
                                               t.symbol, ", ", t.to, ")"));
      }
      if (!std::isfinite(t.probability)) throw ContractViolation("EpsilonMachine: non-finite transition probability");
      const std::size_t k = index(t.from, t.symbol, t.to);
      if (present[k]) {
        throw ContractViolation("EpsilonMachine: duplicate transition " + states_[t.from] + " --" +
                                alphabet_[t.symbol] + "--> " + states_[t.to]);
      }
      present[k] = true;
      tensor_[k] = t.probability;
    }
  }

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_symbols() const { return alphabet_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  const Alphabet& alphabet() const { return alphabet_; }

  std::optional<std::size_t> state_index(const std::string& label) const {
    auto it = std::find(states_.begin(), states_.end(), label);
    if (it == states_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - states_.begin());
  }

  /// T(from, symbol, to)
  double probability(std::size_t from, std::size_t symbol, std::size_t to) const {
    return tensor_[index(from, symbol, to)];
  }

  /// Symbol-summed transition matrix M(i, j) = sum_x T(i, x, j).
  std::vector<std::vector<double>> transition_matrix() const {
    const std::size_t n = num_states();
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t x = 0; x < num_symbols(); ++x)
        for (std::size_t j = 0; j < n; ++j) m[i][j] += probability(i, x, j);
    return m;
  }

  /// Positive-probability transitions in (from, symbol, to) order.
  std::vector<Transition> transitions() const {
    std::vector<Transition> out;
    for (std::size_t i = 0; i < num_states(); ++i)
      for (std::size_t x = 0; x < num_symbols(); ++x)
        for (std::size_t j = 0; j < num_states(); ++j)
          if (probability(i, x, j) != 0.0) out.push_back({i, x, j, probability(i, x, j)});
    return out;
  }

 private:
  std::size_t index(std::size_t from, std::size_t symbol, std::size_t to) const {
    return (from * alphabet_.size() + symbol) * states_.size() + to;
  }

  std::vector<std::string> states_;
  Alphabet alphabet_;
  std::vector<double> tensor_;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  enum class Kind { kProbabilityRange, kRowSum, kUnreachable };
  Kind kind;
  std::string message;
  double magnitude;  // offending probability, |row sum - 1|, or 0 for reachability
};

inline constexpr double kRowSumTolerance = 1e-9;

namespace detail {

inline std::vector<bool> reachable_from(const EpsilonMachine& m, std::size_t start, bool reverse) {
  const std::size_t n = m.num_states();
  const auto mat = m.transition_matrix();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      const double w = reverse ? mat[j][i] : mat[i][j];
      if (w > 0.0 && !seen[j]) {
        seen[j] = true;
        stack.push_back(j);
      }
    }
  }
  return seen;
}

inline bool strongly_connected(const EpsilonMachine& m) {
  const auto fwd = reachable_from(m, 0, false);
  const auto bwd = reachable_from(m, 0, true);
  return std::all_of(fwd.begin(), fwd.end(), [](bool b) { return b; }) &&
         std::all_of(bwd.begin(), bwd.end(), [](bool b) { return b; });
}

}  // namespace detail

/// Empty result iff the machine is row-stochastic, has probabilities in
/// [0,1], and forms a single recurrent class.
inline std::vector<Violation> validate(const EpsilonMachine& m, double row_tolerance = kRowSumTolerance) {
  std::vector<Violation> report;
  const std::size_t n = m.num_states();
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t x = 0; x < m.num_symbols(); ++x) {
      for (std::size_t j = 0; j < n; ++j) {
        const double t = m.probability(i, x, j);
        if (t < 0.0 || t > 1.0) {
          report.push_back({Violation::Kind::kProbabilityRange,
                            detail::concat("transition ", m.states()[i], " --", m.alphabet()[x], "--> ",
                                           m.states()[j], " has probability ", t, " outside [0,1]"),
                            t});
        }
        row += t;
      }
    }
    if (std::abs(row - 1.0) > row_tolerance) {
      report.push_back({Violation::Kind::kRowSum,
                        detail::concat("state ", m.states()[i], " outgoing probabilities sum to ", row),
                        std::abs(row - 1.0)});
    }
  }
  const auto fwd = detail::reachable_from(m, 0, false);
  const auto bwd = detail::reachable_from(m, 0, true);
  for (std::size_t j = 0; j < n; ++j) {
    if (!fwd[j]) {
      report.push_back({Violation::Kind::kUnreachable,
                        "state " + m.states()[j] + " is not reachable from state " + m.states()[0], 0.0});
    } else if (!bwd[j]) {
      report.push_back({Violation::Kind::kUnreachable,
                        "state " + m.states()[0] + " is not reachable from state " + m.states()[j], 0.0});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Stationary distribution

struct StationaryDistribution {
  ProbabilityVector weights;  // aligned with machine states
};

inline StationaryDistribution stationary(const EpsilonMachine& m) {
  if (!detail::strongly_connected(m)) {
    throw DomainError("stationary: no unique stationary distribution (machine is reducible)");
  }
  const std::size_t n = m.num_states();
  const auto mat = m.transition_matrix();
  // Solve pi (M - I) = 0 with sum(pi) = 1: transpose to (M - I)^T pi^T = 0 and
  // replace the last equation by the normalization row.
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r][c] = mat[c][r] - (r == c ? 1.0 : 0.0);
  for (std::size_t c = 0; c < n; ++c) a[n - 1][c] = 1.0;
  a[n - 1][n] = 1.0;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-14) throw DomainError("stationary: no unique stationary distribution");
    std::swap(a[col], a[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0.0) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> pi(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pi[i] = std::max(0.0, a[i][n] / a[i][i]);
    total += pi[i];
  }
  for (auto& w : pi) w /= total;
  return {ProbabilityVector(std::move(pi))};
}

/// max_j |(pi M)_j - pi_j|
inline double stationary_residual(const EpsilonMachine& m, const StationaryDistribution& pi) {
  const auto mat = m.transition_matrix();
  double worst = 0.0;
  for (std::size_t j = 0; j < m.num_states(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.num_states(); ++i) s += pi.weights[i] * mat[i][j];
    worst = std::max(worst, std::abs(s - pi.weights[j]));
  }
  return worst;
}

/// C_mu: Shannon entropy (bits) of the stationary state distribution.
inline double statistical_complexity(const EpsilonMachine& m) { return shannon_entropy(stationary(m).weights); }

// ---------------------------------------------------------------------------
// Minimization

inline constexpr double kMinimizeTolerance = 1e-9;

/// Block index for each state of the coarsest partition whose blocks have
/// matching (symbol, successor-block) distributions within `tol` in total
/// variation. Blocks are numbered by first member.
inline std::vector<std::size_t> causal_partition(const EpsilonMachine& m, double tol = kMinimizeTolerance) {
  const std::size_t n = m.num_states();
  const std::size_t nx = m.num_symbols();
  std::vector<std::size_t> block(n, 0);
  std::size_t num_blocks = 1;

  for (;;) {
    auto signature = [&](std::size_t i) {
      std::vector<double> sig(nx * num_blocks, 0.0);
      for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t j = 0; j < n; ++j) sig[x * num_blocks + block[j]] += m.probability(i, x, j);
      return sig;
    };
    std::vector<std::vector<double>> sigs(n);
    for (std::size_t i = 0; i < n; ++i) sigs[i] = signature(i);

    // Split each old block by comparing members against the representatives
    // already assigned inside the same old block.
    std::vector<std::size_t> next(n);
    std::vector<std::size_t> reps;  // representative state of each new block
    for (std::size_t i = 0; i < n; ++i) {
      std::optional<std::size_t> found;
      for (std::size_t b = 0; b < reps.size() && !found; ++b) {
        const std::size_t r = reps[b];
        if (block[r] != block[i]) continue;
        double tv = 0.0;
        for (std::size_t k = 0; k < sigs[i].size(); ++k) tv += std::abs(sigs[i][k] - sigs[r][k]);
        if (0.5 * tv <= tol) found = b;
      }
      if (found) {
        next[i] = *found;
      } else {
        next[i] = reps.size();
        reps.push_back(i);
      }
    }
    const bool stable = reps.size() == num_blocks;
    block = std::move(next);
    num_blocks = reps.size();
    if (stable) return block;
  }
}

/// Merges equivalent states. Each merged state keeps the label and outgoing
/// distribution of its first member, redirected onto merged targets.
inline EpsilonMachine minimize(const EpsilonMachine& m, double tol = kMinimizeTolerance) {
  const auto block = causal_partition(m, tol);
  const std::size_t nb = *std::max_element(block.begin(), block.end()) + 1;
  if (nb == m.num_states()) return m;

  std::vector<std::size_t> rep(nb, m.num_states());
  std::vector<std::string> labels(nb);
  for (std::size_t i = 0; i < m.num_states(); ++i) {
    if (rep[block[i]] == m.num_states()) {
      rep[block[i]] = i;
      labels[block[i]] = m.states()[i];
    }
  }
  std::vector<double> agg(nb * m.num_symbols() * nb, 0.0);
  for (std::size_t b = 0; b < nb; ++b)
    for (std::size_t x = 0; x < m.num_symbols(); ++x)
      for (std::size_t j = 0; j < m.num_states(); ++j)
        agg[(b * m.num_symbols() + x) * nb + block[j]] += m.probability(rep[b], x, j);

  std::vector<Transition> transitions;
  for (std::size_t b = 0; b < nb; ++b)
    for (std::size_t x = 0; x < m.num_symbols(); ++x)
      for (std::size_t c = 0; c < nb; ++c)
        if (const double p = agg[(b * m.num_symbols() + x) * nb + c]; p != 0.0) transitions.push_back({b, x, c, p});
  return EpsilonMachine(std::move(labels), m.alphabet(), transitions);
}

// ---------------------------------------------------------------------------
// Built-in process families

namespace detail {

inline void require_unit_interval(double p, const char* who) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(concat(who, ": p = ", p, " outside [0,1]"));
}

enum : std::size_t { kA, kB, kC, kD, kE };

}  // namespace detail

/// Blocks of two uniform bits followed by their AND with probability p and
/// their NAND otherwise. Phase states: A (block start), B/D (first bit 0/1),
/// C/E (AND result 0/1 pending).
inline EpsilonMachine build_and_process(double p) {
  using namespace detail;
  require_unit_interval(p, "build_and_process");
  return EpsilonMachine({"A", "B", "C", "D", "E"}, Alphabet::binary(),
                        {
                            {kA, 0, kB, 0.5},
                            {kA, 1, kD, 0.5},
                            {kB, 0, kC, 0.5},
                            {kB, 1, kC, 0.5},
                            {kD, 0, kC, 0.5},
                            {kD, 1, kE, 0.5},
                            {kC, 0, kA, p},
                            {kC, 1, kA, 1.0 - p},
                            {kE, 1, kA, p},
                            {kE, 0, kA, 1.0 - p},
                        });
}

/// Same skeleton as build_and_process; C/E now hold the parity of the two
/// random bits.
inline EpsilonMachine build_xor_process(double p) {
  using namespace detail;
  require_unit_interval(p, "build_xor_process");
  return EpsilonMachine({"A", "B", "C", "D", "E"}, Alphabet::binary(),
                        {
                            {kA, 0, kB, 0.5},
                            {kA, 1, kD, 0.5},
                            {kB, 0, kC, 0.5},
                            {kB, 1, kE, 0.5},
                            {kD, 0, kE, 0.5},
                            {kD, 1, kC, 0.5},
                            {kC, 0, kA, p},
                            {kC, 1, kA, 1.0 - p},
                            {kE, 1, kA, p},
                            {kE, 0, kA, 1.0 - p},
                        });
}

enum class ProcessFamily { kAnd, kXor };

inline EpsilonMachine build_process(ProcessFamily family, double p) {
  return family == ProcessFamily::kAnd ? build_and_process(p) : build_xor_process(p);
}

// ---------------------------------------------------------------------------
// Sampling

struct SymbolSequence {
  std::vector<std::string> symbols;
  std::uint64_t seed = 0;
  /// Hidden state path; states[t] is the state before symbols[t] is emitted,
  /// so it has one more entry than `symbols`.
  std::vector<std::size_t> states;
};

namespace detail {

/// Uniform double in [0, 1) from the top 53 bits; portable across standard
/// libraries, unlike std::uniform_real_distribution.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <typename Weights>
std::size_t draw(std::mt19937_64& rng, const Weights& weights, std::size_t count) {
  const double u = unit_uniform(rng);
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < count; ++k) {
    if (weights[k] <= 0.0) continue;
    acc += weights[k];
    last_positive = k;
    if (u < acc) return k;
  }
  return last_positive;
}

}  // namespace detail

/// Emits `n` symbols, starting from a stationary-distributed state.
inline SymbolSequence sample(const EpsilonMachine& m, std::size_t n, std::uint64_t seed) {
  SymbolSequence seq;
  seq.seed = seed;
  if (n == 0) return seq;

  std::mt19937_64 rng(seed);
  const auto pi = stationary(m);
  const std::size_t ns = m.num_states();
  const std::size_t nx = m.num_symbols();

  std::vector<std::vector<double>> rows(ns, std::vector<double>(nx * ns));
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t j = 0; j < ns; ++j) rows[i][x * ns + j] = m.probability(i, x, j);

  seq.symbols.reserve(n);
  seq.states.reserve(n + 1);
  std::size_t state = detail::draw(rng, pi.weights.weights(), ns);
  seq.states.push_back(state);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t k = detail::draw(rng, rows[state], nx * ns);
    seq.symbols.push_back(m.alphabet()[k / ns]);
    state = k % ns;
    seq.states.push_back(state);
  }
  return seq;
}

// ---------------------------------------------------------------------------

/// True iff every (target state, symbol) pair has at most one predecessor
/// with positive probability.
inline bool is_retrodictively_deterministic(const EpsilonMachine& m) {
  for (std::size_t j = 0; j < m.num_states(); ++j) {
    for (std::size_t x = 0; x < m.num_symbols(); ++x) {
      int predecessors = 0;
      for (std::size_t i = 0; i < m.num_states(); ++i)
        if (m.probability(i, x, j) > 0.0) ++predecessors;
      if (predecessors > 1) return false;
    }
  }
  return true;
}

}  // namespace qcorr
