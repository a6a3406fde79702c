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

// Correlation-assisted computation of AND.
//
// Two sites receive bits a and b and must output m1, m2 with
// m1 ^ m2 == a & b. With shared measurement settings indexed by the input bit
// (input 0 -> first basis, input 1 -> second basis) the average success is
// C/8 + 1/2, where C = 2 (p_s(0,0) + p_s(0,1) + p_s(1,0) - p_s(1,1) - 1) is
// the CHSH value built from same-outcome probabilities. Three sites sharing a
// GHZ state and measuring in x/y bases succeed with certainty.
//
// Outcome convention everywhere: "+" -> bit 0, "-" -> bit 1.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qcorr/numerics.hpp"

namespace qcorr {

inline constexpr double kTsirelsonBound = 2.0 * std::numbers::sqrt2;

// ---------------------------------------------------------------------------
// Single-qubit binary measurements

/// Binary projective qubit measurement whose "+" outcome is the Bloch vector
/// (sin polar cos azimuth, sin polar sin azimuth, cos polar).
struct MeasurementBasis {
  double polar = 0.0;
  double azimuth = 0.0;

  static MeasurementBasis z() { return {0.0, 0.0}; }
  static MeasurementBasis x() { return {std::numbers::pi / 2, 0.0}; }
  static MeasurementBasis y() { return {std::numbers::pi / 2, std::numbers::pi / 2}; }
  /// Direction at `angle` from +z towards +x (the real great circle).
  static MeasurementBasis in_plane(double angle) { return {angle, 0.0}; }

  /// Eigenvector for outcome 0 ("+") or 1 ("-").
  std::array<complex_t, 2> eigenvector(int outcome) const {
    if (!std::isfinite(polar) || !std::isfinite(azimuth)) throw ContractViolation("MeasurementBasis: non-finite angle");
    const double c = std::cos(polar / 2);
    const double s = std::sin(polar / 2);
    const complex_t phase = std::polar(1.0, azimuth);
    if (outcome == 0) return {complex_t(c), phase * s};
    return {complex_t(-s), phase * c};
  }

  ComplexMatrix projector(int outcome) const {
    const auto v = eigenvector(outcome);
    ComplexMatrix m(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
  }
};

inline StateVector bell_state() {
  const double h = 1.0 / std::numbers::sqrt2;
  return StateVector{h, 0.0, 0.0, h};
}

/// (|001> + |110>) / sqrt(2), site 1 most significant.
inline StateVector ghz_state() {
  const double h = 1.0 / std::numbers::sqrt2;
  return StateVector{0.0, h, 0.0, 0.0, 0.0, 0.0, h, 0.0};
}

/// Probability of every outcome string when qubit k is measured in
/// bases[k]. Index = m_1 m_2 ... m_n read as a binary number.
inline std::vector<double> outcome_distribution(const StateVector& state, std::span<const MeasurementBasis> bases) {
  const std::size_t n = bases.size();
  if (state.dimension() != (std::size_t{1} << n)) {
    throw ContractViolation(detail::concat("outcome_distribution: state dimension ", state.dimension(), " != 2^", n));
  }
  std::vector<double> probs(state.dimension());
  for (std::size_t outcome = 0; outcome < probs.size(); ++outcome) {
    std::vector<complex_t> bra{1.0};
    for (std::size_t k = 0; k < n; ++k) {
      const auto v = bases[k].eigenvector(static_cast<int>((outcome >> (n - 1 - k)) & 1));
      bra = kronecker(bra, v);
    }
    probs[outcome] = std::norm(inner_product(bra, state.amplitudes()));
  }
  return probs;
}

// ---------------------------------------------------------------------------
// CHSH

/// p_s = <psi| P+ (x) P+ + P- (x) P- |psi>
inline double same_outcome_probability(const StateVector& state, const MeasurementBasis& alice,
                                       const MeasurementBasis& bob) {
  if (state.dimension() != 4) {
    throw ContractViolation(detail::concat("same_outcome_probability: expected a 2-qubit state, got dimension ",
                                           state.dimension()));
  }
  const ComplexMatrix same = tensor_product(alice.projector(0), bob.projector(0)) +
                             tensor_product(alice.projector(1), bob.projector(1));
  return std::clamp(expectation(state, same).real(), 0.0, 1.0);
}

struct BipartiteStrategy {
  StateVector shared;
  std::array<MeasurementBasis, 2> alice;  // indexed by Alice's input bit
  std::array<MeasurementBasis, 2> bob;    // indexed by Bob's input bit
};

struct GameOutcome {
  std::array<std::array<double, 2>, 2> p_same{};  // [alice input][bob input]
  double chsh = 0.0;
  double success = 0.0;
};

inline double chsh_from_same(const std::array<std::array<double, 2>, 2>& ps) {
  return 2.0 * (ps[0][0] + ps[0][1] + ps[1][0] - ps[1][1] - 1.0);
}

inline double success_from_chsh(double c) {
  if (!(std::abs(c) <= kTsirelsonBound + 1e-9)) {
    throw DomainError(detail::concat("success_from_chsh: |C| = ", std::abs(c), " exceeds 2*sqrt(2)"));
  }
  return c / 8.0 + 0.5;
}

inline GameOutcome chsh_value(const BipartiteStrategy& s) {
  if (s.shared.dimension() != 4) throw ContractViolation("chsh_value: shared state must be 2 qubits");
  GameOutcome g;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) g.p_same[a][b] = same_outcome_probability(s.shared, s.alice[a], s.bob[b]);
  g.chsh = chsh_from_same(g.p_same);
  g.success = success_from_chsh(g.chsh);
  return g;
}

/// Average over uniform (a, b) of Pr(m1 ^ m2 == a & b), from the joint
/// outcome distribution.
inline double and_game_success(const BipartiteStrategy& s) {
  double total = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const std::array<MeasurementBasis, 2> bases{s.alice[a], s.bob[b]};
      const auto dist = outcome_distribution(s.shared, bases);
      for (int m1 = 0; m1 < 2; ++m1)
        for (int m2 = 0; m2 < 2; ++m2)
          if ((m1 ^ m2) == (a & b)) total += dist[m1 * 2 + m2];
    }
  }
  return total / 4.0;
}

/// Deterministic local strategy: each party outputs a fixed bit per input.
struct LocalStrategy {
  std::array<int, 2> alice{};
  std::array<int, 2> bob{};

  /// Lexicographic code alice[0] alice[1] bob[0] bob[1].
  unsigned code() const { return (alice[0] << 3) | (alice[1] << 2) | (bob[0] << 1) | bob[1]; }
  static LocalStrategy from_code(unsigned c) {
    return {{int((c >> 3) & 1), int((c >> 2) & 1)}, {int((c >> 1) & 1), int(c & 1)}};
  }
};

inline double chsh_value(const LocalStrategy& s) {
  std::array<std::array<double, 2>, 2> ps{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) ps[a][b] = s.alice[a] == s.bob[b] ? 1.0 : 0.0;
  return chsh_from_same(ps);
}

/// Embeds a local strategy as a product state |00> measured along +-z.
inline BipartiteStrategy embed(const LocalStrategy& s) {
  auto basis = [](int bit) { return MeasurementBasis::in_plane(bit ? std::numbers::pi : 0.0); };
  return {StateVector::basis(4, 0), {basis(s.alice[0]), basis(s.alice[1])}, {basis(s.bob[0]), basis(s.bob[1])}};
}

struct ClassicalChshResult {
  double max_abs = 0.0;
  double max = 0.0;
  double min = 0.0;
  LocalStrategy witness;  // first strategy (by code) attaining max |C|
  std::size_t enumerated = 0;
};

inline ClassicalChshResult classical_chsh_max() {
  ClassicalChshResult r;
  r.max = -1e300;
  r.min = 1e300;
  r.max_abs = -1.0;
  for (unsigned code = 0; code < 16; ++code) {
    const auto s = LocalStrategy::from_code(code);
    const double c = chsh_value(s);
    ++r.enumerated;
    r.max = std::max(r.max, c);
    r.min = std::min(r.min, c);
    if (std::abs(c) > r.max_abs) {
      r.max_abs = std::abs(c);
      r.witness = s;
    }
  }
  return r;
}

/// Alice {0, pi/2}, Bob {pi/4, -pi/4} on the real great circle.
inline BipartiteStrategy tsirelson_strategy() {
  using std::numbers::pi;
  return {bell_state(),
          {MeasurementBasis::in_plane(0.0), MeasurementBasis::in_plane(pi / 2)},
          {MeasurementBasis::in_plane(pi / 4), MeasurementBasis::in_plane(-pi / 4)}};
}

struct ChshOptimization {
  BipartiteStrategy strategy;
  double chsh = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

inline constexpr double kOptimizerMinStep = 1e-10;

/// Pattern search over the four in-plane measurement angles. Each iteration
/// probes offsets of +-1..4 grid steps along every coordinate axis and every
/// pairwise diagonal, takes the best strict improvement, and halves the step
/// when nothing improves. Converged once the step falls below
/// kOptimizerMinStep. The diagonals let the search leave the C = 2 saddle at
/// all-zero angles, where each single coordinate is flat or maximal.
inline ChshOptimization optimize_chsh(const BipartiteStrategy& initial, std::size_t iterations) {
  for (const auto* side : {&initial.alice, &initial.bob})
    for (const auto& b : *side)
      if (b.azimuth != 0.0) throw ContractViolation("optimize_chsh: initial bases must lie on the real great circle");

  std::array<double, 4> angles{initial.alice[0].polar, initial.alice[1].polar, initial.bob[0].polar,
                               initial.bob[1].polar};
  auto make = [&](const std::array<double, 4>& t) {
    return BipartiteStrategy{initial.shared,
                             {MeasurementBasis::in_plane(t[0]), MeasurementBasis::in_plane(t[1])},
                             {MeasurementBasis::in_plane(t[2]), MeasurementBasis::in_plane(t[3])}};
  };
  auto value = [&](const std::array<double, 4>& t) { return chsh_value(make(t)).chsh; };

  std::vector<std::array<double, 4>> directions;
  for (int i = 0; i < 4; ++i) {
    std::array<double, 4> d{};
    d[i] = 1.0;
    directions.push_back(d);
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (double sign : {1.0, -1.0}) {
        std::array<double, 4> d{};
        d[i] = 1.0;
        d[j] = sign;
        directions.push_back(d);
      }

  double best = value(angles);
  double step = std::numbers::pi / 8;
  ChshOptimization out;
  for (; out.iterations < iterations && step >= kOptimizerMinStep; ++out.iterations) {
    std::array<double, 4> candidate = angles;
    double candidate_value = best;
    for (const auto& d : directions) {
      for (int k = -4; k <= 4; ++k) {
        if (k == 0) continue;
        std::array<double, 4> t = angles;
        for (int i = 0; i < 4; ++i) t[i] += k * step * d[i];
        const double v = value(t);
        if (v > candidate_value + 1e-15) {
          candidate_value = v;
          candidate = t;
        }
      }
    }
    if (candidate_value > best) {
      angles = candidate;
      best = candidate_value;
    } else {
      step /= 2;
    }
  }
  out.converged = step < kOptimizerMinStep;
  out.strategy = make(angles);
  out.chsh = best;
  return out;
}

/// Strategy with uniformly random in-plane angles sharing a Bell state.
inline BipartiteStrategy random_plane_strategy(std::mt19937_64& rng) {
  auto angle = [&] { return (static_cast<double>(rng() >> 11) * 0x1.0p-53) * 2.0 * std::numbers::pi; };
  return {bell_state(),
          {MeasurementBasis::in_plane(angle()), MeasurementBasis::in_plane(angle())},
          {MeasurementBasis::in_plane(angle()), MeasurementBasis::in_plane(angle())}};
}

// ---------------------------------------------------------------------------
// Three-site GHZ protocol

/// Site inputs (a, b, a ^ b); input 0 measures x, input 1 measures y.
/// Returns the 8-outcome distribution indexed by m1 m2 m3.
inline std::array<double, 8> ghz_round(int a, int b, const StateVector& state = ghz_state()) {
  if ((a != 0 && a != 1) || (b != 0 && b != 1)) throw DomainError("ghz_round: inputs must be bits");
  if (state.dimension() != 8) throw ContractViolation("ghz_round: expected a 3-qubit state");
  auto basis = [](int bit) { return bit ? MeasurementBasis::y() : MeasurementBasis::x(); };
  const std::array<MeasurementBasis, 3> bases{basis(a), basis(b), basis(a ^ b)};
  const auto v = outcome_distribution(state, bases);
  std::array<double, 8> out{};
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

/// Pr(m1 ^ m2 ^ m3 == a & b) for one input pair.
inline double ghz_round_success(int a, int b, const StateVector& state = ghz_state()) {
  const auto dist = ghz_round(a, b, state);
  double s = 0.0;
  for (int m = 0; m < 8; ++m) {
    const int parity = ((m >> 2) ^ (m >> 1) ^ m) & 1;
    if (parity == (a & b)) s += dist[m];
  }
  return s;
}

inline double ghz_success(const StateVector& state = ghz_state()) {
  double s = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) s += ghz_round_success(a, b, state);
  return s / 4.0;
}

struct ClassicalGhzResult {
  double max_success = 0.0;
  unsigned witness = 0;  // 6 bits: site k's outputs for inputs 0 and 1
  std::size_t enumerated = 0;
};

/// All 2^6 deterministic site strategies under the (a, b, a ^ b) wiring.
inline ClassicalGhzResult classical_ghz_max() {
  ClassicalGhzResult r;
  for (unsigned code = 0; code < 64; ++code) {
    auto out = [&](int site, int input) { return int((code >> (2 * site + input)) & 1); };
    int wins = 0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        if ((out(0, a) ^ out(1, b) ^ out(2, a ^ b)) == (a & b)) ++wins;
    ++r.enumerated;
    const double success = wins / 4.0;
    if (success > r.max_success) {
      r.max_success = success;
      r.witness = code;
    }
  }
  return r;
}

}  // namespace qcorr
