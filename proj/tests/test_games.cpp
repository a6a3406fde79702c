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

#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "qcorr/games.hpp"

using namespace qcorr;
using Catch::Approx;
using std::numbers::pi;

namespace {

BipartiteStrategy plane_strategy(StateVector state, double a0, double a1, double b0, double b1) {
  return {std::move(state),
          {MeasurementBasis::in_plane(a0), MeasurementBasis::in_plane(a1)},
          {MeasurementBasis::in_plane(b0), MeasurementBasis::in_plane(b1)}};
}

BipartiteStrategy random_strategy(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> angle(-pi, pi);
  std::vector<complex_t> amps(4);
  for (auto& z : amps) z = complex_t(g(rng), g(rng));
  auto basis = [&] { return MeasurementBasis{angle(rng), angle(rng)}; };
  return {StateVector::normalized(amps), {basis(), basis()}, {basis(), basis()}};
}

// Rotates x / y eigenbases onto the computational basis: H for x, H S^dagger for y.
ComplexMatrix to_computational(int input) {
  const double h = 1.0 / std::numbers::sqrt2;
  const complex_t i{0, 1};
  const ComplexMatrix hadamard{{h, h}, {h, -h}};
  if (input == 0) return hadamard;
  return hadamard * ComplexMatrix{{1, 0}, {0, -i}};
}

std::array<double, 8> ghz_statevector_oracle(int a, int b) {
  const auto u = tensor_product(tensor_product(to_computational(a), to_computational(b)), to_computational(a ^ b));
  const auto psi = ghz_state();
  std::array<double, 8> out{};
  for (std::size_t r = 0; r < 8; ++r) {
    complex_t amp{};
    for (std::size_t c = 0; c < 8; ++c) amp += u(r, c) * psi[c];
    out[r] = std::norm(amp);
  }
  return out;
}

}  // namespace

TEST_CASE("measurement projectors are complete and idempotent", "[games][property]") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> angle(-2 * pi, 2 * pi);
  for (int trial = 0; trial < 100; ++trial) {
    const MeasurementBasis basis{angle(rng), angle(rng)};
    const auto p0 = basis.projector(0);
    const auto p1 = basis.projector(1);
    const auto sum = p0 + p1;
    const auto sq0 = p0 * p0;
    const auto sq1 = p1 * p1;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        CHECK(std::abs(sum(i, j) - (i == j ? 1.0 : 0.0)) < 1e-12);
        CHECK(std::abs(sq0(i, j) - p0(i, j)) < 1e-12);
        CHECK(std::abs(sq1(i, j) - p1(i, j)) < 1e-12);
      }
  }
}

TEST_CASE("x and y bases match their textbook eigenvectors", "[games]") {
  const double h = 1.0 / std::numbers::sqrt2;
  const complex_t i{0, 1};
  const auto plus_i = MeasurementBasis::y().eigenvector(0);
  CHECK(std::abs(plus_i[0] - h) < 1e-15);
  CHECK(std::abs(plus_i[1] - i * h) < 1e-15);
  const auto minus = MeasurementBasis::x().eigenvector(1);
  // -|-> up to a global phase: |<-|v>| = 1.
  CHECK(std::abs(std::abs(h * minus[0] - h * minus[1]) - 1.0) < 1e-15);
}

TEST_CASE("same_outcome_probability", "[games]") {
  const auto bell = bell_state();
  for (double theta : {0.0, 0.3, pi / 2, 2.0}) {
    const auto basis = MeasurementBasis::in_plane(theta);
    CHECK(same_outcome_probability(bell, basis, basis) == Approx(1.0).margin(1e-12));
  }
  // (1 + cos delta) / 2 for in-plane bases on the Bell state.
  for (double delta : {pi / 2, pi / 3, 1.0}) {
    CHECK(same_outcome_probability(bell, MeasurementBasis::in_plane(0.4), MeasurementBasis::in_plane(0.4 + delta)) ==
          Approx((1 + std::cos(delta)) / 2).margin(1e-12));
  }
  CHECK(same_outcome_probability(StateVector::basis(4, 0), MeasurementBasis::z(), MeasurementBasis::z()) ==
        Approx(1.0).margin(1e-15));
  REQUIRE_THROWS_AS(same_outcome_probability(StateVector::basis(8, 0), MeasurementBasis::z(), MeasurementBasis::z()),
                    ContractViolation);
}

TEST_CASE("chsh_value", "[games]") {
  const auto g = chsh_value(tsirelson_strategy());
  CHECK(g.chsh == Approx(kTsirelsonBound).margin(1e-12));
  CHECK(g.success == Approx(0.8535533905932737).margin(1e-12));

  for (unsigned code = 0; code < 16; ++code) {
    const auto local = LocalStrategy::from_code(code);
    const auto embedded = chsh_value(embed(local));
    CHECK(std::abs(embedded.chsh) <= 2.0 + 1e-12);
    CHECK(embedded.chsh == Approx(chsh_value(local)).margin(1e-12));
  }
  CHECK(chsh_from_same({{{0.75, 0.75}, {0.75, 0.75}}}) == Approx(1.0).margin(1e-15));
}

TEST_CASE("classical CHSH enumeration", "[games]") {
  const auto r = classical_chsh_max();
  CHECK(r.enumerated == 16);
  CHECK(r.max_abs == 2.0);
  CHECK(r.max == 2.0);
  CHECK(r.min == -2.0);
  CHECK(r.witness.code() == 0);  // everyone outputs 0

  // Flipping Bob's outputs maps C to -C.
  for (unsigned code = 0; code < 16; ++code) {
    auto s = LocalStrategy::from_code(code);
    const double c = chsh_value(s);
    s.bob = {1 - s.bob[0], 1 - s.bob[1]};
    CHECK(chsh_value(s) == -c);
  }
}

TEST_CASE("optimize_chsh reaches the Tsirelson bound", "[games][optimize]") {
  const auto from_zero = optimize_chsh(plane_strategy(bell_state(), 0, 0, 0, 0), 500);
  CHECK(from_zero.converged);
  CHECK(from_zero.chsh == Approx(kTsirelsonBound).margin(1e-6));
  CHECK(chsh_value(from_zero.strategy).chsh == Approx(from_zero.chsh).margin(1e-15));

  const auto start = tsirelson_strategy();
  const auto fixed = optimize_chsh(start, 500);
  CHECK(fixed.chsh == Approx(kTsirelsonBound).margin(1e-12));
  CHECK(fixed.strategy.alice[0].polar == Approx(start.alice[0].polar).margin(1e-6));
  CHECK(fixed.strategy.bob[1].polar == Approx(start.bob[1].polar).margin(1e-6));

  std::mt19937_64 rng(2026);
  for (int k = 0; k < 25; ++k) {
    const auto r = optimize_chsh(random_plane_strategy(rng), 500);
    INFO("start " << k);
    CHECK(r.converged);
    CHECK(r.chsh == Approx(kTsirelsonBound).margin(1e-6));
  }
}

TEST_CASE("optimize_chsh flags an exhausted budget", "[games][optimize]") {
  const auto r = optimize_chsh(plane_strategy(bell_state(), 0, 0, 0, 0), 2);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 2);
  CHECK(r.chsh >= 2.0);
  BipartiteStrategy off_plane = tsirelson_strategy();
  off_plane.bob[0] = MeasurementBasis::y();
  REQUIRE_THROWS_AS(optimize_chsh(off_plane, 10), ContractViolation);
}

TEST_CASE("success_from_chsh", "[games]") {
  CHECK(success_from_chsh(2.0) == 0.75);
  CHECK(success_from_chsh(kTsirelsonBound) == Approx(0.853553).margin(5e-7));
  CHECK(success_from_chsh(0.0) == 0.5);
  REQUIRE_THROWS_AS(success_from_chsh(3.0), DomainError);
  REQUIRE_THROWS_AS(success_from_chsh(-2.9), DomainError);
}

TEST_CASE("and_game_success from measurement statistics", "[games]") {
  CHECK(and_game_success(tsirelson_strategy()) == Approx(0.8535533905932737).margin(1e-12));

  const LocalStrategy constant_zero{};
  CHECK(and_game_success(embed(constant_zero)) == Approx(0.75).margin(1e-15));

  // |+>|+> measured along z: independent fair coins.
  const auto noise = plane_strategy(StateVector{0.5, 0.5, 0.5, 0.5}, 0, 0, 0, 0);
  CHECK(and_game_success(noise) == Approx(0.5).margin(1e-15));
}

TEST_CASE("and_game_success equals C/8 + 1/2", "[games][property]") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_strategy(rng);
    const auto g = chsh_value(s);
    CHECK(std::abs(and_game_success(s) - success_from_chsh(g.chsh)) <= 1e-12);
    CHECK(std::abs(g.chsh) <= kTsirelsonBound + 1e-9);
    for (const auto& row : g.p_same)
      for (double ps : row) {
        CHECK(ps >= 0.0);
        CHECK(ps <= 1.0);
      }
  }
}

TEST_CASE("GHZ rounds", "[games][ghz]") {
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const auto dist = ghz_round(a, b);
      const auto ref = ghz_statevector_oracle(a, b);
      double total = 0.0;
      for (int m = 0; m < 8; ++m) {
        total += dist[m];
        CHECK(dist[m] == Approx(ref[m]).margin(1e-12));
        const int parity = ((m >> 2) ^ (m >> 1) ^ m) & 1;
        if (parity != (a & b)) {
          CHECK(dist[m] <= 1e-12);
        } else {
          CHECK(dist[m] == Approx(0.25).margin(1e-12));
        }
      }
      CHECK(total == Approx(1.0).margin(1e-12));
      CHECK(ghz_round_success(a, b) == Approx(1.0).margin(1e-12));
    }
  }
  REQUIRE_THROWS_AS(ghz_round(2, 0), DomainError);
}

TEST_CASE("GHZ success versus classical and unentangled controls", "[games][ghz]") {
  CHECK(ghz_success() == Approx(1.0).margin(1e-12));

  const auto classical = classical_ghz_max();
  CHECK(classical.enumerated == 64);
  CHECK(classical.max_success < 1.0);
  CHECK(classical.max_success == 0.75);

  CHECK(ghz_success(StateVector::basis(8, 0)) < 1.0 - 1e-3);
}
