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

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "qcorr/numerics.hpp"

using namespace qcorr;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace {

ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = complex_t(g(rng), g(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

std::vector<double> random_probabilities(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> e;
  std::vector<double> p(n);
  double s = 0.0;
  for (auto& v : p) s += (v = e(rng));
  for (auto& v : p) v /= s;
  return p;
}

}  // namespace

TEST_CASE("hermitian_eigenvalues on small closed forms", "[numerics]") {
  const auto id = hermitian_eigenvalues(ComplexMatrix::identity(2));
  REQUIRE(id.size() == 2);
  CHECK(id[0] == Approx(1.0).margin(1e-14));
  CHECK(id[1] == Approx(1.0).margin(1e-14));

  const auto x = hermitian_eigenvalues(ComplexMatrix{{0, 1}, {1, 0}});
  CHECK(x[0] == Approx(1.0).margin(1e-14));
  CHECK(x[1] == Approx(-1.0).margin(1e-14));

  const complex_t i{0, 1};
  const auto y = hermitian_eigenvalues(ComplexMatrix{{0, -i}, {i, 0}});
  CHECK(y[0] == Approx(1.0).margin(1e-14));
  CHECK(y[1] == Approx(-1.0).margin(1e-14));
}

TEST_CASE("AND weighted Gram spectrum matches its characteristic polynomial", "[numerics][oracle]") {
  // States A..E at p = 1; only B and D overlap (<psi_B|psi_D> = 1/2).
  const ComplexMatrix m{{1.0 / 3, 0, 0, 0, 0},
                        {0, 1.0 / 6, 0, 1.0 / 12, 0},
                        {0, 0, 1.0 / 4, 0, 0},
                        {0, 1.0 / 12, 0, 1.0 / 6, 0},
                        {0, 0, 0, 0, 1.0 / 12}};
  const auto charpoly = oracle::characteristic_polynomial(m);
  const auto expected = oracle::polynomial_from_roots(oracle::kAndSpectrum);
  REQUIRE(charpoly.size() == expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    CHECK(std::abs(charpoly[k] - expected[k]) < 1e-12);
  }

  const auto s = hermitian_eigenvalues(m);
  for (std::size_t k = 0; k < s.size(); ++k) CHECK(s[k] == Approx(oracle::kAndSpectrum[k]).margin(1e-8));
}

TEST_CASE("hermitian_eigenvalues rejects bad input", "[numerics][errors]") {
  REQUIRE_THROWS_AS(hermitian_eigenvalues(ComplexMatrix(2, 3)), ContractViolation);
  REQUIRE_THROWS_WITH(hermitian_eigenvalues(ComplexMatrix{{1, 2}, {3, 1}}), ContainsSubstring("(0,1)"));
  REQUIRE_THROWS_WITH(hermitian_eigenvalues(ComplexMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0.5, 1}}),
                      ContainsSubstring("(1,2)"));
  const complex_t i{0, 1};
  REQUIRE_THROWS_AS(hermitian_eigenvalues(ComplexMatrix{{i, 0}, {0, 1}}), ContractViolation);
}

TEST_CASE("eigenvalues sum to the trace and agree with Eigen", "[numerics][property]") {
  std::mt19937_64 rng(20261017);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto m = random_hermitian(rng, n);
    const auto s = hermitian_eigenvalues(m);
    REQUIRE(s.size() == n);
    CHECK(std::abs(s.sum() - m.trace().real()) <= 1e-9 * static_cast<double>(n));
    CHECK(std::is_sorted(s.eigenvalues().begin(), s.eigenvalues().end(), std::greater<>()));

    const auto ref = oracle::eigen_eigenvalues(m);
    for (std::size_t k = 0; k < n; ++k) CHECK(s[k] == Approx(ref[k]).margin(1e-9));

    if (n <= 4) {
      const auto c = oracle::characteristic_polynomial(m);
      // |p(lambda)| <= |p'(lambda)| * 1e-8 bounds the distance to a simple root.
      for (std::size_t k = 0; k < n; ++k) {
        double deriv = 1.0;
        for (std::size_t l = 0; l < n; ++l)
          if (l != k) deriv *= std::abs(s[k] - ref[l]);
        CHECK(std::abs(oracle::evaluate_polynomial(c, s[k])) <= std::max(deriv, 1e-6) * 1e-8);
      }
    }
  }
}

TEST_CASE("shannon_entropy", "[numerics]") {
  CHECK(shannon_entropy(ProbabilityVector{1, 0, 0}) == 0.0);
  CHECK(shannon_entropy(ProbabilityVector{0.25, 0.25, 0.25, 0.25}) == Approx(2.0).margin(1e-15));
  const ProbabilityVector and_states{1.0 / 3, 1.0 / 6, 1.0 / 4, 1.0 / 6, 1.0 / 12};
  CHECK(shannon_entropy(and_states) == Approx(2.1887).margin(5e-5));
  CHECK(shannon_entropy(and_states) == Approx(2.19).margin(0.005));
}

TEST_CASE("probability vectors reject invalid weights", "[numerics][errors]") {
  REQUIRE_THROWS_AS(ProbabilityVector({0.5, 0.6, -0.1}), ContractViolation);
  REQUIRE_THROWS_AS(ProbabilityVector({0.5, 0.4}), ContractViolation);
  REQUIRE_NOTHROW(ProbabilityVector({0.5, 0.5 + 1e-10}));
}

TEST_CASE("von_neumann_entropy", "[numerics]") {
  CHECK(von_neumann_entropy(DensitySpectrum({1, 0})) == 0.0);
  CHECK(von_neumann_entropy(DensitySpectrum({0.5, 0.5})) == Approx(1.0).margin(1e-15));
  const DensitySpectrum s({1.0 / 3, 1.0 / 4, 1.0 / 4, 1.0 / 12, 1.0 / 12});
  CHECK(von_neumann_entropy(s) == Approx(2.1258).margin(5e-5));
  CHECK(von_neumann_entropy(s) == Approx(2.13).margin(0.005));
}

TEST_CASE("von_neumann_entropy clamps roundoff but rejects invalid spectra", "[numerics][errors]") {
  CHECK(von_neumann_entropy(DensitySpectrum({1.0 + 5e-11, -5e-11})) == Approx(0.0).margin(1e-9));
  REQUIRE_THROWS_AS(von_neumann_entropy(DensitySpectrum({1.1, -0.1})), ContractViolation);
  REQUIRE_THROWS_AS(von_neumann_entropy(DensitySpectrum({0.5, 0.4})), ContractViolation);

  Tolerances loose;
  loose.spectrum_sum = 0.2;
  REQUIRE_NOTHROW(von_neumann_entropy(DensitySpectrum({0.5, 0.4}), loose));
}

TEST_CASE("entropies: diagonal identity, permutation invariance, point masses", "[numerics][property]") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 8;
    auto p = random_probabilities(rng, n);
    const double h = shannon_entropy(ProbabilityVector(p));
    CHECK(h >= 0.0);
    CHECK(h <= std::log2(static_cast<double>(n)) + 1e-12);

    const auto s = hermitian_eigenvalues(ComplexMatrix::diagonal(p));
    CHECK(von_neumann_entropy(s) == Approx(h).margin(1e-10));

    std::shuffle(p.begin(), p.end(), rng);
    CHECK(shannon_entropy(ProbabilityVector(p)) == Approx(h).margin(1e-12));

    const auto delta = oracle::point_mass(n, trial % n);
    CHECK(shannon_entropy(ProbabilityVector(delta)) == 0.0);
    CHECK(von_neumann_entropy(DensitySpectrum(delta)) == 0.0);
  }
}

TEST_CASE("tensor_product of state vectors", "[numerics]") {
  const auto k0 = StateVector::basis(2, 0);
  const auto k1 = StateVector::basis(2, 1);
  const auto k01 = tensor_product(k0, k1);
  REQUIRE(k01.dimension() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(k01[i] - complex_t(i == 1 ? 1.0 : 0.0)) < 1e-15);

  const double h = 1.0 / std::sqrt(2.0);
  const auto plus = StateVector{h, h};
  const auto plus0 = tensor_product(plus, k0);
  const std::vector<double> expected{h, 0, h, 0};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(plus0[i] - expected[i]) < 1e-15);

  std::vector<complex_t> sum(4);
  const auto a = tensor_product(k0, k0);
  const auto b = tensor_product(k1, k1);
  for (std::size_t i = 0; i < 4; ++i) sum[i] = a[i] + b[i];
  const auto bell = StateVector::normalized(sum);
  const std::vector<double> bell_amps{h, 0, 0, h};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(bell[i] - bell_amps[i]) < 1e-15);
}

TEST_CASE("tensor_product is associative", "[numerics][property]") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  auto random_state = [&](std::size_t n) {
    std::vector<complex_t> v(n);
    for (auto& z : v) z = complex_t(g(rng), g(rng));
    return StateVector::normalized(v);
  };
  auto random_matrix = [&](std::size_t r, std::size_t c) {
    ComplexMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = complex_t(g(rng), g(rng));
    return m;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_state(2), b = random_state(3), c = random_state(2);
    const auto left = tensor_product(tensor_product(a, b), c);
    const auto right = tensor_product(a, tensor_product(b, c));
    for (std::size_t i = 0; i < left.dimension(); ++i) CHECK(std::abs(left[i] - right[i]) < 1e-14);

    const auto ma = random_matrix(2, 3), mb = random_matrix(2, 2), mc = random_matrix(1, 2);
    const auto ml = tensor_product(tensor_product(ma, mb), mc);
    const auto mr = tensor_product(ma, tensor_product(mb, mc));
    REQUIRE(ml.rows() == mr.rows());
    REQUIRE(ml.cols() == mr.cols());
    for (std::size_t k = 0; k < ml.entries().size(); ++k) CHECK(std::abs(ml.entries()[k] - mr.entries()[k]) < 1e-12);
  }
}

TEST_CASE("state vectors must be normalized", "[numerics][errors]") {
  REQUIRE_THROWS_AS(StateVector({1.0, 1.0}), ContractViolation);
  REQUIRE_THROWS_AS(StateVector::normalized({0.0, 0.0}), ContractViolation);
  REQUIRE_THROWS_AS(StateVector::basis(2, 2), ContractViolation);
}
