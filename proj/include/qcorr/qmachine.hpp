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

// Quantum causal states and the quantum statistical memory C_q.
//
// Each causal state k is encoded as
//
//   |psi_k> = sum_{j,x} sqrt(T(k, x, j)) |S_j> (x) |x>
//
// i.e. the ket carries the *successor* state and the emitted symbol. The
// memory is rho = sum_k pi_k |psi_k><psi_k| and C_q = S(rho). The nonzero
// spectrum of rho equals that of the |S|x|S| matrix
// M_jk = sqrt(pi_j pi_k) <psi_j|psi_k>, which is what we diagonalize.

#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "qcorr/numerics.hpp"
#include "qcorr/process.hpp"

namespace qcorr {

struct QuantumCausalEnsemble {
  EpsilonMachine machine;
  std::vector<StateVector> vectors;  // one per machine state, basis index j * |X| + x
  ProbabilityVector weights;         // stationary distribution
  bool minimal = true;               // false if the machine has mergeable states
};

inline QuantumCausalEnsemble causal_state_vectors(const EpsilonMachine& m) {
  QuantumCausalEnsemble e;
  e.machine = m;
  e.weights = stationary(m).weights;
  e.minimal = minimize(m).num_states() == m.num_states();

  const std::size_t ns = m.num_states();
  const std::size_t nx = m.num_symbols();
  e.vectors.reserve(ns);
  for (std::size_t k = 0; k < ns; ++k) {
    std::vector<complex_t> amps(ns * nx);
    for (std::size_t j = 0; j < ns; ++j)
      for (std::size_t x = 0; x < nx; ++x) amps[j * nx + x] = std::sqrt(std::max(0.0, m.probability(k, x, j)));
    // Rows are stochastic only to 1e-9; renormalize to meet the 1e-12 norm contract.
    e.vectors.push_back(StateVector::normalized(std::move(amps)));
  }
  return e;
}

/// G_jk = <psi_j|psi_k>
inline ComplexMatrix gram_matrix(const QuantumCausalEnsemble& e) {
  const std::size_t n = e.vectors.size();
  ComplexMatrix g(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) g(j, k) = inner_product(e.vectors[j], e.vectors[k]);
  return g;
}

/// M_jk = sqrt(pi_j pi_k) G_jk; shares the nonzero spectrum of rho.
inline ComplexMatrix weighted_gram_matrix(const QuantumCausalEnsemble& e) {
  ComplexMatrix m = gram_matrix(e);
  for (std::size_t j = 0; j < m.rows(); ++j)
    for (std::size_t k = 0; k < m.cols(); ++k) m(j, k) *= std::sqrt(e.weights[j] * e.weights[k]);
  return m;
}

struct QuantumComplexityReport {
  double c_q = 0.0;           // qubits
  DensitySpectrum spectrum;   // of the weighted Gram matrix
  std::size_t causal_states = 0;
};

/// Evaluates C_q on `m` as given, without minimizing first.
inline QuantumComplexityReport quantum_complexity_of(const EpsilonMachine& m, const Tolerances& tol = {}) {
  const auto ensemble = causal_state_vectors(m);
  const auto spectrum = as_density_spectrum(hermitian_eigenvalues(weighted_gram_matrix(ensemble), tol), tol);
  return {von_neumann_entropy(spectrum, tol), spectrum, m.num_states()};
}

inline QuantumComplexityReport quantum_complexity_report(const EpsilonMachine& m, const Tolerances& tol = {}) {
  return quantum_complexity_of(minimize(m), tol);
}

/// C_q in qubits, computed on the minimized machine.
inline double quantum_complexity(const EpsilonMachine& m) { return quantum_complexity_report(m).c_q; }

// ---------------------------------------------------------------------------
// Parameter sweeps

struct SweepRow {
  double p;
  double c_mu;
  double c_q;
  // Same quantities on the unminimized five-state topology.
  double c_mu_raw;
  double c_q_raw;
};

struct SweepTable {
  ProcessFamily family;
  std::vector<SweepRow> rows;  // ascending p
};

/// `points` evenly spaced values 0, 1/(points-1), ..., 1.
inline std::vector<double> uniform_grid(std::size_t points) {
  if (points == 0) throw DomainError("uniform_grid: need at least one point");
  if (points == 1) return {0.0};
  std::vector<double> grid(points);
  for (std::size_t k = 0; k < points; ++k) grid[k] = static_cast<double>(k) / static_cast<double>(points - 1);
  return grid;
}

inline SweepTable complexity_sweep(ProcessFamily family, std::vector<double> grid) {
  for (double p : grid) detail::require_unit_interval(p, "complexity_sweep");
  std::sort(grid.begin(), grid.end());
  SweepTable table{family, {}};
  table.rows.reserve(grid.size());
  for (double p : grid) {
    const auto raw = build_process(family, p);
    const auto minimal = minimize(raw);
    table.rows.push_back({p, statistical_complexity(minimal), quantum_complexity_of(minimal).c_q,
                          statistical_complexity(raw), quantum_complexity_of(raw).c_q});
  }
  return table;
}

namespace detail {

inline std::string sig12(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace detail

/// CSV with header `p,c_mu_bits,c_q_qubits`; `raw_topology` appends the
/// unminimized columns `c_mu_raw_bits,c_q_raw_qubits`.
inline void write_sweep_csv(std::ostream& out, const SweepTable& table, bool raw_topology = false) {
  out << "p,c_mu_bits,c_q_qubits";
  if (raw_topology) out << ",c_mu_raw_bits,c_q_raw_qubits";
  out << '\n';
  for (const auto& r : table.rows) {
    out << detail::sig12(r.p) << ',' << detail::sig12(r.c_mu) << ',' << detail::sig12(r.c_q);
    if (raw_topology) out << ',' << detail::sig12(r.c_mu_raw) << ',' << detail::sig12(r.c_q_raw);
    out << '\n';
  }
}

}  // namespace qcorr
