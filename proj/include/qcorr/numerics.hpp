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

// Small dense complex linear algebra: matrices, state vectors, Kronecker
// products, a cyclic Jacobi eigensolver for Hermitian matrices, and the
// Shannon / von Neumann entropies (base 2).

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcorr {

using complex_t = std::complex<double>;

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised for arguments outside a mathematical domain (p outside [0,1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Numeric thresholds shared by the kernel. Every function that needs one
/// takes a `Tolerances` argument defaulting to these values.
struct Tolerances {
  double hermitian = 1e-10;        // entrywise |m_ij - conj(m_ji)|
  double probability_sum = 1e-9;   // |sum(p) - 1| for probability vectors
  double spectrum_sum = 1e-8;      // |sum(lambda) - 1| for density spectra
  double negative_clamp = 1e-10;   // eigenvalues in [-clamp, 0) become 0
  double jacobi_off_norm = 1e-12;  // stop when off-diagonal Frobenius norm falls below
  int jacobi_max_sweeps = 100;
};

namespace detail {

inline bool is_finite(complex_t z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

template <typename... Args>
std::string concat(Args&&... args) {
  std::ostringstream oss;
  oss.precision(17);
  (oss << ... << std::forward<Args>(args));
  return oss.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// ComplexMatrix

class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex_t> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
      throw ContractViolation(detail::concat("ComplexMatrix: expected ", rows_ * cols_, " entries, got ",
                                             data_.size()));
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
      if (!detail::is_finite(data_[k])) {
        throw ContractViolation(detail::concat("ComplexMatrix: non-finite entry at (", k / cols_, ",", k % cols_,
                                               ")"));
      }
    }
  }

  /// Row-major nested initializer, e.g. `{{0, 1}, {1, 0}}`.
  ComplexMatrix(std::initializer_list<std::initializer_list<complex_t>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw ContractViolation("ComplexMatrix: ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  complex_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const complex_t& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const complex_t> entries() const { return data_; }

  complex_t trace() const {
    complex_t t{};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw ContractViolation(detail::concat("matrix product: shape mismatch ", a.rows_, "x", a.cols_, " * ", b.rows_,
                                             "x", b.cols_));
    }
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const complex_t aik = a(i, k);
        if (aik == complex_t{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ContractViolation("matrix sum: shape mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }

  friend ComplexMatrix operator*(complex_t s, ComplexMatrix a) {
    for (auto& z : a.data_) z *= s;
    return a;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex_t> data_;
};

// ---------------------------------------------------------------------------
// StateVector

/// Normalized vector of complex amplitudes over a computational basis.
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-12;

  StateVector() = default;

  explicit StateVector(std::vector<complex_t> amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.empty()) throw ContractViolation("StateVector: empty amplitude list");
    double norm = 0.0;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
      if (!detail::is_finite(amps_[k])) throw ContractViolation(detail::concat("StateVector: non-finite amplitude ", k));
      norm += std::norm(amps_[k]);
    }
    if (std::abs(norm - 1.0) > kNormTolerance) {
      throw ContractViolation(detail::concat("StateVector: squared norm ", norm, " differs from 1"));
    }
  }

  StateVector(std::initializer_list<complex_t> amplitudes) : StateVector(std::vector<complex_t>(amplitudes)) {}

  /// Rescales arbitrary (nonzero) amplitudes to unit norm.
  static StateVector normalized(std::vector<complex_t> amplitudes) {
    double norm = 0.0;
    for (const auto& a : amplitudes) norm += std::norm(a);
    if (!(norm > 0.0) || !std::isfinite(norm)) throw ContractViolation("StateVector: cannot normalize zero vector");
    const double scale = 1.0 / std::sqrt(norm);
    for (auto& a : amplitudes) a *= scale;
    return StateVector(std::move(amplitudes));
  }

  static StateVector basis(std::size_t dimension, std::size_t index) {
    if (index >= dimension) throw ContractViolation(detail::concat("StateVector::basis: index ", index, " >= ", dimension));
    std::vector<complex_t> amps(dimension);
    amps[index] = 1.0;
    return StateVector(std::move(amps));
  }

  std::size_t dimension() const { return amps_.size(); }
  const complex_t& operator[](std::size_t i) const { return amps_[i]; }
  std::span<const complex_t> amplitudes() const { return amps_; }

 private:
  std::vector<complex_t> amps_;
};

/// <a|b>, conjugate-linear in the first argument.
inline complex_t inner_product(std::span<const complex_t> a, std::span<const complex_t> b) {
  if (a.size() != b.size()) throw ContractViolation("inner_product: dimension mismatch");
  complex_t s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline complex_t inner_product(const StateVector& a, const StateVector& b) {
  return inner_product(a.amplitudes(), b.amplitudes());
}

/// Kronecker product; the left factor indexes the most significant digit.
inline std::vector<complex_t> kronecker(std::span<const complex_t> a, std::span<const complex_t> b) {
  std::vector<complex_t> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

inline StateVector tensor_product(const StateVector& a, const StateVector& b) {
  return StateVector::normalized(kronecker(a.amplitudes(), b.amplitudes()));
}

inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// |psi><psi|
inline ComplexMatrix outer_product(const StateVector& psi) {
  const std::size_t n = psi.dimension();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
  return m;
}

/// <psi|op|psi>
inline complex_t expectation(const StateVector& psi, const ComplexMatrix& op) {
  if (!op.is_square() || op.rows() != psi.dimension()) throw ContractViolation("expectation: dimension mismatch");
  complex_t s{};
  for (std::size_t i = 0; i < op.rows(); ++i) {
    complex_t row{};
    for (std::size_t j = 0; j < op.cols(); ++j) row += op(i, j) * psi[j];
    s += std::conj(psi[i]) * row;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Probability vectors and spectra

class ProbabilityVector {
 public:
  ProbabilityVector() = default;

  explicit ProbabilityVector(std::vector<double> weights, const Tolerances& tol = {}) : weights_(std::move(weights)) {
    double sum = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      const double w = weights_[i];
      if (!std::isfinite(w) || w < 0.0 || w > 1.0 + tol.probability_sum) {
        throw ContractViolation(detail::concat("ProbabilityVector: weight ", i, " = ", w, " outside [0,1]"));
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > tol.probability_sum) {
      throw ContractViolation(detail::concat("ProbabilityVector: weights sum to ", sum, ", not 1"));
    }
  }

  ProbabilityVector(std::initializer_list<double> weights) : ProbabilityVector(std::vector<double>(weights)) {}

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

/// Real eigenvalues sorted in descending order.
class DensitySpectrum {
 public:
  DensitySpectrum() = default;
  explicit DensitySpectrum(std::vector<double> eigenvalues) : values_(std::move(eigenvalues)) {
    std::sort(values_.begin(), values_.end(), std::greater<>());
  }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> eigenvalues() const { return values_; }
  double sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

 private:
  std::vector<double> values_;
};

// ---------------------------------------------------------------------------
// Hermitian eigenvalues (cyclic complex Jacobi)

inline void require_hermitian(const ComplexMatrix& m, const Tolerances& tol = {}) {
  if (!m.is_square()) {
    throw ContractViolation(detail::concat("hermitian_eigenvalues: matrix is ", m.rows(), "x", m.cols(),
                                           ", not square"));
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) {
      const double gap = std::abs(m(i, j) - std::conj(m(j, i)));
      if (!(gap <= tol.hermitian)) {
        throw ContractViolation(detail::concat("hermitian_eigenvalues: entry (", i, ",", j,
                                               ") violates Hermiticity by ", gap));
      }
    }
  }
}

inline DensitySpectrum hermitian_eigenvalues(const ComplexMatrix& input, const Tolerances& tol = {}) {
  require_hermitian(input, tol);
  const std::size_t n = input.rows();
  ComplexMatrix a = input;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < tol.jacobi_max_sweeps && off_norm() > tol.jacobi_off_norm; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const complex_t apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Rotation U with U_pp = U_qq = c, U_pq = s e^{i phi}, U_qp = -s e^{-i phi}
        // zeroes the (p,q) entry of U^H A U.
        const complex_t phase = apq / mag;
        const double theta = 0.5 * std::atan2(2.0 * mag, a(q, q).real() - a(p, p).real());
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        for (std::size_t k = 0; k < n; ++k) {
          const complex_t akp = a(k, p);
          const complex_t akq = a(k, q);
          a(k, p) = c * akp - s * std::conj(phase) * akq;
          a(k, q) = s * phase * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const complex_t apk = a(p, k);
          const complex_t aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * std::conj(phase) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
  return DensitySpectrum(std::move(values));
}

/// Checks that `s` is the spectrum of a density operator and clamps roundoff
/// negatives to zero.
inline DensitySpectrum as_density_spectrum(const DensitySpectrum& s, const Tolerances& tol = {}) {
  std::vector<double> values(s.eigenvalues().begin(), s.eigenvalues().end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < -tol.negative_clamp) {
      throw ContractViolation(detail::concat("density spectrum: eigenvalue ", i, " = ", values[i], " is negative"));
    }
    if (values[i] < 0.0) values[i] = 0.0;
  }
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  if (std::abs(sum - 1.0) > tol.spectrum_sum) {
    throw ContractViolation(detail::concat("density spectrum: eigenvalues sum to ", sum, ", not 1"));
  }
  return DensitySpectrum(std::move(values));
}

// ---------------------------------------------------------------------------
// Entropies (bits / qubits)

namespace detail {

inline double entropy_bits(std::span<const double> p) {
  double h = 0.0;
  for (double w : p)
    if (w > 0.0) h -= w * std::log2(w);
  return std::max(0.0, h);
}

}  // namespace detail

inline double shannon_entropy(const ProbabilityVector& p) { return detail::entropy_bits(p.weights()); }

inline double von_neumann_entropy(const DensitySpectrum& s, const Tolerances& tol = {}) {
  const DensitySpectrum clamped = as_density_spectrum(s, tol);
  return detail::entropy_bits(clamped.eigenvalues());
}

}  // namespace qcorr
