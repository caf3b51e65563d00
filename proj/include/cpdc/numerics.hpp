// Copyright 2026 The cpdc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Small dense complex matrices: products, adjoints, LU-based inverse and a
// Padé scaling-and-squaring matrix exponential. Sized for the 4x4 transfer
// matrices and the few-hundred-dimensional truncated Fock generators.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "cpdc/config.hpp"
#include "cpdc/error.hpp"

namespace cpdc {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  /// Row-major initialisation; the list must hold exactly rows*cols entries.
  ComplexMatrix(std::size_t rows, std::size_t cols,
                std::initializer_list<Complex> entries)
      : rows_(rows), cols_(cols), data_(entries) {
    if (data_.size() != rows * cols) {
      throw Error(ErrorKind::DimensionMismatch,
                  "initializer holds " + std::to_string(data_.size()) +
                      " entries, expected " + std::to_string(rows * cols));
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<Complex> entries() noexcept { return data_; }
  std::span<const Complex> entries() const noexcept { return data_; }

  bool all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw Error(ErrorKind::DimensionMismatch,
                  "product of " + a.shape() + " and " + b.shape());
    }
    ComplexMatrix c(a.rows_, b.cols_);
    // i-k-j order keeps the inner loop contiguous in both b and c.
    for (std::size_t i = 0; i < a.rows_; ++i) {
      Complex* crow = &c.data_[i * c.cols_];
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a.data_[i * a.cols_ + k];
        if (aik == Complex{}) continue;
        const Complex* brow = &b.data_[k * b.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) crow[j] += aik * brow[j];
      }
    }
    return c;
  }

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  void require_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw Error(ErrorKind::DimensionMismatch, shape() + " vs " + o.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

inline ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b; }

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

inline std::vector<Complex> mat_vec(const ComplexMatrix& a, std::span<const Complex> x) {
  if (a.cols() != x.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                a.shape() + " times vector of length " + std::to_string(x.size()));
  }
  std::vector<Complex> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

/// Maximum absolute column sum.
inline double norm1(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

inline double max_abs(const ComplexMatrix& a) {
  double best = 0.0;
  for (const auto& z : a.entries()) best = std::max(best, std::abs(z));
  return best;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, a.shape() + " vs " + b.shape());
  }
  double best = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) best = std::max(best, std::abs(ea[k] - eb[k]));
  return best;
}

namespace detail {

struct LuFactors {
  ComplexMatrix lu;
  std::vector<std::size_t> perm;
};

// Doolittle LU with partial pivoting. Throws Singular on an exactly zero pivot.
inline LuFactors lu_factor(ComplexMatrix a) {
  if (!a.is_square()) throw Error(ErrorKind::NonSquare, "LU of " + a.shape());
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        piv = i;
      }
    }
    if (best == 0.0) throw Error(ErrorKind::Singular, "zero pivot in column " + std::to_string(k));
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(perm[k], perm[piv]);
    }
    const Complex inv_pivot = 1.0 / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = a(i, k) * inv_pivot;
      a(i, k) = f;
      if (f == Complex{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return {std::move(a), std::move(perm)};
}

// Solves A X = B given the factors of A.
inline ComplexMatrix lu_solve(const LuFactors& f, const ComplexMatrix& b) {
  const std::size_t n = f.lu.rows();
  if (b.rows() != n) throw Error(ErrorKind::DimensionMismatch, "rhs " + b.shape());
  ComplexMatrix x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = b(f.perm[i], j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) {
      const Complex l = f.lu(i, k);
      if (l == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) -= l * x(k, j);
    }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) {
      const Complex u = f.lu(ii, k);
      if (u == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) x(ii, j) -= u * x(k, j);
    }
    const Complex inv = 1.0 / f.lu(ii, ii);
    for (std::size_t j = 0; j < b.cols(); ++j) x(ii, j) *= inv;
  }
  return x;
}

}  // namespace detail

/// Inverse via LU with partial pivoting. Rejects matrices whose 1-norm
/// condition number exceeds tol.inverse_max_condition.
inline ComplexMatrix inverse(const ComplexMatrix& a,
                             const Tolerances& tol = default_tolerances()) {
  if (!a.is_square()) throw Error(ErrorKind::NonSquare, "inverse of " + a.shape());
  if (!a.all_finite()) throw Error(ErrorKind::NonFinite, "inverse input");
  auto inv = detail::lu_solve(detail::lu_factor(a), ComplexMatrix::identity(a.rows()));
  const double cond = norm1(a) * norm1(inv);
  if (!std::isfinite(cond) || cond > tol.inverse_max_condition) {
    throw Error(ErrorKind::Singular, "condition estimate " + std::to_string(cond));
  }
  return inv;
}

namespace detail {

// Padé numerator coefficients b_0..b_m (Higham 2005, Table 10.4 family).
inline constexpr std::array<double, 4> kPade3{120.0, 60.0, 12.0, 1.0};
inline constexpr std::array<double, 6> kPade5{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
inline constexpr std::array<double, 8> kPade7{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                              25200.0,    1512.0,    56.0,      1.0};
inline constexpr std::array<double, 10> kPade9{17643225600.0, 8821612800.0, 2075673600.0,
                                               302702400.0,   30270240.0,   2162160.0,
                                               110880.0,      3960.0,       90.0,
                                               1.0};
inline constexpr std::array<double, 14> kPade13{
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

// 1-norm bounds below which degree m needs no scaling for double precision.
inline constexpr std::array<double, 5> kTheta{1.495585217958292e-2, 2.539398330063230e-1,
                                              9.504178996162932e-1, 2.097847961257068e0,
                                              5.371920351148152e0};

inline ComplexMatrix axpy_identity(ComplexMatrix m, double diag) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += diag;
  return m;
}

// Low-degree approximant: U holds the odd part, V the even part.
template <std::size_t N>
void pade_low(const ComplexMatrix& a, const std::array<double, N>& b, ComplexMatrix& u,
              ComplexMatrix& v) {
  const std::size_t n = a.rows();
  const ComplexMatrix a2 = a * a;
  ComplexMatrix power = ComplexMatrix::identity(n);
  ComplexMatrix odd(n, n);
  ComplexMatrix even(n, n);
  for (std::size_t k = 0; 2 * k + 1 < N; ++k) {
    odd += power * Complex(b[2 * k + 1]);
    even += power * Complex(b[2 * k]);
    if (2 * k + 3 < N) power = power * a2;
  }
  u = a * odd;
  v = std::move(even);
}

inline void pade13(const ComplexMatrix& a, ComplexMatrix& u, ComplexMatrix& v) {
  const auto& b = kPade13;
  const std::size_t n = a.rows();
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;
  const ComplexMatrix id = ComplexMatrix::identity(n);
  ComplexMatrix inner_u = a6 * Complex(b[13]) + a4 * Complex(b[11]) + a2 * Complex(b[9]);
  ComplexMatrix outer_u =
      a6 * Complex(b[7]) + a4 * Complex(b[5]) + a2 * Complex(b[3]) + id * Complex(b[1]);
  u = a * (a6 * inner_u + outer_u);
  ComplexMatrix inner_v = a6 * Complex(b[12]) + a4 * Complex(b[10]) + a2 * Complex(b[8]);
  v = a6 * inner_v + a6 * Complex(b[6]) + a4 * Complex(b[4]) + a2 * Complex(b[2]) +
      id * Complex(b[0]);
}

}  // namespace detail

/// Matrix exponential by scaling and squaring with a diagonal Padé
/// approximant of degree 3, 5, 7, 9 or 13 chosen from the 1-norm.
inline ComplexMatrix expm(const ComplexMatrix& a, const Tolerances& tol = default_tolerances()) {
  if (!a.is_square()) throw Error(ErrorKind::NonSquare, "expm of " + a.shape());
  if (a.rows() > tol.expm_max_dim) {
    throw Error(ErrorKind::DimensionCap, "expm of " + a.shape() + " exceeds cap " +
                                             std::to_string(tol.expm_max_dim));
  }
  if (!a.all_finite()) throw Error(ErrorKind::NonFinite, "expm input");
  const std::size_t n = a.rows();
  if (n == 0) return a;

  const double norm = norm1(a);
  ComplexMatrix u;
  ComplexMatrix v;
  int squarings = 0;
  if (norm <= detail::kTheta[0]) {
    detail::pade_low(a, detail::kPade3, u, v);
  } else if (norm <= detail::kTheta[1]) {
    detail::pade_low(a, detail::kPade5, u, v);
  } else if (norm <= detail::kTheta[2]) {
    detail::pade_low(a, detail::kPade7, u, v);
  } else if (norm <= detail::kTheta[3]) {
    detail::pade_low(a, detail::kPade9, u, v);
  } else {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / detail::kTheta[4]))));
    detail::pade13(a * Complex(std::ldexp(1.0, -squarings)), u, v);
  }
  // r = (V - U)^{-1} (V + U)
  ComplexMatrix result = detail::lu_solve(detail::lu_factor(v - u), v + u);
  for (int k = 0; k < squarings; ++k) result = result * result;
  if (!result.all_finite()) throw Error(ErrorKind::NonFinite, "expm overflow");
  return result;
}

}  // namespace cpdc
