/*
   Copyright 2026 The rsf authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rsf/laurent.hpp"

namespace rsf {

/// Dense column-backed complex matrix, sized for Toeplitz sections
/// (dimensions in the tens). Row-major storage.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, Complex(0)) {}

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  Complex& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  Complex operator()(int i, int j) const {
    return a_[std::size_t(i) * cols_ + j];
  }

  double norm1() const {  // max absolute column sum
    double m = 0;
    for (int j = 0; j < cols_; ++j) {
      double s = 0;
      for (int i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
      m = std::max(m, s);
    }
    return m;
  }

  double max_abs() const {
    double m = 0;
    for (const Complex& v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  friend DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matmul: shape");
    DenseMatrix out(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const Complex xv = x(i, k);
        if (xv == Complex(0)) continue;
        for (int j = 0; j < y.cols_; ++j) out(i, j) += xv * y(k, j);
      }
    return out;
  }

  friend DenseMatrix operator-(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw std::invalid_argument("matsub: shape");
    DenseMatrix out(x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) out.a_[i] = x.a_[i] - y.a_[i];
    return out;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Complex> a_;
};

/// LU factorization with partial pivoting. Exposes determinant, solves and
/// an explicit-inverse 1-norm condition estimate (sections are small, so the
/// explicit inverse is cheap and dependable).
class LuDecomposition {
 public:
  explicit LuDecomposition(DenseMatrix m) : lu_(std::move(m)) {
    if (lu_.rows() != lu_.cols())
      throw std::invalid_argument("LuDecomposition: square matrix required");
    n_ = lu_.rows();
    norm1_ = lu_.norm1();
    piv_.resize(std::size_t(n_));
    for (int i = 0; i < n_; ++i) piv_[std::size_t(i)] = i;
    for (int k = 0; k < n_; ++k) {
      int p = k;
      double best = std::abs(lu_(k, k));
      for (int i = k + 1; i < n_; ++i) {
        double v = std::abs(lu_(i, k));
        if (v > best) {
          best = v;
          p = i;
        }
      }
      if (p != k) {
        for (int j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(p, j));
        std::swap(piv_[std::size_t(k)], piv_[std::size_t(p)]);
        sign_ = -sign_;
      }
      const Complex pivot = lu_(k, k);
      if (std::abs(pivot) == 0.0) {
        exactly_singular_ = true;
        continue;
      }
      for (int i = k + 1; i < n_; ++i) {
        const Complex f = lu_(i, k) / pivot;
        lu_(i, k) = f;
        if (f == Complex(0)) continue;
        for (int j = k + 1; j < n_; ++j) lu_(i, j) -= f * lu_(k, j);
      }
    }
  }

  bool exactly_singular() const noexcept { return exactly_singular_; }

  Complex det() const {
    if (exactly_singular_) return 0;
    Complex d = sign_;
    for (int k = 0; k < n_; ++k) d *= lu_(k, k);
    return d;
  }

  std::vector<Complex> solve(const std::vector<Complex>& rhs) const {
    if (int(rhs.size()) != n_) throw std::invalid_argument("solve: size");
    if (exactly_singular_)
      throw SectionSingular("solve: exactly singular matrix");
    std::vector<Complex> x(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) x[std::size_t(i)] = rhs[std::size_t(piv_[std::size_t(i)])];
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < i; ++j) x[std::size_t(i)] -= lu_(i, j) * x[std::size_t(j)];
    for (int i = n_ - 1; i >= 0; --i) {
      for (int j = i + 1; j < n_; ++j) x[std::size_t(i)] -= lu_(i, j) * x[std::size_t(j)];
      x[std::size_t(i)] /= lu_(i, i);
    }
    return x;
  }

  DenseMatrix inverse() const {
    DenseMatrix inv(n_, n_);
    std::vector<Complex> e(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) {
      std::fill(e.begin(), e.end(), Complex(0));
      e[std::size_t(j)] = 1;
      auto col = solve(e);
      for (int i = 0; i < n_; ++i) inv(i, j) = col[std::size_t(i)];
    }
    return inv;
  }

  /// 1-norm condition number; infinity when exactly singular.
  double cond1() const {
    if (exactly_singular_) return std::numeric_limits<double>::infinity();
    return norm1_ * inverse().norm1();
  }

 private:
  DenseMatrix lu_;
  std::vector<int> piv_;
  int n_ = 0;
  int sign_ = 1;
  double norm1_ = 0;
  bool exactly_singular_ = false;
};

inline Complex det(const DenseMatrix& m) { return LuDecomposition(m).det(); }

}  // namespace rsf
