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

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "rsf/errors.hpp"

namespace rsf {

using Complex = std::complex<double>;

/// Global numeric policy. All values are plain constants; operations that
/// depend on a tolerance take it as a defaulted parameter so callers can
/// override without touching shared state.
namespace tol {
inline constexpr double zero = 1e-10;         // zero / unimodularity tests
inline constexpr double prune = 1e-14;        // coefficients below are dropped
inline constexpr double exceptional = 1e-8;   // |1 - z^- z^+| guard
inline constexpr double cond_bound = 1e12;    // section condition limit
inline constexpr double exp_norm_bound = 32;  // ||f||_1 limit for exp series
inline constexpr double circle = 1e-8;        // | |z| - 1 | evaluation guard
}  // namespace tol

/// Scalar Laurent polynomial: a finitely supported map n -> f_n over powers
/// of z. The zero polynomial is the empty map; coefficients with magnitude
/// at or below tol::prune are dropped on write, so supports stay exact.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  explicit LaurentPoly(Complex constant) { set(0, constant); }
  explicit LaurentPoly(double constant) : LaurentPoly(Complex(constant, 0.0)) {}
  explicit LaurentPoly(int constant) : LaurentPoly(Complex(constant, 0.0)) {}

  static LaurentPoly monomial(int n, Complex c) {
    LaurentPoly f;
    f.set(n, c);
    return f;
  }

  /// Power-series constructor: coefficients for z^lo, z^{lo+1}, ...
  static LaurentPoly from_coeffs(int lo, const std::vector<Complex>& c) {
    LaurentPoly f;
    for (std::size_t i = 0; i < c.size(); ++i) f.set(lo + int(i), c[i]);
    return f;
  }

  const std::map<int, Complex>& terms() const noexcept { return terms_; }

  Complex coeff(int n) const {
    auto it = terms_.find(n);
    return it == terms_.end() ? Complex(0) : it->second;
  }

  void set(int n, Complex v) {
    if (std::abs(v) <= tol::prune) {
      terms_.erase(n);
    } else {
      terms_[n] = v;
    }
  }

  void add(int n, Complex v) { set(n, coeff(n) + v); }

  bool is_zero() const noexcept { return terms_.empty(); }

  /// Support bounds; only meaningful for nonzero polynomials.
  int min_exp() const { return is_zero() ? 0 : terms_.begin()->first; }
  int max_exp() const { return is_zero() ? 0 : terms_.rbegin()->first; }

  double norm1() const {
    double s = 0;
    for (const auto& [n, c] : terms_) s += std::abs(c);
    return s;
  }

  double norm_inf() const {
    double m = 0;
    for (const auto& [n, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  Complex operator()(Complex z) const {
    Complex s = 0;
    for (const auto& [n, c] : terms_) s += c * pow_int(z, n);
    return s;
  }

  LaurentPoly& operator+=(const LaurentPoly& g) {
    for (const auto& [n, c] : g.terms_) add(n, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& g) {
    for (const auto& [n, c] : g.terms_) add(n, -c);
    return *this;
  }

  LaurentPoly& operator*=(Complex s) {
    if (std::abs(s) == 0.0) {
      terms_.clear();
      return *this;
    }
    std::map<int, Complex> out;
    for (const auto& [n, c] : terms_) {
      Complex v = c * s;
      if (std::abs(v) > tol::prune) out[n] = v;
    }
    terms_ = std::move(out);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly f, const LaurentPoly& g) {
    f += g;
    return f;
  }
  friend LaurentPoly operator-(LaurentPoly f, const LaurentPoly& g) {
    f -= g;
    return f;
  }
  friend LaurentPoly operator-(const LaurentPoly& f) {
    LaurentPoly out;
    for (const auto& [n, c] : f.terms_) out.set(n, -c);
    return out;
  }

  /// Convolution of coefficient sequences, exact over the finite supports.
  friend LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g) {
    LaurentPoly out;
    if (f.is_zero() || g.is_zero()) return out;
    std::map<int, Complex> acc;
    for (const auto& [n, a] : f.terms_)
      for (const auto& [m, b] : g.terms_) acc[n + m] += a * b;
    for (const auto& [n, c] : acc) out.set(n, c);
    return out;
  }

  friend LaurentPoly operator*(Complex s, LaurentPoly f) {
    f *= s;
    return f;
  }
  friend LaurentPoly operator*(LaurentPoly f, Complex s) {
    f *= s;
    return f;
  }

  static Complex pow_int(Complex z, int n) {
    if (n == 0) return Complex(1);
    Complex base = n > 0 ? z : Complex(1) / z;
    int e = n > 0 ? n : -n;
    Complex r = 1;
    while (e > 0) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

 private:
  std::map<int, Complex> terms_;
};

/// f*(z) = sum conj(f_n) z^{-n}; on |z|=1 this is pointwise conjugation.
inline LaurentPoly star(const LaurentPoly& f) {
  LaurentPoly out;
  for (const auto& [n, c] : f.terms()) out.set(-n, std::conj(c));
  return out;
}

/// Multiply by z^k.
inline LaurentPoly shift(const LaurentPoly& f, int k) {
  LaurentPoly out;
  for (const auto& [n, c] : f.terms()) out.set(n + k, c);
  return out;
}

/// Keep coefficients with lo <= n <= hi.
inline LaurentPoly truncate(const LaurentPoly& f, int lo, int hi) {
  LaurentPoly out;
  for (const auto& [n, c] : f.terms())
    if (n >= lo && n <= hi) out.set(n, c);
  return out;
}

struct LaurentSplit {
  LaurentPoly minus;  // support n <= -1
  Complex zero{0};
  LaurentPoly plus;  // support n >= 1
};

/// f = f_- + f_0 + f_+, exactly.
inline LaurentSplit split(const LaurentPoly& f) {
  LaurentSplit s;
  for (const auto& [n, c] : f.terms()) {
    if (n < 0)
      s.minus.set(n, c);
    else if (n > 0)
      s.plus.set(n, c);
    else
      s.zero = c;
  }
  return s;
}

inline LaurentPoly minus_part(const LaurentPoly& f) { return split(f).minus; }
inline LaurentPoly plus_part(const LaurentPoly& f) { return split(f).plus; }

/// Projection onto n >= 0 (Hardy space of the disk, constants included).
inline LaurentPoly nonneg_part(const LaurentPoly& f) {
  LaurentPoly out;
  for (const auto& [n, c] : f.terms())
    if (n >= 0) out.set(n, c);
  return out;
}

inline LaurentPoly nonpos_part(const LaurentPoly& f) {
  LaurentPoly out;
  for (const auto& [n, c] : f.terms())
    if (n <= 0) out.set(n, c);
  return out;
}

inline bool approx_equal(const LaurentPoly& f, const LaurentPoly& g,
                         double eps = tol::zero) {
  return (f - g).norm_inf() <= eps;
}

/// Truncated inverse of a unit power series: g with f*g = 1 + O(z^{N+1}),
/// support of g in [0, N]. Requires support of f in n >= 0 and f_0 != 0.
inline LaurentPoly reciprocal_series(const LaurentPoly& f, int N) {
  if (f.is_zero() || std::abs(f.coeff(0)) <= tol::zero)
    throw ZeroConstantTerm("reciprocal_series: constant term vanishes");
  if (f.min_exp() < 0)
    throw ZeroConstantTerm(
        "reciprocal_series: input has negative-power support");
  const Complex f0 = f.coeff(0);
  std::vector<Complex> g(std::size_t(N) + 1);
  g[0] = Complex(1) / f0;
  for (int n = 1; n <= N; ++n) {
    Complex acc = 0;
    for (int k = 1; k <= std::min(n, f.max_exp()); ++k)
      acc += f.coeff(k) * g[std::size_t(n - k)];
    g[std::size_t(n)] = -acc / f0;
  }
  return LaurentPoly::from_coeffs(0, g);
}

/// Truncated exponential sum_{k<=K} f^k / k!, K chosen so the l1 tail bound
/// falls below working precision, then clipped to support [-N, N].
/// Intermediate powers are kept at full support; only the result is clipped.
inline LaurentPoly exp_series(const LaurentPoly& f, int N) {
  if (!f.is_zero() && (f.min_exp() < -N || f.max_exp() > N))
    throw std::invalid_argument("exp_series: support exceeds [-N, N]");
  const double a = f.norm1();
  if (a > tol::exp_norm_bound)
    throw DivergentNorm("exp_series: l1 norm " + std::to_string(a) +
                        " exceeds bound");
  LaurentPoly acc(1.0);
  LaurentPoly term(1.0);
  double bound = 1.0;
  for (int k = 1; k <= 512; ++k) {
    term = term * f;
    term *= Complex(1.0 / k);
    acc += term;
    bound *= a / k;
    if (bound * std::exp(a) < 1e-18) break;
  }
  return truncate(acc, -N, N);
}

}  // namespace rsf
