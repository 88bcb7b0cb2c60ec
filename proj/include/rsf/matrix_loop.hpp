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

#include <array>
#include <cmath>

#include "rsf/laurent.hpp"

namespace rsf {

/// Constant 2x2 complex matrix.
struct Mat2 {
  Complex a{0}, b{0}, c{0}, d{0};  // row-major [[a, b], [c, d]]

  static Mat2 identity() { return {1, 0, 0, 1}; }
  Complex det() const { return a * d - b * c; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
};

/// 2x2 matrix of Laurent polynomials; the basic loop S^1 -> SL(2,C) with a
/// finite Fourier series. Entries are row-major [[a, b], [c, d]].
struct MatrixLoop {
  LaurentPoly a, b, c, d;

  static MatrixLoop identity() {
    return {LaurentPoly(1.0), {}, {}, LaurentPoly(1.0)};
  }

  /// Fourier coefficient g_n as a constant matrix.
  Mat2 fourier(int n) const {
    return {a.coeff(n), b.coeff(n), c.coeff(n), d.coeff(n)};
  }

  int min_exp() const {
    int m = 0;
    for (const LaurentPoly* f : {&a, &b, &c, &d})
      if (!f->is_zero()) m = std::min(m, f->min_exp());
    return m;
  }

  int max_exp() const {
    int m = 0;
    for (const LaurentPoly* f : {&a, &b, &c, &d})
      if (!f->is_zero()) m = std::max(m, f->max_exp());
    return m;
  }

  double norm_inf() const {
    return std::max(std::max(a.norm_inf(), b.norm_inf()),
                    std::max(c.norm_inf(), d.norm_inf()));
  }
};

inline MatrixLoop operator*(const MatrixLoop& g, const MatrixLoop& h) {
  return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
          g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
}

inline MatrixLoop operator*(Complex s, const MatrixLoop& g) {
  return {s * g.a, s * g.b, s * g.c, s * g.d};
}

inline MatrixLoop operator+(const MatrixLoop& g, const MatrixLoop& h) {
  return {g.a + h.a, g.b + h.b, g.c + h.c, g.d + h.d};
}

inline MatrixLoop operator-(const MatrixLoop& g, const MatrixLoop& h) {
  return {g.a - h.a, g.b - h.b, g.c - h.c, g.d - h.d};
}

inline LaurentPoly det(const MatrixLoop& g) { return g.a * g.d - g.b * g.c; }

/// Max coefficient magnitude of (ad - bc) - 1. Below tol::zero for anything
/// claiming SL(2,C) values.
inline double det_defect(const MatrixLoop& g) {
  return (det(g) - LaurentPoly(1.0)).norm_inf();
}

/// Entrywise star composed with transpose; on |z|=1 this is the pointwise
/// Hermitian adjoint.
inline MatrixLoop star(const MatrixLoop& g) {
  return {star(g.a), star(g.c), star(g.b), star(g.d)};
}

/// [[d, -b], [-c, a]]; equals g^{-1} exactly when det g = 1.
inline MatrixLoop adjugate(const MatrixLoop& g) {
  return {g.d, -g.b, -g.c, g.a};
}

/// g^{-*} = (g^{-1})*, computed as star of the adjugate. Requires det g = 1.
inline MatrixLoop inverse_star(const MatrixLoop& g, double eps = tol::zero) {
  const double defect = det_defect(g);
  if (defect > eps)
    throw NotUnimodular("inverse_star: det defect " + std::to_string(defect));
  return star(adjugate(g));
}

/// Pointwise evaluation on the unit circle.
inline Mat2 eval(const MatrixLoop& g, Complex z) {
  if (std::abs(std::abs(z) - 1.0) > tol::circle)
    throw OffCircle("eval: |z| deviates from 1");
  return {g.a(z), g.b(z), g.c(z), g.d(z)};
}

inline bool approx_equal(const MatrixLoop& g, const MatrixLoop& h,
                         double eps = tol::zero) {
  return approx_equal(g.a, h.a, eps) && approx_equal(g.b, h.b, eps) &&
         approx_equal(g.c, h.c, eps) && approx_equal(g.d, h.d, eps);
}

/// Max entrywise coefficient deviation between two loops.
inline double max_coeff_dist(const MatrixLoop& g, const MatrixLoop& h) {
  return (g - h).norm_inf();
}

}  // namespace rsf
