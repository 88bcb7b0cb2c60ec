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
#include <string>
#include <utility>

#include "rsf/linalg.hpp"
#include "rsf/matrix_loop.hpp"

namespace rsf {

/// The outer involution [[a,b],[c,d]] -> [[d, c z^-1],[b z, a]]. Conjugation
/// by [[0,1],[z,0]], so multiplicative, and an involution since that matrix
/// squares to z * id.
inline MatrixLoop sigma(const MatrixLoop& g) {
  return {g.d, shift(g.c, -1), shift(g.b, 1), g.a};
}

/// Finite section of the block Toeplitz operator of g: basis (e1 z^k, e2 z^k)
/// interleaved, k ascending 0..N; 2x2 block (j,k) is the Fourier coefficient
/// g_{j-k}.
struct ToeplitzSection {
  int N = 0;
  DenseMatrix data;
};

inline ToeplitzSection assemble_toeplitz(const MatrixLoop& g, int N) {
  ToeplitzSection s{N, DenseMatrix(2 * (N + 1), 2 * (N + 1))};
  for (int j = 0; j <= N; ++j)
    for (int k = 0; k <= N; ++k) {
      const Mat2 block = g.fourier(j - k);
      s.data(2 * j, 2 * k) = block.a;
      s.data(2 * j, 2 * k + 1) = block.b;
      s.data(2 * j + 1, 2 * k) = block.c;
      s.data(2 * j + 1, 2 * k + 1) = block.d;
    }
  return s;
}

/// Finite section of the shifted Toeplitz operator: compression to
/// {e1} u {e1 z^j, e2 z^j : 1 <= j <= N}, dimension 2N+1. Equivalent to a
/// section of the Toeplitz operator of sigma(g); see the unit tests for the
/// exact finite-dimensional correspondence.
struct ShiftedSection {
  int N = 0;
  DenseMatrix data;
};

inline ShiftedSection assemble_shifted(const MatrixLoop& g, int N) {
  // basis index: 0 -> (j=0, comp=0); 2j-1+comp -> (j, comp) for j >= 1.
  const int dim = 2 * N + 1;
  auto power_of = [](int u) { return u == 0 ? 0 : (u + 1) / 2; };
  auto comp_of = [](int u) { return u == 0 ? 0 : (u + 1) % 2; };
  ShiftedSection s{N, DenseMatrix(dim, dim)};
  for (int u = 0; u < dim; ++u)
    for (int v = 0; v < dim; ++v) {
      const Mat2 block = g.fourier(power_of(u) - power_of(v));
      const Complex* rows[2][2] = {{&block.a, &block.b}, {&block.c, &block.d}};
      s.data(u, v) = *rows[comp_of(u)][comp_of(v)];
    }
  return s;
}

/// det of the order-N Toeplitz section.
inline Complex toeplitz_det(const MatrixLoop& g, int N) {
  return LuDecomposition(assemble_toeplitz(g, N).data).det();
}

/// det(A_N(g)) * det(A_N(g^{-1})); the inverse symbol is the adjugate, which
/// is exact for det = 1.
inline Complex toeplitz_det_pair(const MatrixLoop& g, int N) {
  return toeplitz_det(g, N) * toeplitz_det(adjugate(g), N);
}

/// Determinant realization of the shifted Toeplitz limit: the shifted
/// operator is equivalent to the Toeplitz operator of sigma(g), so its
/// section determinant converges to the shifted closed forms. The literal
/// odd-dimension section of assemble_shifted converges instead to the
/// geometric mean of the shifted and unshifted limits (an odd-cut boundary
/// effect, pinned in the unit tests), so it is not used for determinants.
inline Complex shifted_det(const MatrixLoop& g, int N) {
  return toeplitz_det(sigma(g), N);
}

inline Complex shifted_det_pair(const MatrixLoop& g, int N) {
  return shifted_det(g, N) * shifted_det(adjugate(g), N);
}

/// det of the literal order-N shifted section (dimension 2N+1).
inline Complex shifted_section_det(const MatrixLoop& g, int N) {
  return LuDecomposition(assemble_shifted(g, N).data).det();
}

/// det(1 - B_N(g) C_N(g^{-1})) over the order-N Hardy section. B carries the
/// Hankel blocks g_{j+k+1}, C(g^{-1}) the blocks (g^{-1})_{-(j+k+1)}; for a
/// polynomial symbol of width w only the first w block-antidiagonals are
/// nonzero, so the value stabilizes exactly once N reaches the width.
inline Complex hankel_det(const MatrixLoop& g, int N) {
  const MatrixLoop ginv = adjugate(g);
  const int dim = 2 * (N + 1);
  DenseMatrix B(dim, dim), C(dim, dim);
  for (int j = 0; j <= N; ++j)
    for (int k = 0; k <= N; ++k) {
      const Mat2 bb = g.fourier(j + k + 1);
      B(2 * j, 2 * k) = bb.a;
      B(2 * j, 2 * k + 1) = bb.b;
      B(2 * j + 1, 2 * k) = bb.c;
      B(2 * j + 1, 2 * k + 1) = bb.d;
      const Mat2 cc = ginv.fourier(-(j + k + 1));
      C(2 * j, 2 * k) = cc.a;
      C(2 * j, 2 * k + 1) = cc.b;
      C(2 * j + 1, 2 * k) = cc.c;
      C(2 * j + 1, 2 * k + 1) = cc.d;
    }
  return LuDecomposition(DenseMatrix::identity(dim) - B * C).det();
}

// ---------------------------------------------------------------------------
// Factorization via section inversion.
// ---------------------------------------------------------------------------

struct BirkhoffFactors {
  MatrixLoop g_minus;  // support <= 0, value id at infinity
  Mat2 g0;
  MatrixLoop g_plus;  // support >= 0, value id at 0
};

/// g = l * diag(m0 a0, (m0 a0)^{-1}) * u with l lower-unipotent at infinity,
/// u upper-unipotent at 0, |m0| = 1 and a0 > 0.
struct TriangularFactors {
  MatrixLoop l;
  Complex m0{1};
  double a0 = 1;
  MatrixLoop u;

  MatrixLoop reassemble() const {
    const Complex k = m0 * a0;
    MatrixLoop mid = {LaurentPoly(k), {}, {}, LaurentPoly(Complex(1) / k)};
    return l * mid * u;
  }
};

/// Birkhoff factorization g = g_- g_0 g_+ through inversion of the order-N
/// Toeplitz section: the two solves A_N(g) x = e1, e2 give the columns of
/// (g_0 g_+)^{-1} as power series up to order N.
inline BirkhoffFactors birkhoff_factor(const MatrixLoop& g, int N,
                                       double cond_bound = tol::cond_bound) {
  ToeplitzSection sec = assemble_toeplitz(g, N);
  LuDecomposition lu(std::move(sec.data));
  if (lu.exactly_singular() || lu.cond1() > cond_bound)
    throw SectionSingular("birkhoff_factor: section condition exceeds bound");

  const int dim = 2 * (N + 1);
  std::vector<Complex> e1(std::size_t(dim), Complex(0));
  std::vector<Complex> e2(std::size_t(dim), Complex(0));
  e1[0] = 1;
  e2[1] = 1;
  const auto col1 = lu.solve(e1);
  const auto col2 = lu.solve(e2);

  MatrixLoop H;  // (g_0 g_+)^{-1} as a truncated power series
  for (int k = 0; k <= N; ++k) {
    H.a.set(k, col1[std::size_t(2 * k)]);
    H.c.set(k, col1[std::size_t(2 * k + 1)]);
    H.b.set(k, col2[std::size_t(2 * k)]);
    H.d.set(k, col2[std::size_t(2 * k + 1)]);
  }

  LaurentPoly detH = truncate(det(H), 0, N);
  LaurentPoly detH_inv;
  try {
    detH_inv = reciprocal_series(detH, N);
  } catch (const ZeroConstantTerm&) {
    throw NotConverged(
        "birkhoff_factor: plus-factor inversion failed; section order " +
        std::to_string(N) + " is below the symbol width");
  }
  MatrixLoop W = adjugate(H);  // W / det(H) = g_0 g_+
  W = {truncate(W.a * detH_inv, 0, N), truncate(W.b * detH_inv, 0, N),
       truncate(W.c * detH_inv, 0, N), truncate(W.d * detH_inv, 0, N)};

  BirkhoffFactors out;
  out.g0 = W.fourier(0);
  const Complex det0 = out.g0.det();
  if (std::abs(det0) <= tol::zero)
    throw SectionSingular("birkhoff_factor: constant term is singular");
  const Mat2 g0inv{out.g0.d / det0, -out.g0.b / det0, -out.g0.c / det0,
                   out.g0.a / det0};
  out.g_plus = MatrixLoop{g0inv.a * W.a + g0inv.b * W.c,
                          g0inv.a * W.b + g0inv.b * W.d,
                          g0inv.c * W.a + g0inv.d * W.c,
                          g0inv.c * W.b + g0inv.d * W.d};

  MatrixLoop gm = g * H;  // should be supported in n <= 0
  double resid = 0;
  for (const LaurentPoly* f : {&gm.a, &gm.b, &gm.c, &gm.d})
    resid = std::max(resid, plus_part(*f).norm_inf());
  const Mat2 at_inf = gm.fourier(0);
  resid = std::max({resid, std::abs(at_inf.a - Complex(1)),
                    std::abs(at_inf.b), std::abs(at_inf.c),
                    std::abs(at_inf.d - Complex(1))});
  if (resid > 1e-8 * (1.0 + g.norm_inf()))
    throw NotConverged("birkhoff_factor: residual " + std::to_string(resid) +
                       " at order " + std::to_string(N));
  out.g_minus = {nonpos_part(gm.a), nonpos_part(gm.b), nonpos_part(gm.c),
                 nonpos_part(gm.d)};
  return out;
}

/// Triangular factorization: Birkhoff factor, then the 2x2 LDU split of the
/// constant, folding its unipotent parts into the outer factors.
inline TriangularFactors triangular_factor(const MatrixLoop& g, int N,
                                           double cond_bound =
                                               tol::cond_bound) {
  BirkhoffFactors bf = birkhoff_factor(g, N, cond_bound);
  const Complex p = bf.g0.a;
  if (std::abs(p) <= tol::zero)
    throw ConstantNotLDU("triangular_factor: (g_0)_11 = 0");
  const Complex q = bf.g0.b, r = bf.g0.c;

  MatrixLoop L = MatrixLoop::identity();
  L.c = LaurentPoly(r / p);
  MatrixLoop U = MatrixLoop::identity();
  U.b = LaurentPoly(q / p);

  TriangularFactors tf;
  tf.l = bf.g_minus * L;
  tf.u = U * bf.g_plus;
  tf.a0 = std::abs(p);
  tf.m0 = p / tf.a0;
  return tf;
}

// ---------------------------------------------------------------------------
// Disk multiplicativity.
// ---------------------------------------------------------------------------

/// Max coefficient deviation between P_+(g1* P_+(g2 f)) and P_+(g1* g2 f)
/// for f = (f1, f2). Exact Laurent arithmetic throughout.
inline double multiplicativity_residual(const MatrixLoop& g1,
                                        const MatrixLoop& g2,
                                        const LaurentPoly& f1,
                                        const LaurentPoly& f2) {
  auto holomorphic = [](const LaurentPoly& f) {
    return f.is_zero() || f.min_exp() >= 0;
  };
  if (!holomorphic(g1.a) || !holomorphic(g1.b))
    throw ShapeViolation("multiplicativity: top row of g1 must be in n >= 0");
  if (!holomorphic(g2.c) || !holomorphic(g2.d))
    throw ShapeViolation(
        "multiplicativity: bottom row of g2 must be in n >= 0");
  if (!holomorphic(f1) || !holomorphic(f2))
    throw ShapeViolation("multiplicativity: f must be in n >= 0");

  const MatrixLoop g1s = star(g1);
  const LaurentPoly h1 = g2.a * f1 + g2.b * f2;
  const LaurentPoly h2 = g2.c * f1 + g2.d * f2;

  // A(g1*)A(g2) f
  const LaurentPoly p1 = nonneg_part(h1), p2 = nonneg_part(h2);
  const LaurentPoly lhs1 = nonneg_part(g1s.a * p1 + g1s.b * p2);
  const LaurentPoly lhs2 = nonneg_part(g1s.c * p1 + g1s.d * p2);

  // A(g1* g2) f
  const LaurentPoly rhs1 = nonneg_part(g1s.a * h1 + g1s.b * h2);
  const LaurentPoly rhs2 = nonneg_part(g1s.c * h1 + g1s.d * h2);

  return std::max((lhs1 - rhs1).norm_inf(), (lhs2 - rhs2).norm_inf());
}

inline bool multiplicativity_check(const MatrixLoop& g1, const MatrixLoop& g2,
                                   const LaurentPoly& f1,
                                   const LaurentPoly& f2,
                                   double eps = 1e-12) {
  return multiplicativity_residual(g1, g2, f1, f2) <= eps;
}

/// Convergence declaration for determinant limits: consecutive
/// order-doubled values within 1e-7 relative. Geometric convergence is
/// expected for polynomial symbols, whose Hankel products are finite rank.
inline bool det_limit_converged(Complex d_N, Complex d_2N) {
  return std::abs(d_N - d_2N) < 1e-7 * (1.0 + std::abs(d_2N));
}

// ---------------------------------------------------------------------------
// Scalar sections (used by the determinant factorization report).
// ---------------------------------------------------------------------------

inline DenseMatrix assemble_scalar_toeplitz(const LaurentPoly& f, int N) {
  DenseMatrix m(N + 1, N + 1);
  for (int j = 0; j <= N; ++j)
    for (int k = 0; k <= N; ++k) m(j, k) = f.coeff(j - k);
  return m;
}

inline Complex scalar_det_pair(const LaurentPoly& f, const LaurentPoly& finv,
                               int N) {
  return LuDecomposition(assemble_scalar_toeplitz(f, N)).det() *
         LuDecomposition(assemble_scalar_toeplitz(finv, N)).det();
}

}  // namespace rsf
