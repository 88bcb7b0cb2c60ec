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
#include <map>
#include <string>
#include <utility>

#include "rsf/rootsubgroup.hpp"
#include "rsf/toeplitz.hpp"

namespace rsf {

/// Finitely supported exponent sequence j -> chi_j over the integers; the
/// minus/zero/plus accessors are split(). Reuses the Laurent coefficient
/// container.
using ChiSeries = LaurentPoly;

/// Coordinates of a composite loop g = g1* diag(e^chi, e^-chi) g2.
struct FullLoopParams {
  ParamSeq etas{SeqKind::eta, {}};
  ChiSeries chi;
  ParamSeq zetas{SeqKind::zeta, {}};
};

namespace detail {
/// Clip order for exp(f) so the discarded coefficient mass is below 1e-17:
/// powers f^k reach order k*w for width w, so the order scales with the
/// width times the factorial cutoff of ||f||_1.
inline int exp_clip_order(const LaurentPoly& f, int pad) {
  if (f.is_zero()) return pad;
  const int w = std::max(-f.min_exp(), f.max_exp());
  const double a = f.norm1();
  int k = 1;
  double term = 1.0;
  while (term * std::exp(a) >= 1e-17 && k < 512) {
    term *= a / k;
    ++k;
  }
  return std::max(w * k, w + pad);
}

inline int chi_clip_order(const ChiSeries& chi, int pad) {
  return exp_clip_order(2.0 * chi, pad);
}

inline MatrixLoop diag_exp(const ChiSeries& chi, int order) {
  MatrixLoop m;
  m.a = exp_series(chi, order);
  m.d = exp_series(-chi, order);
  return m;
}
}  // namespace detail

/// g = g1* diag(e^chi, e^-chi) g2. The exponentials are truncated series,
/// clipped to the chi width plus `pad`; with desk-scale coordinates the
/// discarded tail is far below working precision.
inline MatrixLoop build_full(const FullLoopParams& p,
                             double eps = tol::exceptional, int pad = 24) {
  const MatrixLoop g1 = build_g1(p.etas, eps);
  const MatrixLoop g2 = build_g2(p.zetas, eps);
  const MatrixLoop mid = detail::diag_exp(p.chi, detail::chi_clip_order(p.chi, pad));
  return star(g1) * mid * g2;
}

/// Square-root-free variant, pairing the alternate blocks on both wings.
inline MatrixLoop build_full_noroot(const FullLoopParams& p, int pad = 24) {
  const MatrixLoop g1 = build_g1_noroot(p.etas);
  const MatrixLoop g2 = build_g2_noroot(p.zetas);
  const MatrixLoop mid = detail::diag_exp(p.chi, detail::chi_clip_order(p.chi, pad));
  return star(g1) * mid * g2;
}

// ---------------------------------------------------------------------------
// Normal forms of the two wing families, by series division.
// ---------------------------------------------------------------------------

/// g = [[1, x*],[0,1]] diag(a2, 1/a2) V for a lower-normal loop
/// (x* strictly negative support, V polynomial, unipotent upper at 0).
struct LowerNormalForm {
  LaurentPoly x_star;
  Complex a2{1};
  MatrixLoop v;
};

/// g = [[1,0],[y*,1]] diag(a1, 1/a1) U for an upper-normal loop
/// (y* support <= 0, constant allowed; U polynomial, unipotent upper at 0).
struct UpperNormalForm {
  LaurentPoly y_star;
  Complex a1{1};
  MatrixLoop u;
};

inline LowerNormalForm solve_lower_normal(const MatrixLoop& g) {
  const Complex d0 = g.d.coeff(0);
  if (std::abs(d0) <= tol::zero)
    throw ZeroConstantTerm("solve_lower_normal: d(0) vanishes");
  LowerNormalForm f;
  f.a2 = Complex(1) / d0;
  const LaurentPoly dpos = detail::series_part(g.d, "solve_lower_normal");
  const int order = g.b.is_zero() ? 0 : std::max(0, -g.b.min_exp());
  f.x_star = minus_part(g.b * reciprocal_series(dpos, order));
  const Complex ainv = d0;  // 1 / a2
  f.v.a = nonneg_part(ainv * (g.a - f.x_star * g.c));
  f.v.b = nonneg_part(ainv * (g.b - f.x_star * g.d));
  f.v.c = f.a2 * g.c;
  f.v.d = f.a2 * g.d;
  return f;
}

inline UpperNormalForm solve_upper_normal(const MatrixLoop& g) {
  const Complex a0 = g.a.coeff(0);
  if (std::abs(a0) <= tol::zero)
    throw ZeroConstantTerm("solve_upper_normal: a(0) vanishes");
  UpperNormalForm f;
  f.a1 = a0;
  const LaurentPoly apos = detail::series_part(g.a, "solve_upper_normal");
  const int order = g.c.is_zero() ? 0 : std::max(0, -g.c.min_exp());
  f.y_star = nonpos_part(g.c * reciprocal_series(apos, order));
  f.u.a = (Complex(1) / a0) * g.a;
  f.u.b = (Complex(1) / a0) * g.b;
  f.u.c = nonneg_part(a0 * (g.c - f.y_star * g.a));
  f.u.d = nonneg_part(a0 * (g.d - f.y_star * g.b));
  return f;
}

// ---------------------------------------------------------------------------
// Explicit triangular factors of the composite loop.
// ---------------------------------------------------------------------------

/// Closed-form triangular factorization of build_full(p), assembled from the
/// wing normal forms and the polarization of chi; independent of the
/// Toeplitz-section route and required to agree with it.
///
/// With chi = X- + X0 + X+ and T = e^{2 X0} e^{2 X+} x* + e^{-2 X-} y:
///   l  = U1* diag(e^{X-}, e^{-X-}) [[1, conj(a1)^2 P_-(T)], [0, 1]]
///   m0 a0 = conj(a1) a2 e^{X0}
///   u  = [[1, a2^{-2} e^{-2 X0}(T - P_-(T))],[0,1]] diag(e^{X+}, e^{-X+}) V2
inline TriangularFactors explicit_factors(const FullLoopParams& p,
                                          double eps = tol::exceptional,
                                          int pad = 24) {
  const MatrixLoop g1 = build_g1(p.etas, eps);
  const MatrixLoop g2 = build_g2(p.zetas, eps);
  const UpperNormalForm f1 = solve_upper_normal(g1);
  const LowerNormalForm f2 = solve_lower_normal(g2);

  const LaurentSplit x = split(p.chi);
  int order = detail::chi_clip_order(p.chi, pad);
  for (const LaurentPoly* f : {&f2.x_star, &f1.y_star})
    if (!f->is_zero())
      order = std::max(order, std::max(-f->min_exp(), f->max_exp()) + pad);

  const Complex lam0_sq = std::exp(Complex(2) * x.zero);
  const LaurentPoly y = star(f1.y_star);
  const LaurentPoly T = lam0_sq * (exp_series(2.0 * x.plus, order) * f2.x_star) +
                        exp_series(-2.0 * x.minus, order) * y;
  const LaurentPoly r_minus = minus_part(T);
  const LaurentPoly r_plus = (Complex(1) / lam0_sq) * (T - r_minus);

  MatrixLoop corr_l = MatrixLoop::identity();
  corr_l.b = std::conj(f1.a1) * std::conj(f1.a1) * r_minus;
  MatrixLoop lam_minus;
  lam_minus.a = exp_series(x.minus, order);
  lam_minus.d = exp_series(-x.minus, order);

  MatrixLoop corr_u = MatrixLoop::identity();
  corr_u.b = (Complex(1) / (f2.a2 * f2.a2)) * r_plus;
  MatrixLoop lam_plus;
  lam_plus.a = exp_series(x.plus, order);
  lam_plus.d = exp_series(-x.plus, order);

  TriangularFactors tf;
  tf.l = star(f1.u) * lam_minus * corr_l;
  tf.u = corr_u * lam_plus * f2.v;
  const Complex kappa = std::conj(f1.a1) * f2.a2 * std::exp(x.zero);
  tf.a0 = std::abs(kappa);
  tf.m0 = kappa / tf.a0;
  return tf;
}

// ---------------------------------------------------------------------------
// Grid logarithm.
// ---------------------------------------------------------------------------

struct GridLog {
  LaurentPoly w;        // Fourier fit of log f, support in [-bound, bound]
  double residual = 0;  // max relative grid deviation of exp(w) from f
};

/// Logarithm of a zero-free Laurent function by circle sampling: unwrap the
/// phase, reject nonzero winding, fit Fourier coefficients on a 4x
/// oversampled grid and keep the known finite support.
inline GridLog grid_log_fit(const LaurentPoly& f, int bound) {
  const int M = 4 * (bound + 4);
  std::vector<Complex> vals(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) {
    const double t = 2.0 * M_PI * m / M;
    vals[std::size_t(m)] = f(Complex(std::cos(t), std::sin(t)));
    if (std::abs(vals[std::size_t(m)]) < 1e-13)
      throw LogBranchFailure("grid_log_fit: value near zero on the circle");
  }
  std::vector<double> theta(static_cast<std::size_t>(M));
  theta[0] = std::arg(vals[0]);
  double total = 0;
  for (int m = 1; m <= M; ++m) {
    const Complex ratio = vals[std::size_t(m % M)] / vals[std::size_t(m - 1)];
    const double inc = std::arg(ratio);
    total += inc;
    if (m < M) theta[std::size_t(m)] = theta[std::size_t(m - 1)] + inc;
  }
  if (std::abs(total) > M_PI)
    throw LogBranchFailure("grid_log_fit: winding number is nonzero");

  std::vector<Complex> logs(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m)
    logs[std::size_t(m)] =
        Complex(std::log(std::abs(vals[std::size_t(m)])), theta[std::size_t(m)]);

  GridLog out;
  for (int j = -bound; j <= bound; ++j) {
    Complex acc = 0;
    for (int m = 0; m < M; ++m) {
      const double t = -2.0 * M_PI * j * m / M;
      acc += logs[std::size_t(m)] * Complex(std::cos(t), std::sin(t));
    }
    acc /= double(M);
    if (std::abs(acc) > 1e-12) out.w.set(j, acc);
  }
  for (int m = 0; m < M; ++m) {
    const double t = 2.0 * M_PI * m / M;
    const Complex z(std::cos(t), std::sin(t));
    const Complex err = std::exp(out.w(z)) - vals[std::size_t(m)];
    out.residual = std::max(out.residual,
                            std::abs(err) / (1.0 + std::abs(vals[std::size_t(m)])));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Full recovery.
// ---------------------------------------------------------------------------

struct RecoverFullResult {
  FullLoopParams params;
  double consistency_residual = 0;  // the two-route exponent comparison
};

namespace detail {
inline void trim_trailing_zero_pairs(ParamSeq& s, double eps = 1e-9) {
  while (!s.pairs.empty() && std::abs(s.pairs.back().minus) < eps &&
         std::abs(s.pairs.back().plus) < eps)
    s.pairs.pop_back();
}
}  // namespace detail

/// Recover (etas, chi, zetas) from the triangular factorizations of g and
/// g^{-*}. The scalar combinations
///   S_l = l11 (l'11)* + l21 (l'21)*   and   S_u = u21 (u'21)* + u22 (u'22)*
/// are both zero-free exponentials of P_- chi - P_+ chi times constants;
/// their logs fix chi_+- (and must agree: the consistency condition). The
/// zeta (eta) coordinates come recursively from the ratio series of the
/// second row of u (first column of l) of g and g^{-*}. chi_0 is recovered
/// modulo 2 pi i from m0 a0 once the wing constants are known.
inline RecoverFullResult recover_full(const MatrixLoop& g, int N,
                                      double eps = tol::exceptional) {
  // Composites carry truncated exponentials; allow their det defect floor.
  const MatrixLoop h = inverse_star(g, 1e-9);
  const TriangularFactors tf = triangular_factor(g, N);
  const TriangularFactors tp = triangular_factor(h, N);

  const LaurentPoly s_l = tf.l.a * star(tp.l.a) + tf.l.c * star(tp.l.c);
  const LaurentPoly s_u = tf.u.c * star(tp.u.c) + tf.u.d * star(tp.u.d);

  const GridLog wl = grid_log_fit(s_l, N);
  const GridLog wu = grid_log_fit(s_u, N);
  LaurentPoly wl_free = wl.w;
  wl_free.set(0, 0);
  LaurentPoly wu_free = wu.w;
  wu_free.set(0, 0);
  const double consistency =
      std::max({(wl_free - wu_free).norm_inf(), wl.residual, wu.residual});
  if (consistency > 1e-6)
    throw ConsistencyViolation("recover_full: route disagreement " +
                               std::to_string(consistency));

  const LaurentPoly w = 0.5 * (wl_free + wu_free);
  const LaurentSplit ws = split(w);

  RecoverFullResult out;
  out.consistency_residual = consistency;

  // zeta side: u21/u22 = c2/d2 and u'21/u'22 = -b2/a2.
  {
    const CoeffSeries xi = taylor_ratio_bottom(tf.u, N);
    CoeffSeries xi_star = taylor_ratio_bottom(tp.u, N);
    for (Complex& v : xi_star.values) v = -std::conj(v);
    out.params.zetas = recover_zeta(xi, xi_star, N, eps);
    detail::trim_trailing_zero_pairs(out.params.zetas);
  }

  // eta side: star ratios of the first columns give b1/a1 and -c1/d1.
  {
    const CoeffSeries psi = taylor_ratio_top(star(tf.l), N);
    CoeffSeries psi_star = taylor_ratio_top(star(tp.l), N);
    for (Complex& v : psi_star.values) v = -std::conj(v);
    out.params.etas = recover_eta(psi, psi_star, N + 1, eps);
    detail::trim_trailing_zero_pairs(out.params.etas);
  }

  // m0 a0 = conj(a1(0)) * d2(0)^{-1} * e^{chi_0}, with a1(0) and d2(0) the
  // products of the wing square roots (the lower-normal constant is the
  // inverse of the zeta-side product).
  Complex a1 = 1, a2 = 1;
  for (const auto& pr : out.params.etas.pairs) a1 *= a_factor(pr, eps);
  for (const auto& pr : out.params.zetas.pairs) a2 *= a_factor(pr, eps);
  const Complex chi0 = std::log(tf.m0 * tf.a0 * a2 / std::conj(a1));

  // w = chi_- - chi_+, so the plus part flips sign on the way back.
  out.params.chi = ws.minus;
  out.params.chi += Complex(-1) * ws.plus;
  out.params.chi.set(0, chi0);
  return out;
}

// ---------------------------------------------------------------------------
// Determinant product formulas.
// ---------------------------------------------------------------------------

namespace detail {
inline Complex pow_i(Complex z, int e) { return LaurentPoly::pow_int(z, e); }

inline Complex chi_exp_factor(const ChiSeries& chi) {
  Complex s = 0;
  for (const auto& [j, c] : chi.terms())
    if (j >= 1) s += double(j) * c * chi.coeff(-j);
  return std::exp(2.0 * s);
}
}  // namespace detail

/// conj(prod_i (1 - eta_i^- eta_i^+)^{-i}) * exp(2 sum_j j chi_j chi_-j)
///   * prod_k (1 - zeta_k^- zeta_k^+)^{-k}.
inline Complex det_product_formula(const FullLoopParams& p,
                                   double eps = tol::exceptional) {
  Complex eta_prod = 1, zeta_prod = 1;
  for (std::size_t i = 0; i < p.etas.size(); ++i) {
    const ParamPair& pr = p.etas.pairs[i];
    const Complex w = Complex(1) - pr.minus * pr.plus;
    if (std::abs(w) <= eps) throw ExceptionalPair("det_product_formula: eta");
    eta_prod *= detail::pow_i(w, -int(i));
  }
  for (std::size_t k = 0; k < p.zetas.size(); ++k) {
    const ParamPair& pr = p.zetas.pairs[k];
    const Complex w = Complex(1) - pr.minus * pr.plus;
    if (std::abs(w) <= eps) throw ExceptionalPair("det_product_formula: zeta");
    zeta_prod *= detail::pow_i(w, -int(k) - 1);
  }
  return std::conj(eta_prod) * detail::chi_exp_factor(p.chi) * zeta_prod;
}

/// Shifted variant: eta exponents i+1, zeta exponents k-1, same chi factor.
inline Complex det_product_formula_shifted(const FullLoopParams& p,
                                           double eps = tol::exceptional) {
  Complex eta_prod = 1, zeta_prod = 1;
  for (std::size_t i = 0; i < p.etas.size(); ++i) {
    const ParamPair& pr = p.etas.pairs[i];
    const Complex w = Complex(1) - pr.minus * pr.plus;
    if (std::abs(w) <= eps)
      throw ExceptionalPair("det_product_formula_shifted: eta");
    eta_prod *= detail::pow_i(w, -int(i) - 1);
  }
  for (std::size_t k = 0; k < p.zetas.size(); ++k) {
    const ParamPair& pr = p.zetas.pairs[k];
    const Complex w = Complex(1) - pr.minus * pr.plus;
    if (std::abs(w) <= eps)
      throw ExceptionalPair("det_product_formula_shifted: zeta");
    zeta_prod *= detail::pow_i(w, -int(k));
  }
  return std::conj(eta_prod) * detail::chi_exp_factor(p.chi) * zeta_prod;
}

/// Square-root-free counterpart: conj(prod (1 + eta eta)^i) * chi factor
///   * prod (1 + zeta zeta)^k, paired with the noroot builders.
inline Complex det_product_formula_noroot(const FullLoopParams& p,
                                          double eps = tol::exceptional) {
  Complex eta_prod = 1, zeta_prod = 1;
  for (std::size_t i = 0; i < p.etas.size(); ++i) {
    const ParamPair& pr = p.etas.pairs[i];
    const Complex w = Complex(1) + pr.minus * pr.plus;
    if (std::abs(w) <= eps)
      throw ExceptionalPairAlt("det_product_formula_noroot: eta");
    eta_prod *= detail::pow_i(w, int(i));
  }
  for (std::size_t k = 0; k < p.zetas.size(); ++k) {
    const ParamPair& pr = p.zetas.pairs[k];
    const Complex w = Complex(1) + pr.minus * pr.plus;
    if (std::abs(w) <= eps)
      throw ExceptionalPairAlt("det_product_formula_noroot: zeta");
    zeta_prod *= detail::pow_i(w, int(k) + 1);
  }
  return std::conj(eta_prod) * detail::chi_exp_factor(p.chi) * zeta_prod;
}

// ---------------------------------------------------------------------------
// Determinant factorization report.
// ---------------------------------------------------------------------------

struct DetReport {
  Complex formula{1};
  Complex section_value{1};
  Complex shifted_formula{1};
  Complex shifted_section_value{1};
  std::map<std::string, double> residuals;
  int N = 0;
};

/// Computes the section determinants of g and of its three factors at order
/// N and reports the residuals of the factorization identity and of the
/// closed-form products. The first factor enters as g1* (matching the
/// composite), the middle as the diagonal loop of e^{+-chi} (whose section
/// determinant is exactly the product of the two scalar e^{+-chi} section
/// determinants). Section determinants are taken in the single-section mode,
/// the one that converges to the closed forms; the pair mode converges to
/// their square and is exercised separately in the tests.
inline DetReport det_factorization_check(const FullLoopParams& p, int N,
                                         double eps = tol::exceptional,
                                         int pad = 24) {
  DetReport rep;
  rep.N = N;
  const MatrixLoop g = build_full(p, eps, pad);
  rep.section_value = toeplitz_det(g, N);
  rep.shifted_section_value = shifted_det(g, N);
  rep.formula = det_product_formula(p, eps);
  rep.shifted_formula = det_product_formula_shifted(p, eps);

  const MatrixLoop h1 = star(build_g1(p.etas, eps));
  const MatrixLoop g2 = build_g2(p.zetas, eps);
  // The diagonal middle factor decouples: its block section determinant is
  // exactly the product of the two scalar e^{+-chi} sections.
  const int order = detail::chi_clip_order(p.chi, pad);
  const Complex mid_det = scalar_det_pair(exp_series(p.chi, order),
                                          exp_series(-p.chi, order), N);
  const Complex product = toeplitz_det(h1, N) * mid_det * toeplitz_det(g2, N);

  rep.residuals["factorization"] = std::abs(rep.section_value - product);
  rep.residuals["formula"] = std::abs(rep.section_value - rep.formula);
  rep.residuals["shifted_formula"] =
      std::abs(rep.shifted_section_value - rep.shifted_formula);
  return rep;
}

}  // namespace rsf
