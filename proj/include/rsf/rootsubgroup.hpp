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

#include <string>
#include <utility>
#include <vector>

#include "rsf/matrix_loop.hpp"
#include "rsf/params.hpp"

namespace rsf {

// ---------------------------------------------------------------------------
// Forward maps: coordinates -> loops.
// In every builder the highest index is the leftmost factor.
// ---------------------------------------------------------------------------

/// Elementary zeta factor [[1, m z^-k], [p z^k, 1]].
inline MatrixLoop zeta_block(int k, const ParamPair& z) {
  MatrixLoop e = MatrixLoop::identity();
  e.b = LaurentPoly::monomial(-k, z.minus);
  e.c = LaurentPoly::monomial(k, z.plus);
  return e;
}

/// Elementary eta factor [[1, p z^i], [m z^-i, 1]].
inline MatrixLoop eta_block(int i, const ParamPair& e) {
  MatrixLoop g = MatrixLoop::identity();
  g.b = LaurentPoly::monomial(i, e.plus);
  g.c = LaurentPoly::monomial(-i, e.minus);
  return g;
}

/// a(zeta_n)[[1, z_n^- z^-n],[z_n^+ z^n, 1]] ... a(zeta_1)[[1, z_1^- z^-1],
/// [z_1^+ z, 1]]. Output has the lower-normal shape: b(0) = c(0) = 0 and
/// d(0) = prod a(zeta_k).
inline MatrixLoop build_g2(const ParamSeq& zetas,
                           double eps = tol::exceptional) {
  if (zetas.kind != SeqKind::zeta)
    throw std::invalid_argument("build_g2: sequence kind must be zeta");
  MatrixLoop g = MatrixLoop::identity();
  Complex scale = 1;
  for (std::size_t i = 0; i < zetas.size(); ++i) {
    scale *= a_factor(zetas.pairs[i], eps);
    g = zeta_block(int(i) + 1, zetas.pairs[i]) * g;
  }
  return scale * g;
}

/// a(eta_n)[[1, e_n^+ z^n],[e_n^- z^-n, 1]] ... a(eta_0)[[1, e_0^+],
/// [e_0^-, 1]]. Indices run from 0.
inline MatrixLoop build_g1(const ParamSeq& etas,
                           double eps = tol::exceptional) {
  if (etas.kind != SeqKind::eta)
    throw std::invalid_argument("build_g1: sequence kind must be eta");
  MatrixLoop g = MatrixLoop::identity();
  Complex scale = 1;
  for (std::size_t i = 0; i < etas.size(); ++i) {
    scale *= a_factor(etas.pairs[i], eps);
    g = eta_block(int(i), etas.pairs[i]) * g;
  }
  return scale * g;
}

/// Square-root-free zeta block [[1 + m p, m z^-k], [p z^k, 1]] (det = 1).
inline MatrixLoop zeta_block_noroot(int k, const ParamPair& z) {
  MatrixLoop e = zeta_block(k, z);
  e.a = LaurentPoly(Complex(1) + z.minus * z.plus);
  return e;
}

inline MatrixLoop eta_block_noroot(int i, const ParamPair& e) {
  MatrixLoop g = eta_block(i, e);
  g.a = LaurentPoly(Complex(1) + e.minus * e.plus);
  return g;
}

/// Ordered product of square-root-free blocks, highest index leftmost.
/// No regularity is required: the blocks are polynomial in the pair.
inline MatrixLoop build_g2_noroot(const ParamSeq& zetas) {
  if (zetas.kind != SeqKind::zeta)
    throw std::invalid_argument("build_g2_noroot: sequence kind must be zeta");
  MatrixLoop g = MatrixLoop::identity();
  for (std::size_t i = 0; i < zetas.size(); ++i)
    g = zeta_block_noroot(int(i) + 1, zetas.pairs[i]) * g;
  return g;
}

/// Eta-side analogue of build_g2_noroot, indices from 0.
inline MatrixLoop build_g1_noroot(const ParamSeq& etas) {
  if (etas.kind != SeqKind::eta)
    throw std::invalid_argument("build_g1_noroot: sequence kind must be eta");
  MatrixLoop g = MatrixLoop::identity();
  for (std::size_t i = 0; i < etas.size(); ++i)
    g = eta_block_noroot(int(i), etas.pairs[i]) * g;
  return g;
}

// ---------------------------------------------------------------------------
// Combinatorial coefficient oracle.
// ---------------------------------------------------------------------------

/// Bottom row (gamma, delta) of the bare block product, by direct multi-index
/// enumeration up to order N and independent of any matrix multiplication.
///
/// gamma_n sums p_{i1} m_{j1} ... p_{ir} m_{jr} p_{i(r+1)} over
/// 0 < i1 < j1 < ... < jr < i(r+1) with sum(i) - sum(j) = n; delta_n sums
/// m_{j1} p_{i1} ... m_{jr} p_{ir} over 0 < j1 < i1 < ... < ir with
/// sum(i - j) = n, delta_0 = 1. Equals build_g2's (c, d) divided by d(0).
inline std::pair<LaurentPoly, LaurentPoly> gamma_delta_oracle(
    const ParamSeq& zetas, int N) {
  if (zetas.kind != SeqKind::zeta)
    throw std::invalid_argument("gamma_delta_oracle: kind must be zeta");
  const int L = int(zetas.size());
  LaurentPoly gamma, delta;
  delta.set(0, 1);

  // role: false = expecting a plus index (i), true = expecting a minus (j).
  // A gamma word alternates p m p m ... p; a delta word m p m p ... p.
  struct Walker {
    const ParamSeq& zs;
    int L, N;
    LaurentPoly *gamma, *delta;

    void gamma_walk(int last, int exp_sum, Complex prod, bool plus_turn) {
      for (int idx = last + 1; idx <= L; ++idx) {
        if (plus_turn) {
          const int e = exp_sum + idx;
          const Complex v = prod * zs.pairs[std::size_t(idx - 1)].plus;
          if (e >= 1 && e <= N) gamma->add(e, v);  // word may stop on a plus
          gamma_walk(idx, e, v, false);
        } else {
          const int e = exp_sum - idx;
          // Largest later plus index is L, so prune hopeless branches.
          if (e + L < 1) continue;
          gamma_walk(idx, e, prod * zs.pairs[std::size_t(idx - 1)].minus,
                     true);
        }
      }
    }

    void delta_walk(int last, int exp_sum, Complex prod, bool minus_turn) {
      for (int idx = last + 1; idx <= L; ++idx) {
        if (minus_turn) {
          delta_walk(idx, exp_sum - idx,
                     prod * zs.pairs[std::size_t(idx - 1)].minus, false);
        } else {
          const int e = exp_sum + idx;
          const Complex v = prod * zs.pairs[std::size_t(idx - 1)].plus;
          if (e >= 1 && e <= N) delta->add(e, v);  // complete m/p pairing
          delta_walk(idx, e, v, true);
        }
      }
    }
  } walker{zetas, L, N, &gamma, &delta};

  walker.gamma_walk(0, 0, Complex(1), true);
  walker.delta_walk(0, 0, Complex(1), true);
  return {gamma, delta};
}

// ---------------------------------------------------------------------------
// Ratio series.
// ---------------------------------------------------------------------------

namespace detail {
/// Power-series part of f, insisting the discarded negative sweep is noise.
inline LaurentPoly series_part(const LaurentPoly& f, const char* who) {
  LaurentPoly neg = minus_part(f);
  if (neg.norm_inf() > 1e-8)
    throw ShapeViolation(std::string(who) +
                         ": entry has significant negative-power support");
  return nonneg_part(f);
}
}  // namespace detail

/// Taylor coefficients xi_1..xi_N of c/d for a lower-normal loop
/// (d constant term nonzero).
inline CoeffSeries taylor_ratio_bottom(const MatrixLoop& g, int N) {
  if (std::abs(g.d.coeff(0)) <= tol::zero)
    throw ZeroConstantTerm("taylor_ratio_bottom: d(0) vanishes");
  LaurentPoly dpos = detail::series_part(g.d, "taylor_ratio_bottom");
  const int guard = g.c.is_zero() ? 0 : std::max(0, -g.c.min_exp());
  LaurentPoly ratio =
      truncate(g.c * reciprocal_series(dpos, N + guard), 1, N);
  CoeffSeries s;
  s.start = 1;
  for (int n = 1; n <= N; ++n) s.values.push_back(ratio.coeff(n));
  return s;
}

/// Coefficients of b*/a* at z^-1 .. z^-N for a lower-normal loop, reported
/// as values[n-1] = (b*/a*)_{-n}. Computed through the starred entries, whose
/// ratio is a plain power series.
inline CoeffSeries taylor_ratio_top_star(const MatrixLoop& g, int N) {
  LaurentPoly bs = star(g.b);  // support >= 1
  LaurentPoly as = detail::series_part(star(g.a), "taylor_ratio_top_star");
  if (std::abs(as.coeff(0)) <= tol::zero)
    throw ZeroConstantTerm("taylor_ratio_top_star: a*(inf) vanishes");
  const int guard = bs.is_zero() ? 0 : std::max(0, -bs.min_exp());
  LaurentPoly ratio = truncate(bs * reciprocal_series(as, N + guard), 1, N);
  CoeffSeries s;
  s.start = 1;
  for (int n = 1; n <= N; ++n) s.values.push_back(std::conj(ratio.coeff(n)));
  return s;
}

/// Taylor coefficients psi_0..psi_N of b/a for an upper-normal loop
/// (a constant term nonzero).
inline CoeffSeries taylor_ratio_top(const MatrixLoop& g, int N) {
  if (std::abs(g.a.coeff(0)) <= tol::zero)
    throw ZeroConstantTerm("taylor_ratio_top: a(0) vanishes");
  LaurentPoly apos = detail::series_part(g.a, "taylor_ratio_top");
  const int guard = g.b.is_zero() ? 0 : std::max(0, -g.b.min_exp());
  LaurentPoly ratio =
      truncate(g.b * reciprocal_series(apos, N + guard), 0, N);
  CoeffSeries s;
  s.start = 0;
  for (int n = 0; n <= N; ++n) s.values.push_back(ratio.coeff(n));
  return s;
}

/// Coefficients of c*/d* at z^0 .. z^-N for an upper-normal loop, reported
/// as values[n] = (c*/d*)_{-n}.
inline CoeffSeries taylor_ratio_bottom_star(const MatrixLoop& g, int N) {
  LaurentPoly cs = star(g.c);
  LaurentPoly ds = detail::series_part(star(g.d), "taylor_ratio_bottom_star");
  if (std::abs(ds.coeff(0)) <= tol::zero)
    throw ZeroConstantTerm("taylor_ratio_bottom_star: d*(inf) vanishes");
  const int guard = cs.is_zero() ? 0 : std::max(0, -cs.min_exp());
  LaurentPoly ratio = truncate(cs * reciprocal_series(ds, N + guard), 0, N);
  CoeffSeries s;
  s.start = 0;
  for (int n = 0; n <= N; ++n) s.values.push_back(std::conj(ratio.coeff(n)));
  return s;
}

// ---------------------------------------------------------------------------
// Inverse maps: series -> coordinates.
// ---------------------------------------------------------------------------

/// Recursive rational recovery of zeta_1..zeta_n from the Taylor data of
/// c/d (xi, from z^1) and b*/a* (xi_star, values[k-1] = coefficient of
/// z^-k). At step k the partial product built from the pairs found so far is
/// re-expanded and the residual leading coefficient is divided by
/// prod_{s<k}(1 - zeta_s^- zeta_s^+). Raises ExceptionalSet(k) when the pair
/// found at step k leaves that product below eps.
inline ParamSeq recover_zeta(const CoeffSeries& xi, const CoeffSeries& xi_star,
                             int n, double eps = tol::exceptional) {
  ParamSeq out{SeqKind::zeta, {}};
  Complex prod = 1;
  for (int k = 1; k <= n; ++k) {
    MatrixLoop partial = build_g2(out, eps);
    const Complex xi_part = taylor_ratio_bottom(partial, k).at(k);
    const Complex xis_part = taylor_ratio_top_star(partial, k).at(k);
    ParamPair pair;
    pair.plus = (xi.at(k) - xi_part) / prod;
    pair.minus = (xi_star.at(k) - xis_part) / prod;
    const Complex w = Complex(1) - pair.minus * pair.plus;
    if (std::abs(w) <= eps)
      throw ExceptionalSet(k, pair.minus, pair.plus,
                           "recover_zeta: 1 - m*p = " +
                               std::to_string(std::abs(w)) + " at step " +
                               std::to_string(k));
    out.pairs.push_back(pair);
    prod *= w;
  }
  return out;
}

/// Mirror of recover_zeta for the eta family: psi from b/a (values from
/// z^0), psi_star values[i] = (c*/d*)_{-i}. Indices run from 0.
inline ParamSeq recover_eta(const CoeffSeries& psi, const CoeffSeries& psi_star,
                            int n, double eps = tol::exceptional) {
  ParamSeq out{SeqKind::eta, {}};
  Complex prod = 1;
  for (int i = 0; i < n; ++i) {
    MatrixLoop partial = build_g1(out, eps);
    const Complex psi_part = taylor_ratio_top(partial, i).at(i);
    const Complex psis_part = taylor_ratio_bottom_star(partial, i).at(i);
    ParamPair pair;
    pair.plus = (psi.at(i) - psi_part) / prod;
    pair.minus = (psi_star.at(i) - psis_part) / prod;
    const Complex w = Complex(1) - pair.minus * pair.plus;
    if (std::abs(w) <= eps)
      throw ExceptionalSet(i, pair.minus, pair.plus,
                           "recover_eta: 1 - m*p = " +
                               std::to_string(std::abs(w)) + " at step " +
                               std::to_string(i));
    out.pairs.push_back(pair);
    prod *= w;
  }
  return out;
}

/// Convenience: recover the zeta coordinates straight from a lower-normal
/// loop, reading both ratio series to order n.
inline ParamSeq recover_zeta_from_loop(const MatrixLoop& g, int n,
                                       double eps = tol::exceptional) {
  return recover_zeta(taylor_ratio_bottom(g, n), taylor_ratio_top_star(g, n),
                      n, eps);
}

inline ParamSeq recover_eta_from_loop(const MatrixLoop& g, int n,
                                      double eps = tol::exceptional) {
  return recover_eta(taylor_ratio_top(g, n), taylor_ratio_bottom_star(g, n),
                     n, eps);
}

/// Order reduction: peel the top degree off a polynomial lower-normal loop.
/// With d(0) normalizing the read-off, zeta_n^+ = c_n / d_0 and
/// zeta_n^- = (b)_{-n} / d_0; the loop is then left-multiplied by
/// [[1, -m z^-n],[-p z^n, 1]] and rescaled by a(pair) to restore det = 1.
/// Agrees with recover_zeta on its common domain.
inline ParamSeq recover_zeta_by_reduction(const MatrixLoop& g_in,
                                          double eps = tol::exceptional) {
  MatrixLoop g = g_in;
  const double scale = std::max(1.0, g.norm_inf());

  auto degree_of = [&](const MatrixLoop& h) {
    int n = 0;
    if (!h.c.is_zero()) n = std::max(n, h.c.max_exp());
    if (!h.d.is_zero()) n = std::max(n, h.d.max_exp());
    if (!h.a.is_zero()) n = std::max(n, -h.a.min_exp());
    if (!h.b.is_zero()) n = std::max(n, -h.b.min_exp());
    return n;
  };

  int n = degree_of(g);
  std::vector<ParamPair> rev(static_cast<std::size_t>(n));
  while (n > 0) {
    const Complex d0 = g.d.coeff(0);
    if (std::abs(d0) <= tol::zero)
      throw ZeroConstantTerm("recover_zeta_by_reduction: d(0) vanishes");
    ParamPair pair;
    pair.plus = g.c.coeff(n) / d0;
    pair.minus = g.b.coeff(-n) / d0;
    const Complex w = Complex(1) - pair.minus * pair.plus;
    if (std::abs(w) <= eps)
      throw ExceptionalSet(n, pair.minus, pair.plus,
                           "recover_zeta_by_reduction: exceptional at degree " +
                               std::to_string(n));
    MatrixLoop peel = MatrixLoop::identity();
    peel.b = LaurentPoly::monomial(-n, -pair.minus);
    peel.c = LaurentPoly::monomial(n, -pair.plus);
    g = a_factor(pair, eps) * (peel * g);
    rev[std::size_t(n - 1)] = pair;
    const int n_next = degree_of(g);
    if (n_next >= n)
      throw DegreeMismatch(
          "recover_zeta_by_reduction: degree did not drop at " +
          std::to_string(n));
    n = n_next;
  }
  if (max_coeff_dist(g, MatrixLoop::identity()) > 1e-7 * scale)
    throw DegreeMismatch(
        "recover_zeta_by_reduction: nonidentity degree-zero remainder");
  return ParamSeq{SeqKind::zeta, std::move(rev)};
}

/// Recovery for the square-root-free builder. Both residual maps are affine
/// (det = 1 collapses the quotient curvature), so each step solves two
/// one-point secants: the k-th c/d coefficient is affine in zeta_k^+, and
/// the k-th coefficient of c/d of the inverse-star loop is affine in
/// conj(zeta_k^- / (1 + zeta_k^- zeta_k^+)), since the block inverse-star is
/// [[1, -conj(p) z^-k], [-conj(m) z^k, conj(1+mp)]].
inline ParamSeq recover_zeta_noroot(const CoeffSeries& xi,
                                    const CoeffSeries& xi_dual, int n,
                                    double eps = tol::exceptional) {
  ParamSeq out{SeqKind::zeta, {}};
  for (int k = 1; k <= n; ++k) {
    MatrixLoop partial = build_g2_noroot(out);

    ParamSeq probe_plus = out;
    probe_plus.pairs.push_back(ParamPair{0, 1});
    const Complex base_p = taylor_ratio_bottom(partial, k).at(k);
    const Complex slope_p =
        taylor_ratio_bottom(build_g2_noroot(probe_plus), k).at(k) - base_p;
    if (std::abs(slope_p) <= eps)
      throw ExceptionalPairAlt("recover_zeta_noroot: flat plus residual at " +
                               std::to_string(k));
    ParamPair pair;
    pair.plus = (xi.at(k) - base_p) / slope_p;

    // Probe pair (1, 0) sits at u = 1 in the dual affine coordinate.
    ParamSeq probe_minus = out;
    probe_minus.pairs.push_back(ParamPair{1, 0});
    const Complex base_m =
        taylor_ratio_bottom(inverse_star(partial), k).at(k);
    const Complex slope_m =
        taylor_ratio_bottom(inverse_star(build_g2_noroot(probe_minus)), k)
            .at(k) -
        base_m;
    if (std::abs(slope_m) <= eps)
      throw ExceptionalPairAlt("recover_zeta_noroot: flat minus residual at " +
                               std::to_string(k));
    const Complex u = std::conj((xi_dual.at(k) - base_m) / slope_m);
    const Complex denom = Complex(1) - u * pair.plus;  // = 1/(1 + m p)
    if (std::abs(denom) <= eps)
      throw ExceptionalPairAlt("recover_zeta_noroot: 1 + m*p ~ 0 at step " +
                               std::to_string(k));
    pair.minus = u / denom;

    if (std::abs(Complex(1) + pair.minus * pair.plus) <= eps)
      throw ExceptionalPairAlt("recover_zeta_noroot: 1 + m*p ~ 0 at step " +
                               std::to_string(k));
    out.pairs.push_back(pair);
  }
  return out;
}

/// Series-driven variant reading both inputs from the loop itself.
inline ParamSeq recover_zeta_noroot_from_loop(const MatrixLoop& g, int n,
                                              double eps = tol::exceptional) {
  CoeffSeries xi = taylor_ratio_bottom(g, n);
  CoeffSeries dual = taylor_ratio_bottom(inverse_star(g), n);
  return recover_zeta_noroot(xi, dual, n, eps);
}

}  // namespace rsf
