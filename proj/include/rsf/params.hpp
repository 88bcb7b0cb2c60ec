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

#include <complex>
#include <string>
#include <vector>

#include "rsf/laurent.hpp"

namespace rsf {

/// One coordinate pair (minus, plus). For the eta family the builder power
/// is z^i with i starting at 0; for the zeta family z^k with k starting at 1.
struct ParamPair {
  Complex minus{0}, plus{0};
};

inline bool regular(const ParamPair& p, double eps = tol::exceptional) {
  return std::abs(Complex(1) - p.minus * p.plus) > eps;
}

enum class SeqKind { eta, zeta };

/// Finite sequence of coordinate pairs. pairs[i] is eta_i (kind eta, indices
/// from 0) or zeta_{i+1} (kind zeta, indices from 1). Square roots are taken
/// on the principal branch throughout; pairs with 1 - minus*plus on the
/// negative real axis are accepted, with the usual branch-cut discontinuity.
struct ParamSeq {
  SeqKind kind = SeqKind::zeta;
  std::vector<ParamPair> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
  bool empty() const noexcept { return pairs.empty(); }
};

inline bool all_regular(const ParamSeq& s, double eps = tol::exceptional) {
  for (const auto& p : s.pairs)
    if (!regular(p, eps)) return false;
  return true;
}

/// Taylor coefficients of a ratio series, values[i] belonging to power
/// start + i. The zeta-side series c2/d2 starts at 1 (no constant term);
/// the eta-side series b1/a1 starts at 0.
struct CoeffSeries {
  int start = 1;
  std::vector<Complex> values;

  Complex at(int n) const {
    const int i = n - start;
    if (i < 0 || i >= int(values.size())) return 0;
    return values[std::size_t(i)];
  }
};

/// The normalizing square root a(pair) = (1 - minus*plus)^{-1/2}, principal
/// branch. On the unitary slice plus = -conj(minus) this is real positive.
inline Complex a_factor(const ParamPair& p, double eps = tol::exceptional) {
  const Complex w = Complex(1) - p.minus * p.plus;
  if (std::abs(w) <= eps)
    throw ExceptionalPair("a_factor: |1 - minus*plus| = " +
                          std::to_string(std::abs(w)));
  return Complex(1) / std::sqrt(w);
}

}  // namespace rsf
