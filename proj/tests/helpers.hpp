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

#include <random>

#include "rsf/rsf.hpp"

namespace rsf_test {

using rsf::Complex;

inline constexpr unsigned kSeed = 0x5EED;

inline Complex random_complex(std::mt19937& rng, double radius) {
  std::uniform_real_distribution<double> mag(0.0, radius);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  const double r = mag(rng), t = ang(rng);
  return {r * std::cos(t), r * std::sin(t)};
}

inline rsf::LaurentPoly random_laurent(std::mt19937& rng, int lo, int hi,
                                       double mag) {
  rsf::LaurentPoly f;
  for (int n = lo; n <= hi; ++n) f.set(n, random_complex(rng, mag));
  return f;
}

/// Random pair sequence with every pair kept clear of the exceptional set.
inline rsf::ParamSeq random_params(std::mt19937& rng, rsf::SeqKind kind,
                                   int len, double mag,
                                   double min_regular = 0.1) {
  rsf::ParamSeq s{kind, {}};
  while (int(s.pairs.size()) < len) {
    rsf::ParamPair p{random_complex(rng, mag), random_complex(rng, mag)};
    if (std::abs(Complex(1) - p.minus * p.plus) >= min_regular)
      s.pairs.push_back(p);
  }
  return s;
}

inline double pair_dist(const rsf::ParamSeq& x, const rsf::ParamSeq& y) {
  if (x.pairs.size() != y.pairs.size())
    return std::numeric_limits<double>::infinity();
  double m = 0;
  for (std::size_t i = 0; i < x.pairs.size(); ++i) {
    m = std::max(m, std::abs(x.pairs[i].minus - y.pairs[i].minus));
    m = std::max(m, std::abs(x.pairs[i].plus - y.pairs[i].plus));
  }
  return m;
}

/// Max deviation of g from h over `count` points of the unit circle.
inline double grid_dist(const rsf::MatrixLoop& g, const rsf::MatrixLoop& h,
                        int count = 32) {
  double m = 0;
  for (int i = 0; i < count; ++i) {
    const double t = 2.0 * M_PI * i / count;
    const Complex z(std::cos(t), std::sin(t));
    const rsf::Mat2 a = rsf::eval(g, z), b = rsf::eval(h, z);
    m = std::max({m, std::abs(a.a - b.a), std::abs(a.b - b.b),
                  std::abs(a.c - b.c), std::abs(a.d - b.d)});
  }
  return m;
}

/// Parse z-polynomial shorthand used in fixtures: coefficient list by power.
inline rsf::LaurentPoly poly(std::initializer_list<std::pair<int, double>> t) {
  rsf::LaurentPoly f;
  for (const auto& [n, c] : t) f.set(n, Complex(c, 0));
  return f;
}

/// The degree-3 lower-normal loop with no root subgroup factorization:
/// [[1 - 1/z + 1/z^2, 1/z + 1/z^3], [z - 2z^2 + z^3, 1 - z + z^2]].
inline rsf::MatrixLoop no_root_subgroup_loop() {
  rsf::MatrixLoop g;
  g.a = poly({{0, 1}, {-1, -1}, {-2, 1}});
  g.b = poly({{-1, 1}, {-3, 1}});
  g.c = poly({{1, 1}, {2, -2}, {3, 1}});
  g.d = poly({{0, 1}, {1, -1}, {2, 1}});
  return g;
}

}  // namespace rsf_test
