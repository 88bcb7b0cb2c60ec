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

#include <catch2/catch.hpp>

#include "helpers.hpp"

using namespace rsf;
using rsf_test::poly;

namespace {

// Independent convolution oracle: coefficient vectors multiplied by the
// naive double loop.
LaurentPoly conv_oracle(const LaurentPoly& f, const LaurentPoly& g) {
  LaurentPoly out;
  for (const auto& [n, a] : f.terms())
    for (const auto& [m, b] : g.terms()) out.add(n + m, a * b);
  return out;
}

}  // namespace

TEST_CASE("multiplication: exponent cancellation and telescoping",
          "[laurent]") {
  const LaurentPoly z = LaurentPoly::monomial(1, 1);
  const LaurentPoly zinv = LaurentPoly::monomial(-1, 1);
  REQUIRE(approx_equal(z * zinv, LaurentPoly(1.0), 0.0));

  const LaurentPoly lhs = poly({{0, 1}, {1, -1}}) *
                          poly({{0, 1}, {1, 1}, {2, 1}});
  REQUIRE(approx_equal(lhs, poly({{0, 1}, {3, -1}}), 0.0));
}

TEST_CASE("multiplication matches the brute-force convolution oracle",
          "[laurent]") {
  const LaurentPoly f = poly({{0, 1}, {1, -2}, {2, 1}});
  const LaurentPoly g = poly({{0, 1}, {1, 1}, {3, -1}, {4, -1}});
  REQUIRE(approx_equal(f * g, conv_oracle(f, g), 0.0));

  std::mt19937 rng(rsf_test::kSeed);
  for (int i = 0; i < 20; ++i) {
    const LaurentPoly a = rsf_test::random_laurent(rng, -5, 7, 1.0);
    const LaurentPoly b = rsf_test::random_laurent(rng, -6, 4, 1.0);
    REQUIRE(approx_equal(a * b, conv_oracle(a, b), 1e-14));
  }
}

TEST_CASE("star is the reflected conjugate and an involution", "[laurent]") {
  const LaurentPoly f = LaurentPoly::monomial(2, Complex(0, 1));
  REQUIRE(approx_equal(star(f), LaurentPoly::monomial(-2, Complex(0, -1)),
                       0.0));

  std::mt19937 rng(rsf_test::kSeed + 1);
  for (int i = 0; i < 10; ++i) {
    const LaurentPoly g = rsf_test::random_laurent(rng, -4, 4, 2.0);
    REQUIRE(approx_equal(star(star(g)), g, 0.0));
  }

  // Real coefficients: f*(z) equals conj(f(z)) on the circle.
  const LaurentPoly r = poly({{-2, 0.5}, {-1, -1}, {0, 2}, {1, 3}, {2, 0.25}});
  for (int m = 0; m < 16; ++m) {
    const double t = 2.0 * M_PI * m / 16;
    const Complex z(std::cos(t), std::sin(t));
    REQUIRE(std::abs(star(r)(z) - std::conj(r(z))) < 1e-13);
  }
}

TEST_CASE("reciprocal series", "[laurent]") {
  REQUIRE(approx_equal(reciprocal_series(poly({{0, 1}, {1, -1}}), 3),
                       poly({{0, 1}, {1, 1}, {2, 1}, {3, 1}}), 0.0));

  const LaurentPoly f = poly({{0, 1}, {1, -1}, {2, 1}});
  const LaurentPoly r = reciprocal_series(f, 4);
  REQUIRE(approx_equal(r, poly({{0, 1}, {1, 1}, {3, -1}, {4, -1}}), 1e-14));
  REQUIRE(truncate(f * r - LaurentPoly(1.0), 0, 4).norm_inf() < 1e-12);

  REQUIRE_THROWS_AS(reciprocal_series(LaurentPoly::monomial(1, 1), 3),
                    ZeroConstantTerm);
}

TEST_CASE("reciprocal residual vanishes through the requested order",
          "[laurent]") {
  std::mt19937 rng(rsf_test::kSeed + 2);
  for (int i = 0; i < 10; ++i) {
    LaurentPoly f = rsf_test::random_laurent(rng, 0, 6, 0.8);
    f.set(0, Complex(1) + rsf_test::random_complex(rng, 0.3));
    const LaurentPoly r = reciprocal_series(f, 12);
    REQUIRE(truncate(f * r - LaurentPoly(1.0), 0, 12).norm_inf() < 1e-12);
  }
}

TEST_CASE("split into strictly negative, zero and strictly positive parts",
          "[laurent]") {
  const LaurentPoly f = poly({{-1, 1}, {0, 2}, {1, 3}});
  const LaurentSplit s = split(f);
  REQUIRE(approx_equal(s.minus, poly({{-1, 1}}), 0.0));
  REQUIRE(s.zero == Complex(2, 0));
  REQUIRE(approx_equal(s.plus, poly({{1, 3}}), 0.0));

  const LaurentPoly g = poly({{1, 1}, {4, -2}});
  const LaurentSplit t = split(g);
  REQUIRE(t.minus.is_zero());
  REQUIRE(t.zero == Complex(0, 0));
  REQUIRE(approx_equal(t.plus, g, 0.0));

  std::mt19937 rng(rsf_test::kSeed + 3);
  for (int i = 0; i < 10; ++i) {
    const LaurentPoly h = rsf_test::random_laurent(rng, -6, 6, 2.0);
    auto sp = split(h);
    LaurentPoly back = sp.minus;
    back.add(0, sp.zero);
    back += sp.plus;
    REQUIRE(approx_equal(back, h, 0.0));
  }
}

TEST_CASE("exponential series", "[laurent]") {
  REQUIRE(approx_equal(exp_series(LaurentPoly(), 4), LaurentPoly(1.0), 0.0));

  const LaurentPoly f = LaurentPoly::monomial(1, 0.3);
  const LaurentPoly e = exp_series(f, 8);
  double fact = 1;
  for (int k = 0; k <= 8; ++k) {
    if (k > 0) fact *= k;
    REQUIRE(std::abs(e.coeff(k) - std::pow(0.3, k) / fact) < 1e-15);
  }

  std::mt19937 rng(rsf_test::kSeed + 4);
  for (int i = 0; i < 8; ++i) {
    const LaurentPoly g = rsf_test::random_laurent(rng, -2, 2, 0.4);
    const LaurentPoly prod = exp_series(g, 20) * exp_series(-1.0 * g, 20);
    REQUIRE(truncate(prod - LaurentPoly(1.0), -20, 20).norm_inf() < 1e-10);
  }

  LaurentPoly big;
  big.set(1, 50.0);
  REQUIRE_THROWS_AS(exp_series(big, 4), DivergentNorm);

  REQUIRE_THROWS_AS(exp_series(LaurentPoly::monomial(5, 0.1), 4),
                    std::invalid_argument);
}

TEST_CASE("matrix product basics", "[laurent]") {
  const MatrixLoop id = MatrixLoop::identity();
  MatrixLoop g;
  g.a = poly({{0, 1}});
  g.b = poly({{-1, 0.5}});
  g.c = poly({{1, -0.25}});
  g.d = poly({{0, 1}, {2, 0.125}});
  REQUIRE(approx_equal(g * id, g, 0.0));
  REQUIRE(approx_equal(id * g, g, 0.0));

  // Elementary upper times elementary lower factor.
  const int n = 3;
  const Complex zm(0.4, 0.1), zp(-0.2, 0.3);
  MatrixLoop up = MatrixLoop::identity();
  up.b = LaurentPoly::monomial(-n, zm);
  MatrixLoop low = MatrixLoop::identity();
  low.c = LaurentPoly::monomial(n, zp);
  const MatrixLoop prod = up * low;
  REQUIRE(std::abs(prod.a.coeff(0) - (Complex(1) + zm * zp)) < 1e-15);
  REQUIRE(std::abs(prod.b.coeff(-n) - zm) < 1e-15);
  REQUIRE(std::abs(prod.c.coeff(n) - zp) < 1e-15);
  REQUIRE(approx_equal(prod.d, LaurentPoly(1.0), 0.0));
}

TEST_CASE("matrix product associativity within tolerance", "[laurent]") {
  std::mt19937 rng(rsf_test::kSeed + 5);
  for (int i = 0; i < 5; ++i) {
    MatrixLoop g{rsf_test::random_laurent(rng, -2, 2, 1.0),
                 rsf_test::random_laurent(rng, -2, 2, 1.0),
                 rsf_test::random_laurent(rng, -2, 2, 1.0),
                 rsf_test::random_laurent(rng, -2, 2, 1.0)};
    MatrixLoop h{rsf_test::random_laurent(rng, -2, 2, 1.0),
                 rsf_test::random_laurent(rng, -2, 2, 1.0),
                 rsf_test::random_laurent(rng, -2, 2, 1.0),
                 rsf_test::random_laurent(rng, -2, 2, 1.0)};
    MatrixLoop k{rsf_test::random_laurent(rng, -2, 2, 1.0),
                 rsf_test::random_laurent(rng, -2, 2, 1.0),
                 rsf_test::random_laurent(rng, -2, 2, 1.0),
                 rsf_test::random_laurent(rng, -2, 2, 1.0)};
    REQUIRE(max_coeff_dist((g * h) * k, g * (h * k)) < 1e-12);
  }
}

TEST_CASE("inverse star", "[laurent]") {
  REQUIRE(approx_equal(inverse_star(MatrixLoop::identity()),
                       MatrixLoop::identity(), 0.0));

  MatrixLoop g = MatrixLoop::identity();
  g.c = LaurentPoly::monomial(1, Complex(0.7, -0.2));
  const MatrixLoop gis = inverse_star(g);
  REQUIRE(approx_equal(gis.b,
                       LaurentPoly::monomial(-1, Complex(-0.7, -0.2)), 1e-15));
  // (g^{-*})* = g^{-1}, so g * (g^{-*})* is the identity.
  REQUIRE(max_coeff_dist(g * star(gis), MatrixLoop::identity()) < 1e-14);

  MatrixLoop bad = MatrixLoop::identity();
  bad.a = poly({{0, 2}});
  REQUIRE_THROWS_AS(inverse_star(bad), NotUnimodular);
}

TEST_CASE("evaluation on the circle", "[laurent]") {
  REQUIRE(std::abs(eval(MatrixLoop::identity(), Complex(0, 1)).a -
                   Complex(1)) < 1e-15);

  MatrixLoop g = MatrixLoop::identity();
  g.b = LaurentPoly::monomial(-1, 1);
  const Mat2 v = eval(g, Complex(1, 0));
  REQUIRE(std::abs(v.a - Complex(1)) < 1e-15);
  REQUIRE(std::abs(v.b - Complex(1)) < 1e-15);
  REQUIRE(std::abs(v.c) < 1e-15);

  REQUIRE_THROWS_AS(eval(g, Complex(0.5, 0)), OffCircle);
}

TEST_CASE("convolution bilinearity on wide supports", "[laurent]") {
  std::mt19937 rng(rsf_test::kSeed + 6);
  for (int i = 0; i < 5; ++i) {
    const LaurentPoly a = rsf_test::random_laurent(rng, -8, 8, 1.0);
    const LaurentPoly b = rsf_test::random_laurent(rng, -8, 8, 1.0);
    const LaurentPoly c = rsf_test::random_laurent(rng, -8, 8, 1.0);
    REQUIRE(approx_equal(a * (b + c), a * b + a * c, 1e-12));
    REQUIRE(approx_equal((a * b) * c, a * (b * c), 1e-12));
  }
}
