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

#include <json.hpp>

#include "rsf/fullloop.hpp"
#include "rsf/matrix_loop.hpp"
#include "rsf/params.hpp"
#include "rsf/toeplitz.hpp"

namespace rsf {

using nlohmann::json;

// LaurentPoly <-> {"terms": [[n, re, im], ...]}, sorted by n. Doubles pass
// through nlohmann's shortest round-trip formatting, so the trip is
// bit-exact for anything representable.

inline json to_json(const LaurentPoly& f) {
  json terms = json::array();
  for (const auto& [n, c] : f.terms())
    terms.push_back(json::array({n, c.real(), c.imag()}));
  return json{{"terms", std::move(terms)}};
}

inline LaurentPoly laurent_from_json(const json& j) {
  LaurentPoly f;
  for (const auto& t : j.at("terms"))
    f.set(t.at(0).get<int>(),
          Complex(t.at(1).get<double>(), t.at(2).get<double>()));
  return f;
}

inline json to_json(const MatrixLoop& g) {
  return json{{"a", to_json(g.a)},
              {"b", to_json(g.b)},
              {"c", to_json(g.c)},
              {"d", to_json(g.d)}};
}

inline MatrixLoop matrix_loop_from_json(const json& j) {
  return {laurent_from_json(j.at("a")), laurent_from_json(j.at("b")),
          laurent_from_json(j.at("c")), laurent_from_json(j.at("d"))};
}

// ParamSeq <-> {"kind": "zeta"|"eta", "pairs": [[re-, im-, re+, im+], ...]}

inline json to_json(const ParamSeq& s) {
  json pairs = json::array();
  for (const auto& p : s.pairs)
    pairs.push_back(json::array(
        {p.minus.real(), p.minus.imag(), p.plus.real(), p.plus.imag()}));
  return json{{"kind", s.kind == SeqKind::zeta ? "zeta" : "eta"},
              {"pairs", std::move(pairs)}};
}

inline ParamSeq param_seq_from_json(const json& j) {
  ParamSeq s;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "zeta")
    s.kind = SeqKind::zeta;
  else if (kind == "eta")
    s.kind = SeqKind::eta;
  else
    throw std::invalid_argument("ParamSeq: kind must be 'zeta' or 'eta'");
  for (const auto& p : j.at("pairs"))
    s.pairs.push_back(ParamPair{
        Complex(p.at(0).get<double>(), p.at(1).get<double>()),
        Complex(p.at(2).get<double>(), p.at(3).get<double>())});
  return s;
}

// CoeffSeries <-> {"start": n0, "values": [[re, im], ...]}

inline json to_json(const CoeffSeries& s) {
  json vals = json::array();
  for (const auto& v : s.values)
    vals.push_back(json::array({v.real(), v.imag()}));
  return json{{"start", s.start}, {"values", std::move(vals)}};
}

inline CoeffSeries coeff_series_from_json(const json& j) {
  CoeffSeries s;
  s.start = j.at("start").get<int>();
  for (const auto& v : j.at("values"))
    s.values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
  return s;
}

// FullLoopParams <-> {"etas": ParamSeq, "chi": {"terms": ...}, "zetas": ...}

inline json to_json(const FullLoopParams& p) {
  return json{{"etas", to_json(p.etas)},
              {"chi", to_json(p.chi)},
              {"zetas", to_json(p.zetas)}};
}

inline FullLoopParams full_params_from_json(const json& j) {
  FullLoopParams p;
  p.etas = param_seq_from_json(j.at("etas"));
  p.chi = laurent_from_json(j.at("chi"));
  p.zetas = param_seq_from_json(j.at("zetas"));
  if (p.etas.kind != SeqKind::eta)
    throw std::invalid_argument("FullLoopParams: etas must have kind eta");
  if (p.zetas.kind != SeqKind::zeta)
    throw std::invalid_argument("FullLoopParams: zetas must have kind zeta");
  return p;
}

inline json to_json(const TriangularFactors& tf) {
  return json{{"l", to_json(tf.l)},
              {"m0", json::array({tf.m0.real(), tf.m0.imag()})},
              {"a0", tf.a0},
              {"u", to_json(tf.u)}};
}

inline json to_json(const DetReport& r) {
  auto cplx = [](Complex z) { return json::array({z.real(), z.imag()}); };
  return json{{"formula", cplx(r.formula)},
              {"section_value", cplx(r.section_value)},
              {"shifted_formula", cplx(r.shifted_formula)},
              {"shifted_section_value", cplx(r.shifted_section_value)},
              {"residuals", r.residuals},
              {"N", r.N}};
}

/// Section matrix as a dense JSON array of [re, im] rows, for external checks.
inline json to_json(const DenseMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace rsf
