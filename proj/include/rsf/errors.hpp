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
#include <optional>
#include <stdexcept>
#include <string>

namespace rsf {

/// Base class for all domain errors raised by the library. Every concrete
/// error carries a stable machine-readable name (used verbatim by the CLI
/// error JSON) and, where meaningful, a step index.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& detail,
        std::optional<int> step = std::nullopt)
      : std::runtime_error(name + ": " + detail),
        name_(std::move(name)),
        step_(step) {}

  const std::string& name() const noexcept { return name_; }
  std::optional<int> step() const noexcept { return step_; }

 private:
  std::string name_;
  std::optional<int> step_;
};

struct ZeroConstantTerm : Error {
  explicit ZeroConstantTerm(const std::string& detail)
      : Error("ZeroConstantTerm", detail) {}
};

struct NotUnimodular : Error {
  explicit NotUnimodular(const std::string& detail)
      : Error("NotUnimodular", detail) {}
};

struct OffCircle : Error {
  explicit OffCircle(const std::string& detail) : Error("OffCircle", detail) {}
};

struct DivergentNorm : Error {
  explicit DivergentNorm(const std::string& detail)
      : Error("DivergentNorm", detail) {}
};

struct ExceptionalPair : Error {
  explicit ExceptionalPair(const std::string& detail)
      : Error("ExceptionalPair", detail) {}
};

/// 1 + zeta^- zeta^+ = 0, the exceptional locus of the square-root-free blocks.
struct ExceptionalPairAlt : Error {
  explicit ExceptionalPairAlt(const std::string& detail)
      : Error("ExceptionalPairAlt", detail) {}
};

/// Raised by the coordinate recoveries when 1 - zeta_k^- zeta_k^+ falls below
/// the exceptional tolerance at step k. Carries the offending pair.
class ExceptionalSet : public Error {
 public:
  ExceptionalSet(int step, std::complex<double> minus,
                 std::complex<double> plus, const std::string& detail)
      : Error("ExceptionalSet", detail, step), minus_(minus), plus_(plus) {}

  std::complex<double> minus() const noexcept { return minus_; }
  std::complex<double> plus() const noexcept { return plus_; }

 private:
  std::complex<double> minus_, plus_;
};

struct SectionSingular : Error {
  explicit SectionSingular(const std::string& detail)
      : Error("SectionSingular", detail) {}
};

struct NotConverged : Error {
  explicit NotConverged(const std::string& detail)
      : Error("NotConverged", detail) {}
};

struct ConstantNotLDU : Error {
  explicit ConstantNotLDU(const std::string& detail)
      : Error("ConstantNotLDU", detail) {}
};

struct DegreeMismatch : Error {
  explicit DegreeMismatch(const std::string& detail)
      : Error("DegreeMismatch", detail) {}
};

struct LogBranchFailure : Error {
  explicit LogBranchFailure(const std::string& detail)
      : Error("LogBranchFailure", detail) {}
};

struct ConsistencyViolation : Error {
  explicit ConsistencyViolation(const std::string& detail)
      : Error("ConsistencyViolation", detail) {}
};

struct ShapeViolation : Error {
  explicit ShapeViolation(const std::string& detail)
      : Error("ShapeViolation", detail) {}
};

}  // namespace rsf
