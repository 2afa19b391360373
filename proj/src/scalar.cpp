/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "pstforge/scalar.hpp"

#include <charconv>
#include <cmath>

#include "pstforge/error.hpp"

namespace pstforge {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonIncreasing: return "NonIncreasing";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::IrrationalSpacingRatio: return "IrrationalSpacingRatio";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::InvalidMeasure: return "InvalidMeasure";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorCode::ResidueDegreeError: return "ResidueDegreeError";
    case ErrorCode::NonPositiveU: return "NonPositiveU";
    case ErrorCode::NonPositiveNorm: return "NonPositiveNorm";
    case ErrorCode::AlgorithmDisagreement: return "AlgorithmDisagreement";
    case ErrorCode::InvalidPlan: return "InvalidPlan";
    case ErrorCode::InteriorSingleRemoval: return "InteriorSingleRemoval";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::NonZeroField: return "NonZeroField";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, "non-finite value has no rational form");
  }
  Rational r(v);  // mpq_set_d is exact
  r.canonicalize();
  return r;
}

namespace {

bool is_integer_text(std::string_view t) {
  if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
  if (t.empty()) return false;
  for (char c : t) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer_text(num) || (slash != std::string_view::npos && !is_integer_text(den))) {
    throw Error(ErrorCode::ParseError, "not a rational literal: '" + std::string(text) + "'");
  }
  auto strip_plus = [](std::string_view t) {
    return std::string(!t.empty() && t.front() == '+' ? t.substr(1) : t);
  };
  mpz_class n(strip_plus(num));
  mpz_class d = 1;
  if (slash != std::string_view::npos) d = mpz_class(strip_plus(den));
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

const char* to_string(Mode mode) noexcept { return mode == Mode::Exact ? "exact" : "float"; }

Mode parse_mode(std::string_view text) {
  if (text == "exact") return Mode::Exact;
  if (text == "float") return Mode::Float;
  throw Error(ErrorCode::ParseError, "unknown mode '" + std::string(text) + "' (expected exact|float)");
}

}  // namespace pstforge
