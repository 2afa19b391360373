/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace pstforge {

enum class ErrorCode {
  InvalidArgument,
  // spectrum
  NonIncreasing,
  NotAdmissible,
  IrrationalSpacingRatio,
  BadParameters,
  NonPositiveScale,
  // measure / reconstruct
  InvalidMeasure,
  Overflow,
  DegenerateLeadingCoefficient,
  ResidueDegreeError,
  NonPositiveU,
  NonPositiveNorm,
  AlgorithmDisagreement,
  // surgery
  InvalidPlan,
  InteriorSingleRemoval,
  EmptyResult,
  ZeroDenominator,
  NonZeroField,
  // analysis
  ConvergenceFailure,
  // io
  ParseError,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `index()` names the offending
/// spacing, coefficient or eigenvalue when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<long> index = std::nullopt)
      : std::runtime_error(what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<long> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<long> index_;
};

}  // namespace pstforge
