/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Acceptance criteria for the construction pipeline, runnable from the CLI
// (`pstforge selftest`) and from the acceptance test binary.

#include <functional>
#include <string>
#include <vector>

namespace pstforge {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

using CriterionCallback = std::function<void(const CriterionResult&)>;

int acceptance_criterion_count();

/// Runs one criterion (1-based id). Exceptions are reported as failures.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_acceptance(const CriterionCallback& on_result = {});

}  // namespace pstforge
