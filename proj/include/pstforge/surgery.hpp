/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <string_view>

#include "pstforge/measure.hpp"
#include "pstforge/reconstruct.hpp"
#include "pstforge/spectrum.hpp"

namespace pstforge {

enum class SurgeryKind {
  RemoveEdgeLow,
  RemoveEdgeHigh,
  RemoveLevel,  // single level j; only j = 0 or j = N keep the weights positive
  RemovePair,   // x_j and x_{j+1}
  RemoveSymmetricBoundary,
  RemoveMiddlePair,
};

struct SurgeryPlan {
  SurgeryKind kind = SurgeryKind::RemoveEdgeLow;
  int j = 0;
  int repetitions = 1;
};

SurgeryKind parse_surgery_kind(std::string_view text);
const char* to_string(SurgeryKind kind) noexcept;

/// Removes the planned levels and multiplies the surviving weights by the
/// matching Christoffel factor, then renormalizes. Throws InvalidPlan,
/// InteriorSingleRemoval or EmptyResult.
template <class T>
DiscreteMeasure<T> remove_levels_measure(const DiscreteMeasure<T>& m, const SurgeryPlan& plan);

/// Single-point Christoffel transform of the recurrence. `x_removed` must be
/// an endpoint of the support of `m`.
template <class T>
MonicRecurrence<T> christoffel_chain_update(const MonicRecurrence<T>& r,
                                            const DiscreteMeasure<T>& m,
                                            const T& x_removed);

/// Removes the pair +-x_pair from a zero-field recurrence. The chain shrinks
/// by two and keeps B = 0.
template <class T>
MonicRecurrence<T> christoffel_symmetric_update(const MonicRecurrence<T>& r, const T& x_pair);

/// Removes two spectral points a != b at once (weight factor (x-a)(x-b)).
template <class T>
MonicRecurrence<T> christoffel_pair_update(const MonicRecurrence<T>& r, const T& a, const T& c);

template <class T>
struct SpectralPair {
  DiscreteMeasure<T> measure;
  MonicRecurrence<T> recurrence;
};

template <class T>
struct SurgeryOutcome {
  DiscreteMeasure<T> measure;
  MonicRecurrence<T> closed_form;  // Christoffel updates
  MonicRecurrence<T> rebuilt;      // Stieltjes on the new measure
  Admissibility<T> admissibility;
  double discrepancy = 0;          // worst step, scale-relative
};

/// Runs the plan `repetitions` times, advancing the measure and the
/// recurrence in lockstep. Throws AlgorithmDisagreement when the two routes
/// drift apart (any difference in exact mode, kAgreementTolerance in float).
template <class T>
SurgeryOutcome<T> apply_surgery(const SpectralPair<T>& start, const SurgeryPlan& plan);

}  // namespace pstforge
