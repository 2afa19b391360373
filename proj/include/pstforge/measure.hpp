/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "pstforge/scalar.hpp"
#include "pstforge/spectrum.hpp"

namespace pstforge {

/// Positive weights on strictly increasing points, normalized to unit sum.
template <class T>
class DiscreteMeasure {
 public:
  /// Validates ordering and positivity, then normalizes the weights.
  DiscreteMeasure(std::vector<T> points, std::vector<T> weights);

  const std::vector<T>& points() const noexcept { return points_; }
  const std::vector<T>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return points_.size(); }

  friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

 private:
  std::vector<T> points_;
  std::vector<T> weights_;
};

/// w_s proportional to (-1)^{N+s} / prod_{i != s} (x_s - x_i). Requires an
/// admissible spectrum.
template <class T>
DiscreteMeasure<T> pst_weights(const Spectrum<T>& s);

/// Same formula without the admissibility gate. Used by surgery, which keeps
/// its own admissibility bookkeeping.
template <class T>
DiscreteMeasure<T> inverse_derivative_weights(std::span<const T> points);

template <class T>
bool is_symmetric(const DiscreteMeasure<T>& m);

template <class T>
bool is_antisymmetric_support(const DiscreteMeasure<T>& m);

template <class U, class T>
DiscreteMeasure<U> convert_measure(const DiscreteMeasure<T>& m);

}  // namespace pstforge
