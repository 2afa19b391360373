/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "pstforge/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "pstforge/error.hpp"

namespace pstforge {

template <class T>
DiscreteMeasure<T>::DiscreteMeasure(std::vector<T> points, std::vector<T> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty() || points_.size() != weights_.size()) {
    throw Error(ErrorCode::InvalidMeasure, "measure needs matching, non-empty points and weights");
  }
  require_strictly_increasing<T>(points_);
  T total(0);
  for (std::size_t s = 0; s < weights_.size(); ++s) {
    if (!is_finite(weights_[s]) || !(weights_[s] > 0)) {
      throw Error(ErrorCode::InvalidMeasure, "weight " + std::to_string(s) + " is not positive",
                  static_cast<long>(s));
    }
    total += weights_[s];
  }
  for (auto& w : weights_) w /= total;
}

template <class T>
DiscreteMeasure<T> inverse_derivative_weights(std::span<const T> points) {
  const std::size_t size = points.size();
  const std::size_t n = size - 1;
  std::vector<T> w(size);
  if constexpr (is_exact_v<T>) {
    for (std::size_t s = 0; s < size; ++s) {
      Rational prod(1);
      for (std::size_t i = 0; i < size; ++i) {
        if (i != s) prod *= points[s] - points[i];
      }
      w[s] = ((n + s) % 2 == 0 ? Rational(1) : Rational(-1)) / prod;
    }
  } else {
    // sign and log-magnitude kept apart; only ratios to the largest weight
    // are exponentiated
    std::vector<double> log_w(size);
    for (std::size_t s = 0; s < size; ++s) {
      double log_mag = 0;
      int sign = (n + s) % 2 == 0 ? 1 : -1;
      for (std::size_t i = 0; i < size; ++i) {
        if (i == s) continue;
        const double d = points[s] - points[i];
        log_mag += std::log(std::fabs(d));
        if (d < 0) sign = -sign;
      }
      if (sign < 0) {
        throw Error(ErrorCode::InvalidMeasure, "weight " + std::to_string(s) + " is not positive",
                    static_cast<long>(s));
      }
      log_w[s] = -log_mag;
      if (!std::isfinite(log_w[s])) {
        throw Error(ErrorCode::Overflow, "weight " + std::to_string(s) + " out of range",
                    static_cast<long>(s));
      }
    }
    const double top = *std::max_element(log_w.begin(), log_w.end());
    for (std::size_t s = 0; s < size; ++s) w[s] = std::exp(log_w[s] - top);
  }
  return DiscreteMeasure<T>(std::vector<T>(points.begin(), points.end()), std::move(w));
}

template <class T>
DiscreteMeasure<T> pst_weights(const Spectrum<T>& s) {
  check_admissible<T>(s.points());
  return inverse_derivative_weights<T>(s.points());
}

template <class T>
bool is_symmetric(const DiscreteMeasure<T>& m) {
  const auto& w = m.weights();
  const std::size_t n = w.size();
  for (std::size_t s = 0; s < n; ++s) {
    if constexpr (is_exact_v<T>) {
      if (w[s] != w[n - 1 - s]) return false;
    } else {
      if (std::fabs(w[s] - w[n - 1 - s]) > 1e-12 * std::max(w[s], w[n - 1 - s])) return false;
    }
  }
  return true;
}

template <class T>
bool is_antisymmetric_support(const DiscreteMeasure<T>& m) {
  return is_antisymmetric<T>(m.points());
}

template <class U, class T>
DiscreteMeasure<U> convert_measure(const DiscreteMeasure<T>& m) {
  if constexpr (std::is_same_v<U, T>) {
    return m;
  } else {
    std::vector<U> x, w;
    x.reserve(m.size());
    w.reserve(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if constexpr (is_exact_v<U>) {
        x.push_back(rational_from_double(m.points()[i]));
        w.push_back(rational_from_double(m.weights()[i]));
      } else {
        x.push_back(to_double(m.points()[i]));
        w.push_back(to_double(m.weights()[i]));
      }
    }
    return DiscreteMeasure<U>(std::move(x), std::move(w));
  }
}

#define PSTFORGE_INSTANTIATE(T)                                                      \
  template class DiscreteMeasure<T>;                                                 \
  template DiscreteMeasure<T> inverse_derivative_weights<T>(std::span<const T>);     \
  template DiscreteMeasure<T> pst_weights<T>(const Spectrum<T>&);                    \
  template bool is_symmetric<T>(const DiscreteMeasure<T>&);                          \
  template bool is_antisymmetric_support<T>(const DiscreteMeasure<T>&);

PSTFORGE_INSTANTIATE(Rational)
PSTFORGE_INSTANTIATE(double)
#undef PSTFORGE_INSTANTIATE

template DiscreteMeasure<double> convert_measure<double, Rational>(const DiscreteMeasure<Rational>&);
template DiscreteMeasure<Rational> convert_measure<Rational, double>(const DiscreteMeasure<double>&);
template DiscreteMeasure<double> convert_measure<double, double>(const DiscreteMeasure<double>&);
template DiscreteMeasure<Rational> convert_measure<Rational, Rational>(const DiscreteMeasure<Rational>&);

}  // namespace pstforge
