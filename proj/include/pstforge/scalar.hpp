/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Scalar support for the two evaluation modes. Exact mode runs on GMP
// rationals, float mode on binary64. Every algorithm in the library is a
// template over one of these two types and is explicitly instantiated for
// both.

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

namespace pstforge {

using Rational = mpq_class;

enum class Mode { Exact, Float };

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <class T>
inline constexpr Mode mode_of_v = is_exact_v<T> ? Mode::Exact : Mode::Float;

inline double to_double(const Rational& v) { return v.get_d(); }
inline double to_double(double v) { return v; }

inline Rational abs_value(const Rational& v) { return abs(v); }
inline double abs_value(double v) { return std::fabs(v); }

inline int sign_of(const Rational& v) { return sgn(v); }
inline int sign_of(double v) { return (v > 0) - (v < 0); }

inline bool is_finite(const Rational&) { return true; }
inline bool is_finite(double v) { return std::isfinite(v); }

/// Converts a binary64 value into its exact rational value.
Rational rational_from_double(double v);

/// Parses "p", "-p" or "p/q" (decimal-free). Throws ParseError otherwise.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" or "p" text for a rational.
std::string format_rational(const Rational& v);

/// Lossless text for a binary64 value (shortest round-trip form).
std::string format_double(double v);

template <class T>
T scalar_from_double(double v) {
  if constexpr (is_exact_v<T>) {
    return rational_from_double(v);
  } else {
    return v;
  }
}

template <class T>
T scalar_from_rational(const Rational& v) {
  if constexpr (is_exact_v<T>) {
    return v;
  } else {
    return v.get_d();
  }
}

const char* to_string(Mode mode) noexcept;
Mode parse_mode(std::string_view text);

}  // namespace pstforge
