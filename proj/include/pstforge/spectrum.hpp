/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pstforge/scalar.hpp"

namespace pstforge {

/// One-excitation energies x_0 < ... < x_N together with the transfer time.
/// The time is stored as a multiple of pi so that exact mode keeps it exact.
template <class T>
class Spectrum {
 public:
  Spectrum(std::vector<T> points, T time_over_pi);

  const std::vector<T>& points() const noexcept { return points_; }
  const T& time_over_pi() const noexcept { return time_over_pi_; }
  double time() const;

  /// Chain length parameter N (number of points minus one).
  std::size_t n() const noexcept { return points_.size() - 1; }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  std::vector<T> points_;
  T time_over_pi_;
};

/// Largest transfer time for which every spacing is an odd multiple of pi/T.
template <class T>
struct Admissibility {
  T time_over_pi;
  std::vector<long long> multiples;  // M_s, one per spacing
};

/// Throws NonIncreasing, NotAdmissible (index = offending spacing) or
/// IrrationalSpacingRatio. A single point is admissible with T = pi.
template <class T>
Admissibility<T> check_admissible(std::span<const T> points);

/// Throws NonIncreasing with the offending index when the points are not
/// strictly increasing and finite.
template <class T>
void require_strictly_increasing(std::span<const T> points);

/// x -> alpha*x + beta, time -> time/alpha.
template <class T>
Spectrum<T> affine_map(const Spectrum<T>& s, const T& alpha, const T& beta);

template <class T>
bool is_antisymmetric(std::span<const T> points);

enum class FamilyKind { Uniform, Hyperbolic, Gapped };

struct SpectrumFamily {
  FamilyKind kind = FamilyKind::Uniform;
  int n = 0;
  int k = 0;  // hyperbolic only
  int l = 0;  // gapped only
};

/// Throws BadParameters when the family parameters are out of range.
void validate(const SpectrumFamily& family);

/// Generated spectra are exact; float mode gets the binary64 rounding of the
/// exact points. Every output is admissible with T = pi.
template <class T>
Spectrum<T> generate(const SpectrumFamily& family);

FamilyKind parse_family(std::string_view text);
const char* to_string(FamilyKind kind) noexcept;

template <class U, class T>
Spectrum<U> convert_spectrum(const Spectrum<T>& s);

}  // namespace pstforge
