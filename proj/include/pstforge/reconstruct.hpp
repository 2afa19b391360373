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

#include "pstforge/measure.hpp"
#include "pstforge/polynomial.hpp"
#include "pstforge/scalar.hpp"
#include "pstforge/spectrum.hpp"

namespace pstforge {

/// Three-term recurrence P_{n+1} = (x - B_n) P_n - U_n P_{n-1} for monic
/// orthogonal polynomials. b holds B_0..B_N, u holds U_1..U_N (u[0] is U_1).
template <class T>
struct MonicRecurrence {
  std::vector<T> b;
  std::vector<T> u;

  std::size_t n() const noexcept { return b.size() - 1; }

  /// Throws InvalidArgument on a size mismatch and NonPositiveU (index = n)
  /// when some U_n <= 0.
  void validate() const;

  /// P_0(x) .. P_{N+1}(x) evaluated by the recurrence.
  std::vector<T> monic_values(const T& x) const;

  friend bool operator==(const MonicRecurrence&, const MonicRecurrence&) = default;
};

/// One-excitation Hamiltonian of the chain: fields B_n on the diagonal and
/// couplings J_n = sqrt(U_n) off the diagonal. U_n is kept in the scalar type
/// so exact chains stay exact; the couplings are always binary64.
template <class T>
struct JacobiChain {
  std::vector<T> b;
  std::vector<T> u;
  T time_over_pi{1};

  std::size_t n() const noexcept { return b.size() - 1; }
  std::vector<double> couplings() const;
  std::vector<double> fields() const;
  double time() const;

  friend bool operator==(const JacobiChain&, const JacobiChain&) = default;
};

template <class T>
struct LagrangeResult {
  Polynomial<T> chi;    // chi_N with chi_N(x_s) = (-1)^{N+s}
  Polynomial<T> monic;  // P_N = chi_N / leading coefficient
};

template <class T>
LagrangeResult<T> lagrange_chi_n(std::span<const T> points);

/// Euclidean descent from P_{N+1} = prod (x - x_s) and P_N.
template <class T>
MonicRecurrence<T> reconstruct_euclid(const Spectrum<T>& s);

/// Same descent on bare points; the caller vouches for admissibility.
template <class T>
MonicRecurrence<T> reconstruct_euclid_points(std::span<const T> points);

/// Values-based Stieltjes procedure on the measure.
template <class T>
MonicRecurrence<T> reconstruct_stieltjes(const DiscreteMeasure<T>& m);

template <class T>
JacobiChain<T> chain_from_recurrence(const MonicRecurrence<T>& r, const T& time_over_pi);

template <class T>
MonicRecurrence<T> recurrence_of(const JacobiChain<T>& c);

/// B -> alpha*B + beta, J -> alpha*J (U -> alpha^2 U), time -> time/alpha.
template <class T>
JacobiChain<T> affine_map_chain(const JacobiChain<T>& c, const T& alpha, const T& beta);

/// Scale-relative max difference between two recurrences of equal length:
/// B differences over max(|B|, sqrt|U|), U differences over max|U|.
template <class T>
double recurrence_discrepancy(const MonicRecurrence<T>& a, const MonicRecurrence<T>& c);

enum class Algorithm { Euclid, Stieltjes, Both };

Algorithm parse_algorithm(std::string_view text);
const char* to_string(Algorithm a) noexcept;

/// Default per mode: Euclid for exact, Stieltjes for float.
template <class T>
constexpr Algorithm default_algorithm() {
  return is_exact_v<T> ? Algorithm::Euclid : Algorithm::Stieltjes;
}

/// Relative tolerance for Algorithm::Both.
inline constexpr double kAgreementTolerance = 1e-8;

template <class T>
struct BuildResult {
  DiscreteMeasure<T> measure;
  MonicRecurrence<T> recurrence;
  JacobiChain<T> chain;
  std::optional<double> discrepancy;  // set for Algorithm::Both
};

/// pst_weights -> reconstruction -> chain. Throws AlgorithmDisagreement when
/// Algorithm::Both sees the two routes differ beyond kAgreementTolerance.
template <class T>
BuildResult<T> build_chain(const Spectrum<T>& s, Algorithm algorithm);

template <class U, class T>
JacobiChain<U> convert_chain(const JacobiChain<T>& c);

template <class U, class T>
MonicRecurrence<U> convert_recurrence(const MonicRecurrence<T>& r);

}  // namespace pstforge
