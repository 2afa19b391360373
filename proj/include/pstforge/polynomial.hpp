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

namespace pstforge {

/// Dense polynomial in the monomial basis, coefficients stored low to high.
/// The zero polynomial has no coefficients.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs);

  static Polynomial constant(const T& c);
  /// prod_i (x - roots_i)
  static Polynomial from_roots(const std::vector<T>& roots);

  const std::vector<T>& coeffs() const noexcept { return coeffs_; }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const T& leading() const { return coeffs_.back(); }
  T coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T(0); }

  T operator()(const T& x) const;
  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const T& c);
  Polynomial& operator/=(const T& c);

  /// Multiply by (x - a).
  Polynomial times_linear(const T& a) const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& c) { return a *= c; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<T> coeffs_;
};

template <class T>
struct DivMod {
  Polynomial<T> quotient;
  Polynomial<T> remainder;
};

/// Long division by a non-zero divisor.
template <class T>
DivMod<T> divmod(const Polynomial<T>& dividend, const Polynomial<T>& divisor);

/// Synthetic division by (x - a); the remainder (p(a)) is dropped.
template <class T>
Polynomial<T> deflate(const Polynomial<T>& p, const T& a);

}  // namespace pstforge
