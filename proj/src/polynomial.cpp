/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "pstforge/polynomial.hpp"

#include <algorithm>
#include <utility>

#include "pstforge/error.hpp"

namespace pstforge {

template <class T>
Polynomial<T>::Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

template <class T>
Polynomial<T> Polynomial<T>::constant(const T& c) {
  return Polynomial(std::vector<T>{c});
}

template <class T>
Polynomial<T> Polynomial<T>::from_roots(const std::vector<T>& roots) {
  Polynomial p = constant(T(1));
  for (const auto& r : roots) p = p.times_linear(r);
  return p;
}

template <class T>
void Polynomial<T>::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

template <class T>
T Polynomial<T>::operator()(const T& x) const {
  T acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

template <class T>
Polynomial<T> Polynomial<T>::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<T> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * T(static_cast<long>(i));
  return Polynomial(std::move(d));
}

template <class T>
Polynomial<T>& Polynomial<T>::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), T(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

template <class T>
Polynomial<T>& Polynomial<T>::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), T(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

template <class T>
Polynomial<T>& Polynomial<T>::operator*=(const T& c) {
  for (auto& v : coeffs_) v *= c;
  trim();
  return *this;
}

template <class T>
Polynomial<T>& Polynomial<T>::operator/=(const T& c) {
  if (c == 0) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero scalar");
  for (auto& v : coeffs_) v /= c;
  return *this;
}

template <class T>
Polynomial<T> Polynomial<T>::times_linear(const T& a) const {
  if (is_zero()) return {};
  std::vector<T> out(coeffs_.size() + 1, T(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out[i + 1] += coeffs_[i];
    out[i] -= a * coeffs_[i];
  }
  return Polynomial(std::move(out));
}

template <class T>
DivMod<T> divmod(const Polynomial<T>& dividend, const Polynomial<T>& divisor) {
  if (divisor.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  std::vector<T> rem = dividend.coeffs();
  const auto& d = divisor.coeffs();
  const std::size_t dn = d.size();
  if (rem.size() < dn) return {Polynomial<T>{}, dividend};
  std::vector<T> quot(rem.size() - dn + 1, T(0));
  for (std::size_t k = quot.size(); k-- > 0;) {
    T q = rem[k + dn - 1] / d.back();
    quot[k] = q;
    for (std::size_t i = 0; i < dn; ++i) rem[k + i] -= q * d[i];
    rem[k + dn - 1] = T(0);  // cancelled by construction; float keeps no residue
  }
  rem.resize(dn - 1);
  return {Polynomial<T>(std::move(quot)), Polynomial<T>(std::move(rem))};
}

template <class T>
Polynomial<T> deflate(const Polynomial<T>& p, const T& a) {
  const auto& c = p.coeffs();
  if (c.size() <= 1) return {};
  std::vector<T> q(c.size() - 1);
  T carry(0);
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    carry = c[k + 1] + a * carry;
    q[k] = carry;
  }
  return Polynomial<T>(std::move(q));
}

template class Polynomial<Rational>;
template class Polynomial<double>;
template DivMod<Rational> divmod(const Polynomial<Rational>&, const Polynomial<Rational>&);
template DivMod<double> divmod(const Polynomial<double>&, const Polynomial<double>&);
template Polynomial<Rational> deflate(const Polynomial<Rational>&, const Rational&);
template Polynomial<double> deflate(const Polynomial<double>&, const double&);

}  // namespace pstforge
