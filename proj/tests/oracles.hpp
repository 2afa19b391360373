/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Reference computations that share no code with the library: hand-rolled
// Gram-Schmidt, direct products in long double, dense Eigen solves, and
// random generators for property tests.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "pstforge/reconstruct.hpp"
#include "pstforge/scalar.hpp"

namespace oracle {

using pstforge::Rational;

inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

inline std::vector<Rational> qs(std::initializer_list<double> halves_or_ints) {
  std::vector<Rational> out;
  for (double v : halves_or_ints) out.push_back(pstforge::rational_from_double(v));
  return out;
}

/// w_s = (-1)^{N+s} / prod_{i != s}(x_s - x_i), normalized, in long double.
inline std::vector<double> pst_weights_ld(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<long double> w(n);
  long double total = 0;
  for (std::size_t s = 0; s < n; ++s) {
    long double p = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != s) p *= static_cast<long double>(x[s]) - x[i];
    }
    w[s] = ((n - 1 + s) % 2 == 0 ? 1.0L : -1.0L) / p;
    total += w[s];
  }
  std::vector<double> out;
  for (auto v : w) out.push_back(static_cast<double>(v / total));
  return out;
}

/// Recurrence coefficients by Gram-Schmidt on 1, x, x^2, ... with exact
/// inner products, storing each P_n by its values on the support.
inline pstforge::MonicRecurrence<Rational> gram_schmidt(const std::vector<Rational>& x,
                                                        const std::vector<Rational>& w) {
  const std::size_t n = x.size();
  auto inner = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * a[i] * b[i];
    return s;
  };
  std::vector<std::vector<Rational>> p;
  std::vector<Rational> norms;
  pstforge::MonicRecurrence<Rational> r;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Rational> mono(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rational v = 1;
      for (std::size_t e = 0; e < k; ++e) v *= x[i];
      mono[i] = v;
    }
    for (std::size_t j = 0; j < k; ++j) {
      const Rational c = inner(mono, p[j]) / norms[j];
      for (std::size_t i = 0; i < n; ++i) mono[i] -= c * p[j][i];
    }
    p.push_back(mono);
    norms.push_back(inner(mono, mono));
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Rational> xp(n);
    for (std::size_t i = 0; i < n; ++i) xp[i] = x[i] * p[k][i];
    r.b.push_back(inner(xp, p[k]) / norms[k]);
    if (k > 0) r.u.push_back(norms[k] / norms[k - 1]);
  }
  return r;
}

inline Eigen::MatrixXd dense(const pstforge::JacobiChain<double>& c) {
  const auto b = c.fields();
  const auto j = c.couplings();
  const auto n = static_cast<Eigen::Index>(b.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = b[i];
  for (Eigen::Index i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = j[i];
  return m;
}

/// exp(itJ) by Eigen's matrix exponential.
inline Eigen::MatrixXcd propagator(const pstforge::JacobiChain<double>& c, double t) {
  Eigen::MatrixXcd a = dense(c).cast<std::complex<double>>() * std::complex<double>(0.0, t);
  return a.exp();
}

/// Random strictly increasing integer spectrum with odd gaps, then a random
/// rational affine image (so T is generally not pi).
inline std::vector<Rational> random_admissible(std::mt19937_64& rng, int max_points,
                                               bool affine = true) {
  const int size = 1 + static_cast<int>(rng() % max_points);
  std::vector<Rational> x;
  long cur = static_cast<long>(rng() % 7) - 3;
  for (int i = 0; i < size; ++i) {
    x.emplace_back(cur);
    cur += 1 + 2 * static_cast<long>(rng() % 3);
  }
  if (affine) {
    const Rational alpha = q(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 4));
    const Rational beta = q(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 3));
    for (auto& v : x) v = alpha * v + beta;
  }
  return x;
}

inline pstforge::JacobiChain<double> random_chain(std::mt19937_64& rng, int max_n) {
  std::uniform_real_distribution<double> coupling(0.2, 2.0), field(-1.0, 1.0);
  const int n = static_cast<int>(rng() % (max_n + 1));
  pstforge::JacobiChain<double> c;
  for (int k = 0; k <= n; ++k) c.b.push_back(field(rng));
  for (int k = 0; k < n; ++k) c.u.push_back(std::pow(coupling(rng), 2));
  return c;
}

inline double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::fabs(a[i] - b[i]) / std::max(1.0, std::fabs(b[i])));
  }
  return a.size() == b.size() ? worst : INFINITY;
}

}  // namespace oracle
