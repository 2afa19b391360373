/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "pstforge/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "pstforge/error.hpp"

namespace pstforge {

namespace {

constexpr int kMaxSweeps = 60;

}  // namespace

// Implicit-shift QL (tql2 of Bowdler, Martin, Reinsch and Wilkinson) applied
// directly to the tridiagonal matrix, accumulating rotations into identity.
Eigensystem tridiagonal_eigensystem(std::span<const double> diagonal,
                                    std::span<const double> off_diagonal) {
  const std::size_t n = diagonal.size();
  if (n == 0 || off_diagonal.size() + 1 != n) {
    throw Error(ErrorCode::InvalidArgument, "tridiagonal matrix needs n diagonal and n-1 off-diagonal entries");
  }
  std::vector<double> d(diagonal.begin(), diagonal.end());
  std::vector<double> e(n, 0.0);
  std::copy(off_diagonal.begin(), off_diagonal.end(), e.begin());
  // v[k][i]: component k of eigenvector i
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

  const double eps = std::numeric_limits<double>::epsilon();
  double f = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::fabs(d[l]) + std::fabs(e[l]));
    std::size_t m = l;
    while (std::fabs(e[m]) > eps * tst1) ++m;  // e[n-1] == 0 stops the scan

    if (m > l) {
      int sweeps = 0;
      do {
        if (++sweeps > kMaxSweeps) {
          throw Error(ErrorCode::ConvergenceFailure,
                      "QL iteration did not converge for eigenvalue " + std::to_string(l),
                      static_cast<long>(l));
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t i = m; i-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          for (std::size_t k = 0; k < n; ++k) {
            h = v[k][i + 1];
            v[k][i + 1] = s * v[k][i] + c * h;
            v[k][i] = c * v[k][i] - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::fabs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return d[a] < d[b]; });

  Eigensystem out;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (auto idx : order) {
    out.values.push_back(d[idx]);
    std::vector<double> vec(n);
    for (std::size_t k = 0; k < n; ++k) vec[k] = v[k][idx];
    if (vec[0] < 0) {
      for (auto& x : vec) x = -x;
    }
    out.vectors.push_back(std::move(vec));
  }
  return out;
}

namespace {

Eigensystem eigensystem_of(const JacobiChain<double>& c) {
  recurrence_of(c).validate();
  const auto diag = c.fields();
  const auto off = c.couplings();
  return tridiagonal_eigensystem(diag, off);
}

std::vector<std::complex<double>> amplitudes_from(const Eigensystem& es, double t) {
  const std::size_t size = es.values.size();
  std::vector<std::complex<double>> out(size, {0.0, 0.0});
  for (std::size_t s = 0; s < size; ++s) {
    const std::complex<double> phase = std::polar(1.0, t * es.values[s]) * es.vectors[s][0];
    for (std::size_t k = 0; k < size; ++k) out[k] += phase * es.vectors[s][k];
  }
  return out;
}

std::complex<double> end_amplitude(const Eigensystem& es, double t) {
  std::complex<double> f{0.0, 0.0};
  const std::size_t last = es.values.size() - 1;
  for (std::size_t s = 0; s < es.values.size(); ++s) {
    f += std::polar(1.0, t * es.values[s]) * (es.vectors[s][0] * es.vectors[s][last]);
  }
  return f;
}

}  // namespace

SpectralData eigensolve(const JacobiChain<double>& c) {
  const auto es = eigensystem_of(c);
  SpectralData out;
  out.eigenvalues = es.values;
  for (const auto& vec : es.vectors) {
    out.first_components.push_back(vec.front());
    out.last_components.push_back(vec.back());
    out.weights.push_back(vec.front() * vec.front());
  }
  return out;
}

std::complex<double> transfer_amplitude(const JacobiChain<double>& c, double t) {
  return end_amplitude(eigensystem_of(c), t);
}

std::vector<std::complex<double>> site_amplitudes(const JacobiChain<double>& c, double t) {
  return amplitudes_from(eigensystem_of(c), t);
}

std::vector<std::vector<double>> chi_values(const MonicRecurrence<double>& r,
                                            std::span<const double> x) {
  r.validate();
  const std::size_t n = r.n();
  std::vector<std::vector<double>> chi(n + 1, std::vector<double>(x.size(), 0.0));
  for (std::size_t s = 0; s < x.size(); ++s) {
    chi[0][s] = 1.0;
    if (n == 0) continue;
    chi[1][s] = (x[s] - r.b[0]) / std::sqrt(r.u[0]);
    for (std::size_t k = 1; k < n; ++k) {
      chi[k + 1][s] =
          ((x[s] - r.b[k]) * chi[k][s] - std::sqrt(r.u[k - 1]) * chi[k - 1][s]) / std::sqrt(r.u[k]);
    }
  }
  return chi;
}

double expansion_check(const JacobiChain<double>& c) {
  const auto es = eigensystem_of(c);
  const std::size_t size = es.values.size();
  const auto& w = es.vectors;  // w[s][n] = W_{sn}
  const auto chi = chi_values(recurrence_of(c), es.values);
  double worst = 0;
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) {
      double rows = 0, cols = 0, ortho = 0;
      for (std::size_t k = 0; k < size; ++k) {
        rows += w[a][k] * w[b][k];
        cols += w[k][a] * w[k][b];
        ortho += w[k][0] * w[k][0] * chi[a][k] * chi[b][k];
      }
      const double delta = a == b ? 1.0 : 0.0;
      worst = std::max({worst, std::fabs(rows - delta), std::fabs(cols - delta),
                        std::fabs(ortho - delta)});
    }
  }
  for (std::size_t s = 0; s < size; ++s) {
    for (std::size_t k = 0; k < size; ++k) {
      worst = std::max(worst, std::fabs(w[s][k] - w[s][0] * chi[k][s]));
    }
  }
  return worst;
}

double persymmetry_residual(const JacobiChain<double>& c) {
  const std::size_t n = c.n();
  if (n == 0) return 0.0;
  const auto j = c.couplings();
  const double scale = *std::max_element(j.begin(), j.end());
  double worst = 0;
  for (std::size_t k = 0; k <= n; ++k) worst = std::max(worst, std::fabs(c.b[k] - c.b[n - k]));
  for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::fabs(j[k] - j[n - 1 - k]));
  return worst / scale;
}

template <class T>
T persymmetry_defect(const JacobiChain<T>& c) {
  const std::size_t n = c.n();
  T worst(0);
  for (std::size_t k = 0; k <= n; ++k) {
    T d = abs_value(T(c.b[k] - c.b[n - k]));
    if (d > worst) worst = d;
  }
  for (std::size_t k = 0; k < n; ++k) {
    T d = abs_value(T(c.u[k] - c.u[n - 1 - k]));
    if (d > worst) worst = d;
  }
  return worst;
}

template Rational persymmetry_defect<Rational>(const JacobiChain<Rational>&);
template double persymmetry_defect<double>(const JacobiChain<double>&);

namespace {

// v_N / v_0 for the eigenvector at lambda, from a twisted factorization of
// J - lambda: top-down pivots d_i give v_i / v_{i+1}, bottom-up pivots e_i
// give v_i / v_{i-1}, and the twist k sits where the two meet with the
// smallest residual gamma_k. Avoids both the forward recurrence and the
// determinant ratio, which lose all accuracy on chains whose couplings span
// many decades.
double end_ratio(std::span<const double> b, std::span<const double> j, double lambda) {
  const std::size_t n = b.size() - 1;
  std::vector<double> d(n + 1), e(n + 1);
  double scale = std::fabs(lambda);
  for (double x : b) scale = std::max(scale, std::fabs(x));
  for (double x : j) scale = std::max(scale, x);
  // an exactly zero pivot is replaced as if lambda had moved by one ulp
  const double pivot_min = std::numeric_limits<double>::epsilon() * scale;
  auto guard = [&](double v) { return v == 0.0 ? pivot_min : v; };
  d[0] = guard(b[0] - lambda);
  for (std::size_t i = 1; i <= n; ++i) d[i] = guard(b[i] - lambda - j[i - 1] * j[i - 1] / d[i - 1]);
  e[n] = guard(b[n] - lambda);
  for (std::size_t i = n; i-- > 0;) e[i] = guard(b[i] - lambda - j[i] * j[i] / e[i + 1]);
  std::size_t k = 0;
  double best = INFINITY;
  for (std::size_t i = 0; i <= n; ++i) {
    const double gamma = std::fabs(d[i] + e[i] - (b[i] - lambda));
    if (gamma < best) {
      best = gamma;
      k = i;
    }
  }
  double log_abs = 0;
  int sign = 1;
  // v_0 / v_k = prod_{i<k} (-J_{i+1} / d_i)
  for (std::size_t i = 0; i < k; ++i) {
    log_abs -= std::log(j[i] / std::fabs(d[i]));
    if (d[i] > 0) sign = -sign;
  }
  // v_N / v_k = prod_{i>k} (-J_i / e_i)
  for (std::size_t i = k + 1; i <= n; ++i) {
    log_abs += std::log(j[i - 1] / std::fabs(e[i]));
    if (e[i] > 0) sign = -sign;
  }
  return sign * std::exp(log_abs);
}

}  // namespace

double sign_condition_residual(const JacobiChain<double>& c) {
  const auto es = eigensystem_of(c);
  const std::size_t n = c.n();
  const auto b = c.fields();
  const auto j = c.couplings();
  double worst = 0;
  for (std::size_t s = 0; s <= n; ++s) {
    // chi_N(x_s) = W_{sN} / W_{s0}
    const double chi = n == 0 ? 1.0 : end_ratio(b, j, es.values[s]);
    const double expected = (n + s) % 2 == 0 ? 1.0 : -1.0;
    worst = std::max(worst, std::fabs(chi - expected));
  }
  return worst;
}

JacobiChain<double> reflect(const JacobiChain<double>& c) {
  JacobiChain<double> out = c;
  std::reverse(out.b.begin(), out.b.end());
  std::reverse(out.u.begin(), out.u.end());
  return out;
}

double dual_weight_residual(const JacobiChain<double>& c) {
  const auto direct = eigensolve(c);
  const auto mirrored = eigensolve(reflect(c));
  const std::size_t size = direct.eigenvalues.size();
  double log_h = 0;
  for (double u : c.u) log_h += std::log(u);
  double worst = 0;
  for (std::size_t s = 0; s < size; ++s) {
    double log_deriv = 0;
    for (std::size_t i = 0; i < size; ++i) {
      if (i != s) log_deriv += std::log(std::fabs(direct.eigenvalues[s] - direct.eigenvalues[i]));
    }
    const double log_lhs =
        std::log(direct.weights[s]) + std::log(mirrored.weights[s]) + 2.0 * log_deriv;
    worst = std::max(worst, std::fabs(std::expm1(log_lhs - log_h)));
  }
  return worst;
}

TransferReport verify(const JacobiChain<double>& c) {
  const auto es = eigensystem_of(c);
  TransferReport r;
  r.time_used = c.time();
  const auto f = end_amplitude(es, r.time_used);
  r.fidelity = std::abs(f);
  r.phase = std::arg(f);
  if (r.phase <= -std::numbers::pi) r.phase += 2 * std::numbers::pi;
  r.persymmetry_residual = persymmetry_residual(c);
  r.sign_condition_residual = sign_condition_residual(c);
  r.dual_weight_residual = dual_weight_residual(c);
  return r;
}

bool is_pst(const TransferReport& r, double tolerance) {
  return r.fidelity >= 1.0 - tolerance && r.persymmetry_residual <= tolerance &&
         r.sign_condition_residual <= tolerance && r.dual_weight_residual <= tolerance;
}

std::vector<CurveSample> fidelity_curve(const JacobiChain<double>& c, std::size_t samples) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "curve needs at least one sample");
  const auto es = eigensystem_of(c);
  const double span = 2.0 * c.time();
  std::vector<CurveSample> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = samples == 1 ? 0.0 : span * static_cast<double>(i) / static_cast<double>(samples - 1);
    out.push_back({t, end_amplitude(es, t)});
  }
  return out;
}

}  // namespace pstforge
