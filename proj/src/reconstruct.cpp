/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "pstforge/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "pstforge/error.hpp"

namespace pstforge {

template <class T>
void MonicRecurrence<T>::validate() const {
  if (b.empty() || u.size() + 1 != b.size()) {
    throw Error(ErrorCode::InvalidArgument, "recurrence needs N+1 diagonal and N squared couplings");
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!is_finite(u[i]) || !(u[i] > 0)) {
      throw Error(ErrorCode::NonPositiveU, "U_" + std::to_string(i + 1) + " is not positive",
                  static_cast<long>(i + 1));
    }
  }
}

template <class T>
std::vector<T> MonicRecurrence<T>::monic_values(const T& x) const {
  const std::size_t size = b.size();
  std::vector<T> p(size + 1);
  p[0] = T(1);
  p[1] = x - b[0];
  for (std::size_t k = 1; k < size; ++k) p[k + 1] = (x - b[k]) * p[k] - u[k - 1] * p[k - 1];
  return p;
}

template <class T>
std::vector<double> JacobiChain<T>::couplings() const {
  std::vector<double> j;
  j.reserve(u.size());
  for (const auto& v : u) j.push_back(std::sqrt(to_double(v)));
  return j;
}

template <class T>
std::vector<double> JacobiChain<T>::fields() const {
  std::vector<double> out;
  out.reserve(b.size());
  for (const auto& v : b) out.push_back(to_double(v));
  return out;
}

template <class T>
double JacobiChain<T>::time() const {
  return to_double(time_over_pi) * std::numbers::pi;
}

template <class T>
LagrangeResult<T> lagrange_chi_n(std::span<const T> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "empty spectrum");
  const std::size_t n = points.size() - 1;
  if (n == 0) return {Polynomial<T>::constant(T(1)), Polynomial<T>::constant(T(1))};

  const std::vector<T> roots(points.begin(), points.end());
  const auto node = Polynomial<T>::from_roots(roots);
  Polynomial<T> chi;
  for (std::size_t s = 0; s <= n; ++s) {
    T denom(1);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i != s) denom *= points[s] - points[i];
    }
    T scale = ((n + s) % 2 == 0 ? T(1) : T(-1)) / denom;
    chi += deflate(node, points[s]) * scale;
  }
  if (chi.degree() != static_cast<long>(n) || chi.leading() == 0) {
    throw Error(ErrorCode::DegenerateLeadingCoefficient,
                "interpolating polynomial lost its leading coefficient");
  }
  Polynomial<T> monic = chi;
  monic /= T(chi.leading());
  return {std::move(chi), std::move(monic)};
}

template <class T>
MonicRecurrence<T> reconstruct_euclid_points(std::span<const T> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "empty spectrum");
  require_strictly_increasing(points);
  const std::size_t n = points.size() - 1;
  if (n == 0) return {{points[0]}, {}};

  // The monomial-basis descent is badly conditioned in binary64 once the
  // spectrum spreads out, so float input is run exactly and rounded once.
  if constexpr (!is_exact_v<T>) {
    std::vector<Rational> exact;
    exact.reserve(points.size());
    for (double x : points) exact.push_back(rational_from_double(x));
    return convert_recurrence<double>(reconstruct_euclid_points<Rational>(exact));
  }

  Polynomial<T> upper = Polynomial<T>::from_roots(std::vector<T>(points.begin(), points.end()));
  Polynomial<T> lower = lagrange_chi_n<T>(points).monic;

  MonicRecurrence<T> r;
  r.b.assign(n + 1, T(0));
  r.u.assign(n, T(0));
  for (std::size_t k = n + 1; k-- > 0;) {
    // upper = P_{k+1}, lower = P_k
    auto dm = divmod(upper, lower);
    r.b[k] = -dm.quotient.coeff(0);
    if (k == 0) break;

    const auto& rem = dm.remainder;
    T lead = rem.coeff(k - 1);
    if (rem.degree() != static_cast<long>(k) - 1) {
      throw Error(ErrorCode::ResidueDegreeError,
                  "residue of step " + std::to_string(k) + " lost its degree",
                  static_cast<long>(k));
    }
    T u_k = -lead;
    if (!(u_k > 0)) {
      throw Error(ErrorCode::NonPositiveU, "U_" + std::to_string(k) + " is not positive",
                  static_cast<long>(k));
    }
    r.u[k - 1] = u_k;
    std::vector<T> next = rem.coeffs();
    next.resize(k);
    for (auto& c : next) c /= -u_k;
    next.back() = T(1);
    upper = std::move(lower);
    lower = Polynomial<T>(std::move(next));
  }
  return r;
}

template <class T>
MonicRecurrence<T> reconstruct_euclid(const Spectrum<T>& s) {
  check_admissible<T>(s.points());
  return reconstruct_euclid_points<T>(s.points());
}

namespace {

MonicRecurrence<Rational> stieltjes_exact(const DiscreteMeasure<Rational>& m) {
  const auto& x = m.points();
  const auto& w = m.weights();
  const std::size_t size = m.size();
  MonicRecurrence<Rational> r;
  r.b.resize(size);
  r.u.resize(size - 1);

  std::vector<Rational> prev(size, Rational(0));
  std::vector<Rational> cur(size, Rational(1));
  Rational prev_norm(0);
  for (std::size_t n = 0; n < size; ++n) {
    Rational norm(0), moment(0);
    for (std::size_t s = 0; s < size; ++s) {
      Rational wp2 = w[s] * cur[s] * cur[s];
      norm += wp2;
      moment += wp2 * x[s];
    }
    if (sgn(norm) <= 0) {
      throw Error(ErrorCode::NonPositiveNorm, "<P_" + std::to_string(n) + ", P_" +
                  std::to_string(n) + "> vanished", static_cast<long>(n));
    }
    r.b[n] = moment / norm;
    Rational u_n(0);
    if (n > 0) {
      u_n = norm / prev_norm;
      r.u[n - 1] = u_n;
    }
    if (n + 1 == size) break;
    std::vector<Rational> next(size);
    for (std::size_t s = 0; s < size; ++s) next[s] = (x[s] - r.b[n]) * cur[s] - u_n * prev[s];
    prev = std::move(cur);
    cur = std::move(next);
    prev_norm = norm;
  }
  return r;
}

// Normalized form of the same recurrence: q_n(s) = sqrt(w_s) chi_n(x_s). Each
// new vector is reorthogonalized (twice) against all previous ones.
MonicRecurrence<double> stieltjes_float(const DiscreteMeasure<double>& m) {
  const auto& x = m.points();
  const auto& w = m.weights();
  const std::size_t size = m.size();
  MonicRecurrence<double> r;
  r.b.resize(size);
  r.u.resize(size - 1);

  std::vector<std::vector<double>> basis;
  basis.reserve(size);
  std::vector<double> q(size);
  double norm0 = 0;
  for (std::size_t s = 0; s < size; ++s) {
    q[s] = std::sqrt(w[s]);
    norm0 += w[s];
  }
  for (auto& v : q) v /= std::sqrt(norm0);
  basis.push_back(q);

  double beta_prev = 0;
  for (std::size_t n = 0; n < size; ++n) {
    const auto& qn = basis[n];
    double b_n = 0;
    for (std::size_t s = 0; s < size; ++s) b_n += x[s] * qn[s] * qn[s];
    r.b[n] = b_n;
    if (n + 1 == size) break;

    std::vector<double> next(size);
    for (std::size_t s = 0; s < size; ++s) {
      next[s] = (x[s] - b_n) * qn[s] - (n > 0 ? beta_prev * basis[n - 1][s] : 0.0);
    }
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& v : basis) {
        double dot = 0;
        for (std::size_t s = 0; s < size; ++s) dot += v[s] * next[s];
        for (std::size_t s = 0; s < size; ++s) next[s] -= dot * v[s];
      }
    }
    double beta2 = 0;
    for (double v : next) beta2 += v * v;
    if (!(beta2 > 0) || !std::isfinite(beta2)) {
      throw Error(ErrorCode::NonPositiveNorm,
                  "<P_" + std::to_string(n + 1) + ", P_" + std::to_string(n + 1) +
                      "> vanished; switch to exact mode",
                  static_cast<long>(n + 1));
    }
    const double beta = std::sqrt(beta2);
    r.u[n] = beta2;
    for (auto& v : next) v /= beta;
    basis.push_back(std::move(next));
    beta_prev = beta;
  }
  return r;
}

}  // namespace

template <class T>
MonicRecurrence<T> reconstruct_stieltjes(const DiscreteMeasure<T>& m) {
  if constexpr (is_exact_v<T>) {
    return stieltjes_exact(m);
  } else {
    return stieltjes_float(m);
  }
}

template <class T>
JacobiChain<T> chain_from_recurrence(const MonicRecurrence<T>& r, const T& time_over_pi) {
  r.validate();
  if (!(time_over_pi > 0)) throw Error(ErrorCode::InvalidArgument, "transfer time must be positive");
  return JacobiChain<T>{r.b, r.u, time_over_pi};
}

template <class T>
MonicRecurrence<T> recurrence_of(const JacobiChain<T>& c) {
  return MonicRecurrence<T>{c.b, c.u};
}

template <class T>
JacobiChain<T> affine_map_chain(const JacobiChain<T>& c, const T& alpha, const T& beta) {
  if (!(alpha > 0)) throw Error(ErrorCode::NonPositiveScale, "affine scale must be positive");
  JacobiChain<T> out = c;
  for (auto& v : out.b) v = alpha * v + beta;
  const T alpha2 = alpha * alpha;
  for (auto& v : out.u) v *= alpha2;
  out.time_over_pi = c.time_over_pi / alpha;
  return out;
}

template <class T>
double recurrence_discrepancy(const MonicRecurrence<T>& a, const MonicRecurrence<T>& c) {
  if (a.b.size() != c.b.size() || a.u.size() != c.u.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double max_u = 0, max_b = 0;
  for (const auto* r : {&a, &c}) {
    for (const auto& v : r->u) max_u = std::max(max_u, std::fabs(to_double(v)));
    for (const auto& v : r->b) max_b = std::max(max_b, std::fabs(to_double(v)));
  }
  double scale_b = std::max(max_b, std::sqrt(max_u));
  if (scale_b == 0) scale_b = 1;
  if (max_u == 0) max_u = 1;
  double worst = 0;
  for (std::size_t i = 0; i < a.b.size(); ++i) {
    worst = std::max(worst, to_double(abs_value(T(a.b[i] - c.b[i]))) / scale_b);
  }
  for (std::size_t i = 0; i < a.u.size(); ++i) {
    worst = std::max(worst, to_double(abs_value(T(a.u[i] - c.u[i]))) / max_u);
  }
  return worst;
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "euclid") return Algorithm::Euclid;
  if (text == "stieltjes") return Algorithm::Stieltjes;
  if (text == "both") return Algorithm::Both;
  throw Error(ErrorCode::ParseError,
              "unknown algorithm '" + std::string(text) + "' (expected euclid|stieltjes|both)");
}

const char* to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::Euclid: return "euclid";
    case Algorithm::Stieltjes: return "stieltjes";
    case Algorithm::Both: return "both";
  }
  return "unknown";
}

template <class T>
BuildResult<T> build_chain(const Spectrum<T>& s, Algorithm algorithm) {
  const auto adm = check_admissible<T>(s.points());
  auto measure = inverse_derivative_weights<T>(s.points());
  std::optional<double> discrepancy;
  MonicRecurrence<T> rec;
  switch (algorithm) {
    case Algorithm::Euclid:
      rec = reconstruct_euclid_points<T>(s.points());
      break;
    case Algorithm::Stieltjes:
      rec = reconstruct_stieltjes(measure);
      break;
    case Algorithm::Both: {
      auto euclid = reconstruct_euclid_points<T>(s.points());
      auto stieltjes = reconstruct_stieltjes(measure);
      discrepancy = recurrence_discrepancy(euclid, stieltjes);
      bool agree = *discrepancy <= kAgreementTolerance;
      if constexpr (is_exact_v<T>) agree = euclid == stieltjes;
      if (!agree) {
        throw Error(ErrorCode::AlgorithmDisagreement,
                    "Euclid and Stieltjes reconstructions differ by " + format_double(*discrepancy));
      }
      rec = default_algorithm<T>() == Algorithm::Euclid ? std::move(euclid) : std::move(stieltjes);
      break;
    }
  }
  auto chain = chain_from_recurrence(rec, adm.time_over_pi);
  return {std::move(measure), std::move(rec), std::move(chain), discrepancy};
}

template <class U, class T>
MonicRecurrence<U> convert_recurrence(const MonicRecurrence<T>& r) {
  if constexpr (std::is_same_v<U, T>) {
    return r;
  } else {
    MonicRecurrence<U> out;
    auto conv = [](const T& v) {
      if constexpr (is_exact_v<U>) return rational_from_double(v);
      else return to_double(v);
    };
    for (const auto& v : r.b) out.b.push_back(conv(v));
    for (const auto& v : r.u) out.u.push_back(conv(v));
    return out;
  }
}

template <class U, class T>
JacobiChain<U> convert_chain(const JacobiChain<T>& c) {
  auto rec = convert_recurrence<U>(recurrence_of(c));
  U time;
  if constexpr (std::is_same_v<U, T>) time = c.time_over_pi;
  else if constexpr (is_exact_v<U>) time = rational_from_double(c.time_over_pi);
  else time = to_double(c.time_over_pi);
  return JacobiChain<U>{std::move(rec.b), std::move(rec.u), time};
}

#define PSTFORGE_INSTANTIATE(T)                                                               \
  template struct MonicRecurrence<T>;                                                         \
  template struct JacobiChain<T>;                                                             \
  template LagrangeResult<T> lagrange_chi_n<T>(std::span<const T>);                           \
  template MonicRecurrence<T> reconstruct_euclid<T>(const Spectrum<T>&);                      \
  template MonicRecurrence<T> reconstruct_euclid_points<T>(std::span<const T>);               \
  template MonicRecurrence<T> reconstruct_stieltjes<T>(const DiscreteMeasure<T>&);            \
  template JacobiChain<T> chain_from_recurrence<T>(const MonicRecurrence<T>&, const T&);      \
  template MonicRecurrence<T> recurrence_of<T>(const JacobiChain<T>&);                        \
  template JacobiChain<T> affine_map_chain<T>(const JacobiChain<T>&, const T&, const T&);     \
  template double recurrence_discrepancy<T>(const MonicRecurrence<T>&,                        \
                                            const MonicRecurrence<T>&);                       \
  template BuildResult<T> build_chain<T>(const Spectrum<T>&, Algorithm);

PSTFORGE_INSTANTIATE(Rational)
PSTFORGE_INSTANTIATE(double)
#undef PSTFORGE_INSTANTIATE

template MonicRecurrence<double> convert_recurrence<double, Rational>(const MonicRecurrence<Rational>&);
template MonicRecurrence<Rational> convert_recurrence<Rational, double>(const MonicRecurrence<double>&);
template MonicRecurrence<double> convert_recurrence<double, double>(const MonicRecurrence<double>&);
template MonicRecurrence<Rational> convert_recurrence<Rational, Rational>(const MonicRecurrence<Rational>&);
template JacobiChain<double> convert_chain<double, Rational>(const JacobiChain<Rational>&);
template JacobiChain<Rational> convert_chain<Rational, double>(const JacobiChain<double>&);
template JacobiChain<double> convert_chain<double, double>(const JacobiChain<double>&);
template JacobiChain<Rational> convert_chain<Rational, Rational>(const JacobiChain<Rational>&);

}  // namespace pstforge
