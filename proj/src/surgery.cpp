/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "pstforge/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "pstforge/error.hpp"

namespace pstforge {

namespace {

constexpr double kFloatFieldTolerance = 1e-12;

template <class T>
bool vanishes(const T& v) {
  if constexpr (is_exact_v<T>) {
    return v == 0;
  } else {
    return v == 0.0 || !std::isfinite(v);
  }
}

[[noreturn]] void zero_denominator(std::size_t n) {
  throw Error(ErrorCode::ZeroDenominator,
              "P_" + std::to_string(n) + " vanishes at the removed point",
              static_cast<long>(n));
}

[[noreturn]] void empty_result() {
  throw Error(ErrorCode::EmptyResult, "surgery would remove every level");
}

// Single-point Christoffel transform without the endpoint check. The input
// may be quasi-definite (signed intermediate weights).
template <class T>
MonicRecurrence<T> christoffel_single(const MonicRecurrence<T>& r, const T& x) {
  const std::size_t n = r.n();
  if (n == 0) empty_result();
  auto p = r.monic_values(x);
  p[n + 1] = T(0);  // x is a node of P_{N+1}
  std::vector<T> a(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    if (vanishes(p[k])) zero_denominator(k);
    a[k] = p[k + 1] / p[k];
  }
  MonicRecurrence<T> out;
  out.b.resize(n);
  out.u.resize(n - 1);
  for (std::size_t k = 0; k < n; ++k) out.b[k] = r.b[k + 1] + a[k + 1] - a[k];
  for (std::size_t k = 1; k < n; ++k) {
    if (vanishes(a[k - 1])) zero_denominator(k);
    out.u[k - 1] = r.u[k - 1] * a[k] / a[k - 1];
  }
  return out;
}

template <class T>
bool same_point(const T& a, const T& c, const T& scale) {
  if constexpr (is_exact_v<T>) {
    return a == c;
  } else {
    return std::fabs(a - c) <= 1e-12 * std::max(1.0, scale);
  }
}

}  // namespace

SurgeryKind parse_surgery_kind(std::string_view text) {
  if (text == "remove_edge_low") return SurgeryKind::RemoveEdgeLow;
  if (text == "remove_edge_high") return SurgeryKind::RemoveEdgeHigh;
  if (text == "remove_level") return SurgeryKind::RemoveLevel;
  if (text == "remove_pair") return SurgeryKind::RemovePair;
  if (text == "remove_symmetric_boundary") return SurgeryKind::RemoveSymmetricBoundary;
  if (text == "remove_middle_pair") return SurgeryKind::RemoveMiddlePair;
  throw Error(ErrorCode::InvalidPlan, "unknown surgery kind '" + std::string(text) + "'");
}

const char* to_string(SurgeryKind kind) noexcept {
  switch (kind) {
    case SurgeryKind::RemoveEdgeLow: return "remove_edge_low";
    case SurgeryKind::RemoveEdgeHigh: return "remove_edge_high";
    case SurgeryKind::RemoveLevel: return "remove_level";
    case SurgeryKind::RemovePair: return "remove_pair";
    case SurgeryKind::RemoveSymmetricBoundary: return "remove_symmetric_boundary";
    case SurgeryKind::RemoveMiddlePair: return "remove_middle_pair";
  }
  return "unknown";
}

namespace {

enum class StepKind { Low, High, Pair, SymmetricPair };

struct Step {
  StepKind kind;
  std::size_t j = 0;  // first removed index for pairs
};

// Resolves one repetition of the plan against a support of `size` points.
template <class T>
Step resolve_step(const SurgeryPlan& plan, std::span<const T> x) {
  const std::size_t size = x.size();
  const long n = static_cast<long>(size) - 1;
  auto invalid = [](const std::string& msg) -> Step { throw Error(ErrorCode::InvalidPlan, msg); };
  switch (plan.kind) {
    case SurgeryKind::RemoveEdgeLow:
      if (size < 2) empty_result();
      return {StepKind::Low};
    case SurgeryKind::RemoveEdgeHigh:
      if (size < 2) empty_result();
      return {StepKind::High};
    case SurgeryKind::RemoveLevel:
      if (plan.j < 0 || plan.j > n) return invalid("level index out of range");
      if (size < 2) empty_result();
      if (plan.j == 0) return {StepKind::Low};
      if (plan.j == n) return {StepKind::High};
      throw Error(ErrorCode::InteriorSingleRemoval,
                  "removing the single interior level " + std::to_string(plan.j) +
                      " cannot leave all weights positive; remove an edge level or an adjacent pair",
                  plan.j);
    case SurgeryKind::RemovePair:
      if (plan.j < 0 || plan.j >= n) return invalid("pair index must satisfy 0 <= j <= N-1");
      if (size < 3) empty_result();
      return {StepKind::Pair, static_cast<std::size_t>(plan.j)};
    case SurgeryKind::RemoveSymmetricBoundary:
      if (!is_antisymmetric(x)) return invalid("symmetric boundary removal needs an antisymmetric spectrum");
      if (size < 3) empty_result();
      return {StepKind::SymmetricPair, 0};
    case SurgeryKind::RemoveMiddlePair:
      if (!is_antisymmetric(x)) return invalid("middle pair removal needs an antisymmetric spectrum");
      if (size % 2 != 0) return invalid("middle pair removal needs odd N");
      if (size < 3) empty_result();
      return {StepKind::SymmetricPair, (size - 2) / 2};
  }
  return invalid("unknown surgery kind");
}

template <class T>
DiscreteMeasure<T> measure_step(const DiscreteMeasure<T>& m, const Step& step) {
  const auto& x = m.points();
  const auto& w = m.weights();
  const std::size_t n = x.size() - 1;
  std::vector<T> nx, nw;
  for (std::size_t s = 0; s <= n; ++s) {
    T factor(0);
    switch (step.kind) {
      case StepKind::Low:
        if (s == 0) continue;
        factor = x[s] - x[0];
        break;
      case StepKind::High:
        if (s == n) continue;
        factor = x[n] - x[s];
        break;
      case StepKind::Pair:
        if (s == step.j || s == step.j + 1) continue;
        factor = (x[s] - x[step.j]) * (x[s] - x[step.j + 1]);
        break;
      case StepKind::SymmetricPair:
        if (s == step.j || s == n - step.j) continue;
        // the constant sign (negative for a boundary pair) is normalized away
        factor = x[s] * x[s] - x[step.j] * x[step.j];
        if (step.j == 0) factor = -factor;
        break;
    }
    nx.push_back(x[s]);
    nw.push_back(T(w[s] * factor));
  }
  return DiscreteMeasure<T>(std::move(nx), std::move(nw));
}

template <class T>
MonicRecurrence<T> recurrence_step(const MonicRecurrence<T>& r, const DiscreteMeasure<T>& m,
                                   const Step& step) {
  const auto& x = m.points();
  const std::size_t n = x.size() - 1;
  switch (step.kind) {
    case StepKind::Low:
      return christoffel_chain_update(r, m, x[0]);
    case StepKind::High:
      return christoffel_chain_update(r, m, x[n]);
    case StepKind::SymmetricPair:
      return christoffel_symmetric_update(r, x[step.j]);
    case StepKind::Pair:
      break;
  }
  const T& a = x[step.j];
  const T& c = x[step.j + 1];
  if constexpr (is_exact_v<T>) {
    // Two successive single-point transforms; the intermediate functional is
    // quasi-definite and may have P_n vanishing at the second point.
    try {
      return christoffel_single(christoffel_single(r, a), c);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroDenominator) throw;
    }
    try {
      return christoffel_single(christoffel_single(r, c), a);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroDenominator) throw;
    }
  }
  return christoffel_pair_update(r, a, c);
}

}  // namespace

template <class T>
DiscreteMeasure<T> remove_levels_measure(const DiscreteMeasure<T>& m, const SurgeryPlan& plan) {
  if (plan.repetitions < 1) throw Error(ErrorCode::InvalidPlan, "repetitions must be positive");
  DiscreteMeasure<T> cur = m;
  for (int rep = 0; rep < plan.repetitions; ++rep) {
    cur = measure_step(cur, resolve_step<T>(plan, cur.points()));
  }
  return cur;
}

template <class T>
MonicRecurrence<T> christoffel_chain_update(const MonicRecurrence<T>& r,
                                            const DiscreteMeasure<T>& m,
                                            const T& x_removed) {
  const auto& x = m.points();
  const T scale = std::max(abs_value(x.front()), abs_value(x.back()));
  if (!same_point(x_removed, x.front(), scale) && !same_point(x_removed, x.back(), scale)) {
    throw Error(ErrorCode::InvalidArgument,
                "single-level Christoffel update needs an endpoint of the support");
  }
  if (r.b.size() != m.size()) {
    throw Error(ErrorCode::InvalidArgument, "recurrence and measure sizes differ");
  }
  return christoffel_single(r, x_removed);
}

template <class T>
MonicRecurrence<T> christoffel_symmetric_update(const MonicRecurrence<T>& r, const T& x_pair) {
  const std::size_t n = r.n();
  double scale = 0;
  for (const auto& v : r.u) scale = std::max(scale, std::sqrt(std::fabs(to_double(v))));
  for (std::size_t k = 0; k <= n; ++k) {
    bool zero;
    if constexpr (is_exact_v<T>) zero = r.b[k] == 0;
    else zero = std::fabs(r.b[k]) <= kFloatFieldTolerance * std::max(scale, 1.0);
    if (!zero) {
      throw Error(ErrorCode::NonZeroField, "B_" + std::to_string(k) + " is not zero",
                  static_cast<long>(k));
    }
  }
  if (n < 2) empty_result();
  auto p = r.monic_values(x_pair);
  p[n + 1] = T(0);
  std::vector<T> kn(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (vanishes(p[k])) zero_denominator(k);
    kn[k] = p[k + 2] / p[k];
  }
  MonicRecurrence<T> out;
  out.b.assign(n - 1, T(0));
  out.u.resize(n - 2);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (vanishes(kn[k - 1])) zero_denominator(k);
    out.u[k - 1] = r.u[k - 1] * kn[k] / kn[k - 1];
  }
  return out;
}

template <class T>
MonicRecurrence<T> christoffel_pair_update(const MonicRecurrence<T>& r, const T& a, const T& c) {
  const std::size_t n = r.n();
  if (n < 2) empty_result();
  auto pa = r.monic_values(a);
  auto pc = r.monic_values(c);
  pa[n + 1] = T(0);
  pc[n + 1] = T(0);
  // P~_k (x-a)(x-c) = P_{k+2} + cs_k P_{k+1} + ds_k P_k, vanishing at a and c
  std::vector<T> cs(n), ds(n);
  for (std::size_t k = 0; k < n; ++k) {
    T det = pa[k + 1] * pc[k] - pa[k] * pc[k + 1];
    if (vanishes(det)) zero_denominator(k);
    cs[k] = (pa[k] * pc[k + 2] - pa[k + 2] * pc[k]) / det;
    ds[k] = (pa[k + 2] * pc[k + 1] - pa[k + 1] * pc[k + 2]) / det;
  }
  MonicRecurrence<T> out;
  out.b.resize(n - 1);
  out.u.resize(n - 2);
  for (std::size_t k = 0; k + 1 < n; ++k) out.b[k] = r.b[k + 2] + cs[k] - cs[k + 1];
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (vanishes(ds[k - 1])) zero_denominator(k);
    out.u[k - 1] = r.u[k - 1] * ds[k] / ds[k - 1];
  }
  return out;
}

template <class T>
SurgeryOutcome<T> apply_surgery(const SpectralPair<T>& start, const SurgeryPlan& plan) {
  if (plan.repetitions < 1) throw Error(ErrorCode::InvalidPlan, "repetitions must be positive");
  if (start.recurrence.b.size() != start.measure.size()) {
    throw Error(ErrorCode::InvalidArgument, "recurrence and measure sizes differ");
  }
  DiscreteMeasure<T> measure = start.measure;
  MonicRecurrence<T> closed = start.recurrence;
  MonicRecurrence<T> rebuilt = start.recurrence;
  double worst = 0;
  for (int rep = 0; rep < plan.repetitions; ++rep) {
    const Step step = resolve_step<T>(plan, measure.points());
    DiscreteMeasure<T> next = measure_step(measure, step);
    closed = recurrence_step(closed, measure, step);
    closed.validate();
    rebuilt = reconstruct_stieltjes(next);
    const double d = recurrence_discrepancy(closed, rebuilt);
    bool agree = d <= kAgreementTolerance;
    if constexpr (is_exact_v<T>) agree = closed == rebuilt;
    if (!agree) {
      throw Error(ErrorCode::AlgorithmDisagreement,
                  "Christoffel update and re-reconstruction differ by " + format_double(d),
                  rep);
    }
    worst = std::max(worst, d);
    measure = std::move(next);
  }
  auto adm = check_admissible<T>(measure.points());
  return {std::move(measure), std::move(closed), std::move(rebuilt), std::move(adm), worst};
}

#define PSTFORGE_INSTANTIATE(T)                                                                 \
  template DiscreteMeasure<T> remove_levels_measure<T>(const DiscreteMeasure<T>&,               \
                                                       const SurgeryPlan&);                     \
  template MonicRecurrence<T> christoffel_chain_update<T>(                                      \
      const MonicRecurrence<T>&, const DiscreteMeasure<T>&, const T&);                          \
  template MonicRecurrence<T> christoffel_symmetric_update<T>(const MonicRecurrence<T>&,        \
                                                              const T&);                        \
  template MonicRecurrence<T> christoffel_pair_update<T>(const MonicRecurrence<T>&, const T&,   \
                                                         const T&);                             \
  template SurgeryOutcome<T> apply_surgery<T>(const SpectralPair<T>&, const SurgeryPlan&);

PSTFORGE_INSTANTIATE(Rational)
PSTFORGE_INSTANTIATE(double)
#undef PSTFORGE_INSTANTIATE

}  // namespace pstforge
