/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pstforge/analysis.hpp"
#include "pstforge/error.hpp"
#include "pstforge/surgery.hpp"

using namespace pstforge;
using oracle::q;
using oracle::qs;

namespace {

std::vector<Rational> rs(std::initializer_list<std::pair<long, long>> v) {
  std::vector<Rational> out;
  for (auto [p, d] : v) out.push_back(q(p, d));
  return out;
}

SpectralPair<Rational> pair_of(const std::vector<Rational>& x) {
  const Spectrum<Rational> s(x, check_admissible<Rational>(x).time_over_pi);
  return {pst_weights(s), reconstruct_euclid(s)};
}

SpectralPair<Rational> uniform(int n) {
  return pair_of(generate<Rational>({FamilyKind::Uniform, n, 0, 0}).points());
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;  // sentinel: nothing thrown
}

const SurgeryPlan kMiddle{SurgeryKind::RemoveMiddlePair, 0, 1};

}  // namespace

TEST_CASE("measure updates") {
  auto m = remove_levels_measure(uniform(5).measure, kMiddle);
  CHECK(m.points() == qs({-2.5, -1.5, 1.5, 2.5}));
  CHECK(m.weights() == rs({{3, 16}, {5, 16}, {5, 16}, {3, 16}}));

  m = remove_levels_measure(uniform(3).measure, kMiddle);
  CHECK(m.points() == qs({-1.5, 1.5}));
  CHECK(m.weights() == rs({{1, 2}, {1, 2}}));

  m = remove_levels_measure(uniform(2).measure, {SurgeryKind::RemoveEdgeLow, 0, 1});
  CHECK(m.points() == qs({0, 1}));
  CHECK(m.weights() == rs({{1, 2}, {1, 2}}));
}

TEST_CASE("single-point transforms") {
  const auto k2 = uniform(2);
  auto r = christoffel_chain_update(k2.recurrence, k2.measure, q(-1));
  CHECK(r.b == rs({{1, 2}, {1, 2}}));
  CHECK(r.u == rs({{1, 4}}));
  CHECK(r == reconstruct_stieltjes(DiscreteMeasure<Rational>(qs({0, 1}), rs({{1, 2}, {1, 2}}))));

  const auto k1 = uniform(1);
  r = christoffel_chain_update(k1.recurrence, k1.measure, q(-1, 2));
  CHECK(r.b == rs({{1, 2}}));
  CHECK(r.u.empty());

  const auto once = apply_surgery(k2, {SurgeryKind::RemoveEdgeLow, 0, 2});
  CHECK(once.closed_form.b == rs({{1, 1}}));
  CHECK(once.closed_form.u.empty());

  CHECK(code_of([&] { christoffel_chain_update(k2.recurrence, k2.measure, q(0)); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("symmetric pair transforms") {
  auto r = christoffel_symmetric_update(uniform(3).recurrence, q(1, 2));
  CHECK(r.b == rs({{0, 1}, {0, 1}}));
  CHECK(r.u == rs({{9, 4}}));

  r = christoffel_symmetric_update(uniform(5).recurrence, q(1, 2));
  const auto sd = eigensolve(convert_chain<double>(chain_from_recurrence(r, q(1))));
  const std::vector<double> expected{-2.5, -1.5, 1.5, 2.5};
  CHECK(oracle::max_rel_diff(sd.eigenvalues, expected) < 1e-12);
  for (const auto& b : r.b) CHECK(b == 0);

  r = christoffel_symmetric_update(uniform(2).recurrence, q(1));
  CHECK(r.b == rs({{0, 1}}));
  CHECK(r.u.empty());
}

TEST_CASE("surgery errors") {
  const auto k4 = uniform(4);
  CHECK(code_of([&] { apply_surgery(k4, {SurgeryKind::RemoveLevel, 2, 1}); }) ==
        ErrorCode::InteriorSingleRemoval);
  CHECK(code_of([&] { remove_levels_measure(k4.measure, {SurgeryKind::RemoveLevel, 1, 1}); }) ==
        ErrorCode::InteriorSingleRemoval);
  CHECK(code_of([&] { apply_surgery(uniform(0), {SurgeryKind::RemoveEdgeHigh, 0, 1}); }) ==
        ErrorCode::EmptyResult);
  CHECK(code_of([&] { apply_surgery(uniform(1), {SurgeryKind::RemovePair, 0, 1}); }) ==
        ErrorCode::EmptyResult);
  CHECK(code_of([&] { apply_surgery(k4, {SurgeryKind::RemoveEdgeLow, 0, 5}); }) ==
        ErrorCode::EmptyResult);
  CHECK(code_of([&] { apply_surgery(k4, {SurgeryKind::RemovePair, 4, 1}); }) == ErrorCode::InvalidPlan);
  CHECK(code_of([&] { apply_surgery(k4, {SurgeryKind::RemoveEdgeLow, 0, 0}); }) == ErrorCode::InvalidPlan);
  CHECK(code_of([&] { apply_surgery(k4, kMiddle); }) == ErrorCode::InvalidPlan);
  CHECK(code_of([&] { apply_surgery(pair_of(qs({0, 1, 2})), {SurgeryKind::RemoveSymmetricBoundary, 0, 1}); }) ==
        ErrorCode::InvalidPlan);
  // P_1(0) = 0 on a zero-field chain
  CHECK(code_of([&] { christoffel_symmetric_update(k4.recurrence, q(0)); }) == ErrorCode::ZeroDenominator);
  const auto shifted = pair_of(qs({0, 1, 2}));
  CHECK(code_of([&] { christoffel_symmetric_update(shifted.recurrence, q(1)); }) == ErrorCode::NonZeroField);
  CHECK(parse_surgery_kind("remove_pair") == SurgeryKind::RemovePair);
  CHECK(code_of([] { parse_surgery_kind("remove_everything"); }) == ErrorCode::InvalidPlan);
}

TEST_CASE("removing the centre level pair from a symmetric grid") {
  // removing 0 first makes P_n vanish in the intermediate step
  const auto out = apply_surgery(uniform(4), {SurgeryKind::RemovePair, 1, 1});
  CHECK(out.measure.points() == qs({-2, 1, 2}));
  CHECK(out.closed_form == reconstruct_euclid_points<Rational>(qs({-2, 1, 2})));
}

TEST_CASE("property: random surgeries keep admissibility, agree with rebuilds and keep PST") {
  std::mt19937_64 rng(51);
  int performed = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto cur = pair_of(oracle::random_admissible(rng, 11));
    for (int step = 0; step < 4; ++step) {
      const std::size_t size = cur.measure.size();
      if (size < 2) break;
      SurgeryPlan plan;
      switch (rng() % 4) {
        case 0: plan = {SurgeryKind::RemoveEdgeLow, 0, 1}; break;
        case 1: plan = {SurgeryKind::RemoveEdgeHigh, 0, 1}; break;
        case 2:
          if (size < 4) continue;
          plan = {SurgeryKind::RemovePair, static_cast<int>(rng() % (size - 1)), 1};
          break;
        default:
          if (size < 4 || !is_antisymmetric<Rational>(cur.measure.points())) continue;
          plan = {SurgeryKind::RemoveSymmetricBoundary, 0, 1};
      }
      const auto out = apply_surgery(cur, plan);
      ++performed;
      // admissible, with the direct construction's weights and chain
      const Spectrum<Rational> direct(out.measure.points(), out.admissibility.time_over_pi);
      CHECK(pst_weights(direct) == out.measure);
      CHECK(reconstruct_euclid(direct) == out.closed_form);
      CHECK(out.closed_form == out.rebuilt);
      if (plan.kind == SurgeryKind::RemoveSymmetricBoundary) {
        for (const auto& b : out.closed_form.b) CHECK(b == 0);
      }
      const auto chain =
          convert_chain<double>(chain_from_recurrence(out.closed_form, out.admissibility.time_over_pi));
      CHECK(verify(chain).fidelity >= 1 - 1e-10);
      cur = {out.measure, out.closed_form};
    }
  }
  CHECK(performed > 300);
}

TEST_CASE("property: float surgery tracks exact surgery") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    const auto exact = pair_of(oracle::random_admissible(rng, 10));
    if (exact.measure.size() < 4) continue;
    const SpectralPair<double> fl{convert_measure<double>(exact.measure),
                                  convert_recurrence<double>(exact.recurrence)};
    const SurgeryPlan plan{SurgeryKind::RemovePair, static_cast<int>(rng() % (exact.measure.size() - 1)), 1};
    const auto oe = apply_surgery(exact, plan);
    const auto of = apply_surgery(fl, plan);
    CHECK(of.discrepancy <= 1e-8);
    CHECK(recurrence_discrepancy(of.closed_form, convert_recurrence<double>(oe.closed_form)) < 1e-8);
  }
}

TEST_CASE("repetitions iterate the plan") {
  const auto out = apply_surgery(uniform(9), {SurgeryKind::RemoveMiddlePair, 0, 3});
  CHECK(out.measure.points() == generate<Rational>({FamilyKind::Gapped, 9, 0, 3}).points());
  const auto sym = apply_surgery(uniform(6), {SurgeryKind::RemoveSymmetricBoundary, 0, 2});
  CHECK(sym.measure.points() == qs({-1, 0, 1}));
  // the middle of the grid keeps its unit spacing, so T stays pi
  CHECK(sym.admissibility.time_over_pi == 1);
}
