/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "pstforge/selftest.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <deque>
#include <random>
#include <sstream>
#include <unordered_set>

#include "pstforge/analysis.hpp"
#include "pstforge/error.hpp"
#include "pstforge/measure.hpp"
#include "pstforge/reconstruct.hpp"
#include "pstforge/spectrum.hpp"
#include "pstforge/surgery.hpp"

namespace pstforge {

namespace {

// Thresholds, one per criterion where they differ.
constexpr double kClosedFormFloatTol = 1e-10;   // 1
constexpr double kHyperbolicTol = 1e-9;         // 2
constexpr double kFidelityTol = 1e-10;          // 3, 8
constexpr double kPersymmetryFloatTol = 1e-10;  // 4
constexpr double kSignTol = 1e-8;               // 5
constexpr double kAgreementTol = 1e-8;          // 6
constexpr double kRoundTripTol = 1e-8;          // 7
constexpr double kSpectrumTol = 1e-10;          // 8
constexpr double kDualWeightTol = 1e-8;         // 10

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void fail(const std::string& what) {
    if (passed) detail << what;
    passed = false;
  }
};

std::string describe(const SpectrumFamily& f) {
  std::ostringstream os;
  os << to_string(f.kind) << " N=" << f.n;
  if (f.kind == FamilyKind::Hyperbolic) os << " K=" << f.k;
  if (f.kind == FamilyKind::Gapped) os << " L=" << f.l;
  return os.str();
}

// Every generated family member with n <= max_n; hyperbolic uses the two
// smallest admissible K per parity.
std::vector<SpectrumFamily> families_up_to(int max_n) {
  std::vector<SpectrumFamily> out;
  for (int n = 0; n <= max_n; ++n) {
    out.push_back({FamilyKind::Uniform, n, 0, 0});
    for (int k : n % 2 == 0 ? std::vector<int>{4, 6} : std::vector<int>{6, 10}) {
      out.push_back({FamilyKind::Hyperbolic, n, k, 0});
    }
    if (n % 2 == 1) {
      for (int l = 0; 2 * l < n - 1; ++l) out.push_back({FamilyKind::Gapped, n, 0, l});
    }
  }
  return out;
}

double relative_gap(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

// 1: U_n = n(N+1-n)/4, B_n = 0 on the uniform grid
void krawtchouk(Outcome& o) {
  double worst_float = 0;
  for (int n = 1; n <= 10; ++n) {
    const SpectrumFamily fam{FamilyKind::Uniform, n, 0, 0};
    const auto exact = build_chain(generate<Rational>(fam), Algorithm::Euclid).chain;
    for (int k = 1; k <= n; ++k) {
      Rational closed(k * (n + 1 - k), 4);
      closed.canonicalize();
      if (exact.u[k - 1] != closed) o.fail("exact U mismatch at " + describe(fam));
    }
    for (const auto& b : exact.b) {
      if (b != 0) o.fail("exact B nonzero at " + describe(fam));
    }
    for (auto algo : {Algorithm::Stieltjes, Algorithm::Euclid}) {
      const auto fl = build_chain(generate<double>(fam), algo).chain;
      const double scale = std::sqrt(max_abs(fl.u));
      for (int k = 1; k <= n; ++k) {
        worst_float = std::max(worst_float, relative_gap(fl.u[k - 1], k * (n + 1.0 - k) / 4.0));
      }
      worst_float = std::max(worst_float, max_abs(fl.b) / scale);
    }
  }
  if (worst_float > kClosedFormFloatTol) o.fail("float mismatch ");
  o.detail << "N=1..10 exact bit-equal; float worst rel " << worst_float;
}

// 2: q-Racah couplings on the hyperbolic grid
void hyperbolic(Outcome& o) {
  double worst = 0;
  const std::vector<std::pair<int, int>> cases{{4, 4}, {4, 6}, {6, 4}, {3, 6}, {5, 6}};
  for (auto [n, k] : cases) {
    const SpectrumFamily fam{FamilyKind::Hyperbolic, n, k, 0};
    const auto spec = generate<Rational>(fam);
    const auto chain = build_chain(spec, Algorithm::Euclid).chain;
    const double q = (k - std::sqrt(static_cast<double>(k) * k - 4.0)) / 2.0;
    // unit central step: A(q^-1 - q) = 1 for even N, 2A(q^-1/2 - q^1/2) = 1 for odd N
    const double a2 = n % 2 == 0 ? 1.0 / (k * k - 4.0) : 1.0 / (4.0 * (k - 2.0));
    const double a = std::sqrt(a2);
    for (int s = 0; s <= n; ++s) {
      const double x = a * (std::pow(q, -s + n / 2.0) - std::pow(q, -n / 2.0 + s));
      const double got = to_double(spec.points()[s]);
      if (std::fabs(x - got) > 1e-12 * std::max(1.0, std::fabs(got))) {
        o.fail("closed-form grid mismatch at " + describe(fam));
      }
    }
    for (int m = 1; m <= n; ++m) {
      const double closed = a2 * (1 - std::pow(q, 2 * m)) * (std::pow(q, 2 * (m - n - 1)) - 1) /
                            ((1 + std::pow(q, 2 * m - n - 2)) * (1 + std::pow(q, 2 * m - n)));
      worst = std::max(worst, relative_gap(to_double(chain.u[m - 1]), closed));
      if (chain.u[m - 1] != chain.u[n - m]) o.fail("mirror symmetry broken at " + describe(fam));
    }
    for (const auto& b : chain.b) {
      if (b != 0) o.fail("nonzero field at " + describe(fam));
    }
  }
  if (worst > kHyperbolicTol) o.fail("closed-form U mismatch ");
  o.detail << "5 cases; worst rel " << worst;
}

// 3: |f(T)| and probability conservation
void fidelity(Outcome& o) {
  double worst_deficit = 0, worst_prob = 0;
  std::size_t count = 0;
  for (const auto& fam : families_up_to(16)) {
    std::vector<JacobiChain<double>> chains{
        convert_chain<double>(build_chain(generate<Rational>(fam), Algorithm::Euclid).chain)};
    if (fam.kind != FamilyKind::Hyperbolic) {
      chains.push_back(build_chain(generate<double>(fam), Algorithm::Stieltjes).chain);
    }
    for (const auto& c : chains) {
      ++count;
      const double t = c.time();
      const double deficit = 1.0 - std::abs(transfer_amplitude(c, t));
      double total = 0;
      for (const auto& amp : site_amplitudes(c, t)) total += std::norm(amp);
      worst_deficit = std::max(worst_deficit, deficit);
      worst_prob = std::max(worst_prob, std::fabs(total - 1.0));
      if (deficit > kFidelityTol || std::fabs(total - 1.0) > kFidelityTol) {
        o.fail("transfer failed at " + describe(fam) + "; ");
      }
    }
  }
  o.detail << count << " chains; worst deficit " << worst_deficit << ", worst prob sum gap "
           << worst_prob;
}

// 4: mirror symmetry emerges from the weights alone
void persymmetry(Outcome& o) {
  std::size_t exact_count = 0, float_count = 0;
  for (const auto& fam : families_up_to(16)) {
    const auto chain = build_chain(generate<Rational>(fam), Algorithm::Euclid).chain;
    if (persymmetry_defect(chain) != 0) o.fail("exact defect at " + describe(fam) + "; ");
    ++exact_count;
  }
  double worst = 0;
  for (const auto& fam : families_up_to(32)) {
    if (fam.kind == FamilyKind::Hyperbolic && fam.n > 16) continue;
    const auto chain = build_chain(generate<double>(fam), Algorithm::Stieltjes).chain;
    const double r = persymmetry_residual(chain);
    worst = std::max(worst, r);
    if (r > kPersymmetryFloatTol) o.fail("float residual at " + describe(fam) + "; ");
    ++float_count;
  }
  // the same construction path applied to a non-PST measure must not
  // produce a mirror-symmetric chain
  const DiscreteMeasure<Rational> skewed({Rational(-1), Rational(0), Rational(1)},
                                         {Rational(1), Rational(1), Rational(2)});
  const auto skew_chain = chain_from_recurrence(reconstruct_stieltjes(skewed), Rational(1));
  if (persymmetry_defect(skew_chain) == 0) o.fail("construction imposes persymmetry; ");
  o.detail << exact_count << " exact chains with zero defect; " << float_count
           << " float chains, worst " << worst;
}

// 5: chi_N(x_s) = (-1)^{N+s}
void sign_condition(Outcome& o) {
  double worst = 0;
  for (const auto& fam : families_up_to(16)) {
    const auto c =
        convert_chain<double>(build_chain(generate<Rational>(fam), Algorithm::Euclid).chain);
    const double r = sign_condition_residual(c);
    worst = std::max(worst, r);
    if (r > kSignTol) o.fail("sign condition at " + describe(fam) + "; ");
  }
  o.detail << "worst " << worst;
}

// 6: Euclid vs Stieltjes
void cross_agreement(Outcome& o) {
  double worst = 0;
  std::size_t exact_count = 0;
  for (const auto& fam : families_up_to(12)) {
    const auto s = generate<double>(fam);
    const double d =
        recurrence_discrepancy(reconstruct_euclid(s), reconstruct_stieltjes(pst_weights(s)));
    worst = std::max(worst, d);
    if (d > kAgreementTol) o.fail("float disagreement at " + describe(fam) + "; ");
  }
  for (const auto& fam : families_up_to(20)) {
    if (fam.kind == FamilyKind::Hyperbolic && fam.k != (fam.n % 2 == 0 ? 4 : 6)) continue;
    const auto s = generate<Rational>(fam);
    if (reconstruct_euclid(s) != reconstruct_stieltjes(pst_weights(s))) {
      o.fail("exact disagreement at " + describe(fam) + "; ");
    }
    ++exact_count;
  }
  o.detail << "float worst " << worst << "; " << exact_count << " exact cases bit-equal";
}

// 7: chain -> spectral data -> chain
void round_trip(Outcome& o) {
  double worst = 0;
  std::mt19937_64 rng(20260101);
  std::vector<JacobiChain<double>> chains;
  for (const auto& fam : families_up_to(16)) {
    if (fam.kind == FamilyKind::Hyperbolic && fam.n > 10) continue;
    chains.push_back(
        convert_chain<double>(build_chain(generate<Rational>(fam), Algorithm::Euclid).chain));
  }
  std::uniform_real_distribution<double> coupling(0.3, 2.0), field(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const int n = static_cast<int>(rng() % 17);
    JacobiChain<double> c;
    for (int k = 0; k <= n; ++k) c.b.push_back(field(rng));
    for (int k = 0; k < n; ++k) c.u.push_back(std::pow(coupling(rng), 2));
    chains.push_back(c);
  }
  for (const auto& c : chains) {
    const auto sd = eigensolve(c);
    const DiscreteMeasure<double> m(sd.eigenvalues, sd.weights);
    const auto rebuilt = chain_from_recurrence(reconstruct_stieltjes(m), c.time_over_pi);
    const double d = recurrence_discrepancy(recurrence_of(c), recurrence_of(rebuilt));
    worst = std::max(worst, d);
    if (d > kRoundTripTol) o.fail("round trip drift; ");
  }
  o.detail << chains.size() << " chains; worst " << worst;
}

double spectrum_gap(const JacobiChain<double>& c, const Spectrum<Rational>& expected) {
  const auto sd = eigensolve(c);
  if (sd.eigenvalues.size() != expected.points().size()) return INFINITY;
  double worst = 0;
  for (std::size_t s = 0; s < sd.eigenvalues.size(); ++s) {
    worst = std::max(worst, std::fabs(sd.eigenvalues[s] - to_double(expected.points()[s])));
  }
  return worst;
}

// 8: middle-pair surgery on the uniform chain gives the gapped chain
void surgery_consistency(Outcome& o) {
  const SurgeryPlan middle{SurgeryKind::RemoveMiddlePair, 0, 1};
  {
    const auto spec = generate<Rational>({FamilyKind::Uniform, 5, 0, 0});
    const auto built = build_chain(spec, Algorithm::Euclid);
    const auto out = apply_surgery<Rational>({built.measure, built.recurrence}, middle);
    if (out.closed_form != out.rebuilt) o.fail("closed form differs from rebuild; ");
    const auto chain =
        convert_chain<double>(chain_from_recurrence(out.closed_form, out.admissibility.time_over_pi));
    const double gap = spectrum_gap(chain, generate<Rational>({FamilyKind::Gapped, 5, 0, 1}));
    const auto rep = verify(chain);
    if (gap > kSpectrumTol) o.fail("spectrum differs from the gapped grid; ");
    if (rep.fidelity < 1 - kFidelityTol) o.fail("fidelity lost; ");
    o.detail << "N=5: spectrum gap " << gap << ", deficit " << 1 - rep.fidelity << "; ";
  }
  // N = 9 down to two levels
  auto spec = generate<Rational>({FamilyKind::Uniform, 9, 0, 0});
  auto built = build_chain(spec, Algorithm::Euclid);
  SpectralPair<Rational> cur{built.measure, built.recurrence};
  int steps = 0;
  double worst = 0;
  for (int l = 1; l <= 4; ++l) {
    const auto out = apply_surgery(cur, middle);
    const auto chain =
        convert_chain<double>(chain_from_recurrence(out.closed_form, out.admissibility.time_over_pi));
    const auto rep = verify(chain);
    // the generator stops at l < (N-1)/2; the last step is {-9/2, 9/2}
    const auto expected = l < 4 ? generate<Rational>({FamilyKind::Gapped, 9, 0, l})
                                : Spectrum<Rational>({Rational(-9, 2), Rational(9, 2)}, Rational(1));
    const double gap = spectrum_gap(chain, expected);
    worst = std::max({worst, 1 - rep.fidelity, rep.persymmetry_residual, rep.sign_condition_residual,
                      rep.dual_weight_residual, gap});
    if (out.closed_form != out.rebuilt) o.fail("N=9 closed form differs from rebuild; ");
    if (!is_pst(rep, kFidelityTol) || gap > kSpectrumTol) {
      o.fail("N=9 step " + std::to_string(l) + " lost PST; ");
    }
    cur = {out.measure, out.closed_form};
    ++steps;
  }
  o.detail << "N=9: " << steps << " steps, worst residual " << worst;
}

// 9: exhaustive edge/pair surgery on the grid {-6..6}
void universality(Outcome& o) {
  constexpr int kGrid = 13;
  auto points_of = [](std::uint32_t mask) {
    std::vector<Rational> x;
    for (int i = 0; i < kGrid; ++i) {
      if (mask & (1u << i)) x.emplace_back(i - 6);
    }
    return x;
  };
  const std::uint32_t full = (1u << kGrid) - 1;
  const auto grid = points_of(full);
  const Spectrum<Rational> start(grid, Rational(1));
  SpectralPair<Rational> root{pst_weights(start), reconstruct_euclid(start)};

  std::deque<std::pair<std::uint32_t, SpectralPair<Rational>>> queue;
  std::unordered_set<std::uint32_t> seen{full};
  queue.emplace_back(full, root);
  std::size_t checked = 0;
  while (!queue.empty()) {
    auto [mask, pair] = std::move(queue.front());
    queue.pop_front();
    const int size = std::popcount(mask);
    if (size <= 2) continue;
    std::vector<int> idx;
    for (int i = 0; i < kGrid; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    std::vector<std::pair<std::uint32_t, SurgeryPlan>> moves{
        {mask & ~(1u << idx.front()), {SurgeryKind::RemoveEdgeLow, 0, 1}},
        {mask & ~(1u << idx.back()), {SurgeryKind::RemoveEdgeHigh, 0, 1}}};
    if (size >= 4) {
      for (int j = 0; j + 1 < size; ++j) {
        moves.push_back({mask & ~(1u << idx[j]) & ~(1u << idx[j + 1]), {SurgeryKind::RemovePair, j, 1}});
      }
    }
    for (const auto& [child, plan] : moves) {
      if (!seen.insert(child).second) continue;
      const auto out = apply_surgery(pair, plan);
      const Spectrum<Rational> direct(points_of(child), Rational(1));
      if (out.closed_form != reconstruct_euclid(direct)) {
        o.fail("surgery chain differs from direct reconstruction; ");
      }
      if (out.measure != pst_weights(direct)) o.fail("surgery weights differ from PST weights; ");
      ++checked;
      queue.emplace_back(child, SpectralPair<Rational>{out.measure, out.closed_form});
    }
  }
  // every subset with odd consecutive gaps must have been reached
  std::size_t admissible = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (std::popcount(mask) < 2) continue;
    int last = -1;
    bool odd_gaps = true;
    for (int i = 0; i < kGrid; ++i) {
      if (!(mask & (1u << i))) continue;
      if (last >= 0 && (i - last) % 2 == 0) odd_gaps = false;
      last = i;
    }
    if (!odd_gaps) continue;
    ++admissible;
    if (!seen.count(mask)) o.fail("admissible subset not reachable by surgery; ");
  }
  o.detail << checked << " reachable spectra compared bit-exactly; " << admissible
           << " odd-gap subsets, all reached";
}

// 10: w_s w*_s P'_{N+1}(x_s)^2 = h_N on random chains
void dual_weight(Outcome& o) {
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> coupling(0.2, 2.0), field(-1.0, 1.0);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = static_cast<int>(rng() % 13);
    JacobiChain<double> c;
    for (int k = 0; k <= n; ++k) c.b.push_back(field(rng));
    for (int k = 0; k < n; ++k) c.u.push_back(std::pow(coupling(rng), 2));
    const double r = dual_weight_residual(c);
    worst = std::max(worst, r);
    if (r > kDualWeightTol) o.fail("identity violated; ");
  }
  o.detail << "100 random chains; worst " << worst;
}

struct Criterion {
  const char* title;
  void (*run)(Outcome&);
};

constexpr Criterion kCriteria[] = {
    {"Krawtchouk closed form", krawtchouk},
    {"Hyperbolic closed form", hyperbolic},
    {"PST fidelity", fidelity},
    {"Emergent persymmetry", persymmetry},
    {"Sign condition", sign_condition},
    {"Euclid/Stieltjes agreement", cross_agreement},
    {"Round trip", round_trip},
    {"Surgery consistency", surgery_consistency},
    {"Desk-scale universality", universality},
    {"Dual-weight identity", dual_weight},
};

}  // namespace

int acceptance_criterion_count() { return static_cast<int>(std::size(kCriteria)); }

CriterionResult run_criterion(int id) {
  if (id < 1 || id > acceptance_criterion_count()) {
    throw Error(ErrorCode::InvalidArgument, "no acceptance criterion " + std::to_string(id));
  }
  const auto& c = kCriteria[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = c.title;
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.run(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.passed = o.passed;
  r.detail = o.detail.str();
  return r;
}

std::vector<CriterionResult> run_acceptance(const CriterionCallback& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= acceptance_criterion_count(); ++id) {
    out.push_back(run_criterion(id));
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace pstforge
