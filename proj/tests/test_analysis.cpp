/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pstforge/analysis.hpp"

using namespace pstforge;
using oracle::q;

namespace {

JacobiChain<double> chain(std::vector<double> b, std::vector<double> j, double time_over_pi = 1) {
  JacobiChain<double> c;
  c.b = std::move(b);
  for (double x : j) c.u.push_back(x * x);
  c.time_over_pi = time_over_pi;
  return c;
}

JacobiChain<double> built(const SpectrumFamily& f) {
  return convert_chain<double>(build_chain(generate<Rational>(f), Algorithm::Euclid).chain);
}

const SpectrumFamily kK2{FamilyKind::Uniform, 2, 0, 0};
const SpectrumFamily kK4{FamilyKind::Uniform, 4, 0, 0};
const SpectrumFamily kHyp44{FamilyKind::Hyperbolic, 4, 4, 0};

}  // namespace

TEST_CASE("spectral data of small chains") {
  auto sd = eigensolve(chain({0, 0}, {0.5}));
  CHECK(sd.eigenvalues[0] == doctest::Approx(-0.5));
  CHECK(sd.eigenvalues[1] == doctest::Approx(0.5));
  CHECK(sd.weights[0] == doctest::Approx(0.5));
  CHECK(sd.weights[1] == doctest::Approx(0.5));

  sd = eigensolve(built(kK2));
  const std::vector<double> x{-1, 0, 1}, w{0.25, 0.5, 0.25};
  CHECK(oracle::max_rel_diff(sd.eigenvalues, x) < 1e-14);
  CHECK(oracle::max_rel_diff(sd.weights, w) < 1e-14);

  sd = eigensolve(chain({3.5}, {}));
  CHECK(sd.eigenvalues == std::vector<double>{3.5});
  CHECK(sd.weights == std::vector<double>{1.0});
}

TEST_CASE("transfer amplitude") {
  CHECK(std::abs(transfer_amplitude(built(kK2), M_PI)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(transfer_amplitude(built(kK4), 0.0)) < 1e-15);
  const auto single = chain({0.7}, {});
  const auto f = transfer_amplitude(single, 2.0);
  CHECK(f.real() == doctest::Approx(std::cos(1.4)));
  CHECK(f.imag() == doctest::Approx(std::sin(1.4)));
}

TEST_CASE("verification reports") {
  auto r = verify(built(kK4));
  CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.persymmetry_residual <= 1e-12);
  CHECK(is_pst(r));

  r = verify(built(kHyp44));
  CHECK(r.fidelity >= 1 - 1e-10);
  CHECK(r.persymmetry_residual <= 1e-10);
  CHECK(r.sign_condition_residual <= 1e-10);
  CHECK(r.dual_weight_residual <= 1e-10);

  // spacing 1 at T = pi/2 is not an odd multiple of pi/T; |f| = sin(J T)
  r = verify(chain({0, 0}, {0.5}, 0.5));
  CHECK(r.fidelity == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK_FALSE(is_pst(r));

  r = verify(chain({1.25}, {}));
  CHECK(r.fidelity == 1.0);
  CHECK(is_pst(r));
}

TEST_CASE("orthonormal polynomial values") {
  const auto c = built(kK2);
  const std::vector<double> x{-1, 0, 1};
  const auto chi = chi_values(recurrence_of(c), x);
  CHECK(chi[2][0] == doctest::Approx(1.0));
  CHECK(chi[2][1] == doctest::Approx(-1.0));
  CHECK(chi[2][2] == doctest::Approx(1.0));
  for (double v : chi[0]) CHECK(v == 1.0);
  const auto shifted = chain({0.3, -0.2}, {0.8});
  const std::vector<double> at_b0{0.3};
  CHECK(chi_values(recurrence_of(shifted), at_b0)[1][0] == 0.0);
  CHECK(sign_condition_residual(c) < 1e-12);
}

TEST_CASE("dual weight identity on small chains") {
  CHECK(dual_weight_residual(built(kK2)) <= 1e-12);
  CHECK(dual_weight_residual(built(kHyp44)) <= 1e-10);
  CHECK(dual_weight_residual(chain({2.0}, {})) == 0.0);
}

TEST_CASE("persymmetry residual") {
  CHECK(persymmetry_residual(chain({1, 2, 1}, {0.5, 0.5})) == 0.0);
  CHECK(persymmetry_residual(chain({1, 2, 1.5}, {0.5, 0.5})) == doctest::Approx(1.0));
  CHECK(persymmetry_defect(build_chain(generate<Rational>(kHyp44), Algorithm::Euclid).chain) == 0);
  JacobiChain<Rational> skew{{q(0), q(0)}, {q(1)}, q(1)};
  CHECK(persymmetry_defect(skew) == 0);
  skew.b[1] = q(1, 3);
  CHECK(persymmetry_defect(skew) == q(1, 3));
  CHECK(reflect(chain({1, 2, 3}, {0.5, 0.7})).b == std::vector<double>{3, 2, 1});
}

TEST_CASE("fidelity curve") {
  const auto c = built(kK4);
  const auto curve = fidelity_curve(c, 513);
  REQUIRE(curve.size() == 513);
  CHECK(curve.front().t == 0.0);
  CHECK(curve.back().t == doctest::Approx(2 * M_PI));
  CHECK(curve[256].t == doctest::Approx(M_PI));
  CHECK(std::abs(curve[256].amplitude) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(curve.front().amplitude) < 1e-15);
  CHECK_THROWS(fidelity_curve(c, 0));
}

TEST_CASE("property: eigensolver against Eigen") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = oracle::random_chain(rng, 20);
    const auto es = tridiagonal_eigensystem(c.fields(), c.couplings());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(oracle::dense(c));
    const auto n = es.values.size();
    for (std::size_t s = 0; s < n; ++s) {
      CHECK(es.values[s] == doctest::Approx(ref.eigenvalues()(s)).epsilon(1e-12).scale(4));
      CHECK(es.vectors[s][0] >= 0);
      double dot = 0;
      for (std::size_t k = 0; k < n; ++k) dot += es.vectors[s][k] * ref.eigenvectors()(k, s);
      CHECK(std::fabs(dot) == doctest::Approx(1.0).epsilon(1e-10));
    }
    if (n <= 6) CHECK(expansion_check(c) < 1e-9);
  }
}

TEST_CASE("property: amplitudes against the matrix exponential") {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> time(0.0, 6.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = oracle::random_chain(rng, 12);
    const double t = time(rng);
    const auto u = oracle::propagator(c, t);
    const auto amps = site_amplitudes(c, t);
    double total = 0;
    for (std::size_t k = 0; k < amps.size(); ++k) {
      CHECK(std::abs(amps[k] - u(static_cast<Eigen::Index>(k), 0)) < 1e-10);
      total += std::norm(amps[k]);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(transfer_amplitude(c, t)) <= 1 + 1e-12);
  }
}

TEST_CASE("property: PST chains return home after 2T") {
  for (int n = 1; n <= 16; ++n) {
    for (const auto& c : {built({FamilyKind::Uniform, n, 0, 0}),
                          built({FamilyKind::Hyperbolic, n, n % 2 == 0 ? 4 : 6, 0})}) {
      const auto amps = site_amplitudes(c, 2 * c.time());
      CHECK(std::abs(amps.front()) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("property: dual weight identity holds for arbitrary chains") {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = oracle::random_chain(rng, 16);
    CHECK(dual_weight_residual(c) <= 1e-8);
  }
}

TEST_CASE("property: built chains pass every check") {
  for (int n = 0; n <= 16; ++n) {
    std::vector<SpectrumFamily> fams{{FamilyKind::Uniform, n, 0, 0},
                                     {FamilyKind::Hyperbolic, n, n % 2 == 0 ? 6 : 10, 0}};
    for (int l = 0; n % 2 == 1 && 2 * l < n - 1; ++l) fams.push_back({FamilyKind::Gapped, n, 0, l});
    for (const auto& f : fams) {
      const auto r = verify(built(f));
      CAPTURE(n);
      CHECK(r.fidelity >= 1 - 1e-10);
      CHECK(r.persymmetry_residual <= 1e-10);
      CHECK(r.sign_condition_residual <= 1e-10);
      CHECK(r.dual_weight_residual <= 1e-10);
    }
  }
}

TEST_CASE("perturbing one coupling breaks the transfer") {
  auto c = built(kK4);
  c.u[1] *= 1.01 * 1.01;
  const auto r = verify(c);
  CHECK(r.fidelity < 1 - 1e-6);
  CHECK_FALSE(is_pst(r));
}
