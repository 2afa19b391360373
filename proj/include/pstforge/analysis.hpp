/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "pstforge/reconstruct.hpp"

namespace pstforge {

/// Eigenpairs of a symmetric tridiagonal matrix, eigenvalues ascending.
/// vectors[s][n] is component n of eigenvector s, signed so that
/// vectors[s][0] >= 0.
struct Eigensystem {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
};

/// Implicit-shift QL on the tridiagonal matrix with the given diagonal and
/// off-diagonal (off_diagonal[i] couples i and i+1). Throws
/// ConvergenceFailure (index = eigenvalue) after 60 sweeps on one value.
Eigensystem tridiagonal_eigensystem(std::span<const double> diagonal,
                                    std::span<const double> off_diagonal);

struct SpectralData {
  std::vector<double> eigenvalues;
  std::vector<double> first_components;  // W_{s0} > 0
  std::vector<double> last_components;   // W_{sN}
  std::vector<double> weights;           // W_{s0}^2
};

SpectralData eigensolve(const JacobiChain<double>& c);

/// (e_N| exp(itJ) |e_0)
std::complex<double> transfer_amplitude(const JacobiChain<double>& c, double t);

/// (e_k| exp(itJ) |e_0) for every site k.
std::vector<std::complex<double>> site_amplitudes(const JacobiChain<double>& c, double t);

/// Orthonormal polynomial values: result[n][s] = chi_n(x_s), n = 0..N.
std::vector<std::vector<double>> chi_values(const MonicRecurrence<double>& r,
                                            std::span<const double> x);

/// Max deviation from orthonormality of the eigenvector matrix (both ways),
/// of W_{sn} from sqrt(w_s) chi_n(x_s), and of chi_n from orthonormality
/// under the weights. chi_n comes from the forward recurrence, so this is
/// only sharp on short or well-conditioned chains.
double expansion_check(const JacobiChain<double>& c);

/// max(|B_n - B_{N-n}|, |J_n - J_{N+1-n}|) / max J. Zero for N = 0.
double persymmetry_residual(const JacobiChain<double>& c);

/// max(|B_n - B_{N-n}|, |U_n - U_{N+1-n}|) computed in the chain's own
/// scalar type, so exact chains give an exact answer.
template <class T>
T persymmetry_defect(const JacobiChain<T>& c);

/// max_s |chi_N(x_s) - (-1)^{N+s}| over the chain's eigenvalues.
double sign_condition_residual(const JacobiChain<double>& c);

/// max_s |w_s w*_s P'_{N+1}(x_s)^2 / h_N - 1|, w* from the reflected chain.
/// Holds for any Jacobi matrix, PST or not.
double dual_weight_residual(const JacobiChain<double>& c);

JacobiChain<double> reflect(const JacobiChain<double>& c);

struct TransferReport {
  double fidelity = 0;
  double phase = 0;  // arg f(T) in (-pi, pi]
  double time_used = 0;
  double persymmetry_residual = 0;
  double sign_condition_residual = 0;
  double dual_weight_residual = 0;
};

TransferReport verify(const JacobiChain<double>& c);

/// Thresholds behind a "PST" verdict.
inline constexpr double kVerifyTolerance = 1e-8;
bool is_pst(const TransferReport& r, double tolerance = kVerifyTolerance);

struct CurveSample {
  double t;
  std::complex<double> amplitude;
};

/// `samples` evenly spaced times covering [0, 2T] inclusive.
std::vector<CurveSample> fidelity_curve(const JacobiChain<double>& c, std::size_t samples);

}  // namespace pstforge
