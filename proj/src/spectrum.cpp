/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "pstforge/spectrum.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <utility>

#include "pstforge/error.hpp"

namespace pstforge {

namespace {

constexpr double kFloatOddnessTolerance = 1e-9;
// Float spacings are matched against d_min / k for k up to this bound.
constexpr long kMaxFloatDivisor = 4096;
constexpr int kMaxFamilySize = 100000;

}  // namespace

template <class T>
void require_strictly_increasing(std::span<const T> points) {
  for (std::size_t s = 0; s < points.size(); ++s) {
    if (!is_finite(points[s])) {
      throw Error(ErrorCode::NonIncreasing, "non-finite point at index " + std::to_string(s),
                  static_cast<long>(s));
    }
    if (s > 0 && !(points[s - 1] < points[s])) {
      throw Error(ErrorCode::NonIncreasing,
                  "points not strictly increasing at index " + std::to_string(s),
                  static_cast<long>(s));
    }
  }
}

template <class T>
Spectrum<T>::Spectrum(std::vector<T> points, T time_over_pi)
    : points_(std::move(points)), time_over_pi_(std::move(time_over_pi)) {
  if (points_.empty()) throw Error(ErrorCode::InvalidArgument, "spectrum needs at least one point");
  require_strictly_increasing<T>(points_);
  if (!is_finite(time_over_pi_) || !(time_over_pi_ > 0)) {
    throw Error(ErrorCode::InvalidArgument, "transfer time must be positive");
  }
}

template <class T>
double Spectrum<T>::time() const {
  return to_double(time_over_pi_) * std::numbers::pi;
}

namespace {

[[noreturn]] void throw_even_multiple(std::size_t s, const std::string& value) {
  throw Error(ErrorCode::NotAdmissible,
              "even spacing multiple at index " + std::to_string(s) + " (M = " + value + ")",
              static_cast<long>(s));
}

Admissibility<Rational> admissible_exact(std::span<const Rational> points) {
  const std::size_t n = points.size() - 1;
  std::vector<Rational> gaps(n);
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (std::size_t s = 0; s < n; ++s) {
    gaps[s] = points[s + 1] - points[s];
    gaps[s].canonicalize();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), gaps[s].get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), gaps[s].get_den().get_mpz_t());
  }
  Rational unit(num_gcd, den_lcm);
  unit.canonicalize();

  Admissibility<Rational> out{Rational(1) / unit, {}};
  out.multiples.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    Rational ratio = gaps[s] / unit;
    // unit divides every gap, so the ratio is an integer
    const mpz_class& m = ratio.get_num();
    if (mpz_even_p(m.get_mpz_t())) throw_even_multiple(s, m.get_str());
    if (!m.fits_slong_p()) {
      throw Error(ErrorCode::Overflow, "spacing multiple does not fit in 64 bits",
                  static_cast<long>(s));
    }
    out.multiples.push_back(m.get_si());
  }
  return out;
}

Admissibility<double> admissible_float(std::span<const double> points) {
  const std::size_t n = points.size() - 1;
  std::vector<double> gaps(n);
  double d_min = INFINITY;
  for (std::size_t s = 0; s < n; ++s) {
    gaps[s] = points[s + 1] - points[s];
    d_min = std::min(d_min, gaps[s]);
  }
  for (long k = 1; k <= kMaxFloatDivisor; ++k) {
    const double unit = d_min / static_cast<double>(k);
    std::vector<long long> mult;
    mult.reserve(n);
    bool integral = true;
    for (std::size_t s = 0; s < n; ++s) {
      const double r = gaps[s] / unit;
      // past this the tolerance swallows a whole step and parity means nothing
      if (r * kFloatOddnessTolerance >= 0.5) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6g", r);
        throw Error(ErrorCode::IrrationalSpacingRatio,
                    "spacing ratio " + std::string(buf) + " at index " + std::to_string(s) +
                        " is beyond float resolution; use exact mode",
                    static_cast<long>(s));
      }
      const double rr = std::round(r);
      if (std::fabs(r - rr) > kFloatOddnessTolerance * r) {
        integral = false;
        break;
      }
      mult.push_back(static_cast<long long>(rr));
    }
    if (!integral) continue;
    for (std::size_t s = 0; s < n; ++s) {
      if (mult[s] % 2 == 0) throw_even_multiple(s, std::to_string(mult[s]));
    }
    return {1.0 / unit, std::move(mult)};
  }
  throw Error(ErrorCode::IrrationalSpacingRatio,
              "spacings have no common measure within tolerance");
}

}  // namespace

template <class T>
Admissibility<T> check_admissible(std::span<const T> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "empty spectrum");
  require_strictly_increasing(points);
  if (points.size() == 1) return {T(1), {}};
  if constexpr (is_exact_v<T>) {
    return admissible_exact(points);
  } else {
    return admissible_float(points);
  }
}

template <class T>
Spectrum<T> affine_map(const Spectrum<T>& s, const T& alpha, const T& beta) {
  if (!(alpha > 0)) throw Error(ErrorCode::NonPositiveScale, "affine scale must be positive");
  std::vector<T> pts;
  pts.reserve(s.points().size());
  for (const auto& x : s.points()) pts.push_back(T(alpha * x + beta));
  return Spectrum<T>(std::move(pts), T(s.time_over_pi() / alpha));
}

template <class T>
bool is_antisymmetric(std::span<const T> points) {
  const std::size_t n = points.size();
  if constexpr (is_exact_v<T>) {
    for (std::size_t s = 0; s < n; ++s) {
      if (points[s] != -points[n - 1 - s]) return false;
    }
  } else {
    double scale = 0;
    for (double x : points) scale = std::max(scale, std::fabs(x));
    for (std::size_t s = 0; s < n; ++s) {
      if (std::fabs(points[s] + points[n - 1 - s]) > 1e-12 * scale) return false;
    }
  }
  return true;
}

void validate(const SpectrumFamily& f) {
  auto bad = [](const std::string& msg) { throw Error(ErrorCode::BadParameters, msg); };
  if (f.n < 0 || f.n > kMaxFamilySize) bad("n must lie in [0, " + std::to_string(kMaxFamilySize) + "]");
  switch (f.kind) {
    case FamilyKind::Uniform:
      break;
    case FamilyKind::Hyperbolic:
      if (f.n % 2 == 0) {
        if (f.k < 4 || f.k % 2 != 0) bad("hyperbolic with even n needs k in {4, 6, 8, ...}");
      } else {
        if (f.k < 6 || f.k % 4 != 2) bad("hyperbolic with odd n needs k in {6, 10, 14, ...}");
      }
      break;
    case FamilyKind::Gapped:
      if (f.n % 2 == 0) bad("gapped spectrum needs odd n");
      if (f.l < 0 || 2 * f.l >= f.n - 1) bad("gapped spectrum needs 0 <= l < (n-1)/2");
      break;
  }
}

namespace {

std::vector<Rational> generate_exact(const SpectrumFamily& f) {
  const int n = f.n;
  std::vector<Rational> x(static_cast<std::size_t>(n) + 1);
  switch (f.kind) {
    case FamilyKind::Uniform:
      for (int s = 0; s <= n; ++s) x[s] = Rational(2 * s - n, 2);
      break;
    case FamilyKind::Hyperbolic: {
      // x_{s+1} = K x_s - x_{s-1} from an antisymmetric seed with unit step
      int start, top;  // x[top] is the last seeded value
      if (n % 2 == 0) {
        start = n / 2;
        x[start] = 0;
        if (n == 0) break;
        top = start + 1;
        x[top] = 1;
      } else {
        start = (n + 1) / 2;
        top = start;
        x[start - 1] = Rational(-1, 2);
        x[start] = Rational(1, 2);
      }
      for (int s = top; s < n; ++s) x[s + 1] = f.k * x[s] - x[s - 1];
      for (int s = 0; s < start; ++s) x[s] = -x[n - s];
      break;
    }
    case FamilyKind::Gapped: {
      // two unit grids -n/2 .. -l-1/2 and l+1/2 .. n/2
      const int half = (n + 1) / 2 - f.l;
      x.resize(2 * static_cast<std::size_t>(half));
      for (int i = 0; i < half; ++i) {
        x[half + i] = Rational(2 * (f.l + i) + 1, 2);
        x[half - 1 - i] = -x[half + i];
      }
      break;
    }
  }
  for (auto& v : x) v.canonicalize();
  return x;
}

}  // namespace

template <class T>
Spectrum<T> generate(const SpectrumFamily& family) {
  validate(family);
  auto exact = generate_exact(family);
  std::vector<T> pts;
  pts.reserve(exact.size());
  for (const auto& v : exact) pts.push_back(scalar_from_rational<T>(v));
  return Spectrum<T>(std::move(pts), T(1));
}

FamilyKind parse_family(std::string_view text) {
  if (text == "uniform") return FamilyKind::Uniform;
  if (text == "hyperbolic") return FamilyKind::Hyperbolic;
  if (text == "gapped") return FamilyKind::Gapped;
  throw Error(ErrorCode::BadParameters,
              "unknown family '" + std::string(text) + "' (expected uniform|hyperbolic|gapped)");
}

const char* to_string(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::Uniform: return "uniform";
    case FamilyKind::Hyperbolic: return "hyperbolic";
    case FamilyKind::Gapped: return "gapped";
  }
  return "unknown";
}

template <class U, class T>
Spectrum<U> convert_spectrum(const Spectrum<T>& s) {
  if constexpr (std::is_same_v<U, T>) {
    return s;
  } else {
    std::vector<U> pts;
    pts.reserve(s.points().size());
    for (const auto& x : s.points()) {
      if constexpr (is_exact_v<U>) pts.push_back(rational_from_double(x));
      else pts.push_back(to_double(x));
    }
    if constexpr (is_exact_v<U>) {
      return Spectrum<U>(std::move(pts), rational_from_double(s.time_over_pi()));
    } else {
      return Spectrum<U>(std::move(pts), to_double(s.time_over_pi()));
    }
  }
}

#define PSTFORGE_INSTANTIATE(T)                                                  \
  template class Spectrum<T>;                                                    \
  template Admissibility<T> check_admissible<T>(std::span<const T>);             \
  template void require_strictly_increasing<T>(std::span<const T>);              \
  template Spectrum<T> affine_map<T>(const Spectrum<T>&, const T&, const T&);    \
  template bool is_antisymmetric<T>(std::span<const T>);                         \
  template Spectrum<T> generate<T>(const SpectrumFamily&);

PSTFORGE_INSTANTIATE(Rational)
PSTFORGE_INSTANTIATE(double)
#undef PSTFORGE_INSTANTIATE

template Spectrum<double> convert_spectrum<double, Rational>(const Spectrum<Rational>&);
template Spectrum<Rational> convert_spectrum<Rational, double>(const Spectrum<double>&);
template Spectrum<double> convert_spectrum<double, double>(const Spectrum<double>&);
template Spectrum<Rational> convert_spectrum<Rational, Rational>(const Spectrum<Rational>&);

}  // namespace pstforge
