#pragma once

// Simultaneous (Aberth-Ehrlich) root iteration driven by a log-derivative
// callback, so callers can solve for roots of functions that are never
// expanded into coefficients.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "pfspectra/numeric.hpp"

namespace pfs {

inline double magnitude(const Complex& z) { return std::abs(z); }
inline double magnitude(const ExtComplex& z) { return to_double(boost::multiprecision::abs(z)); }
inline double magnitude(const WideComplex& z) { return abs(z).convert_to<double>(); }
inline bool finite_value(const Complex& z) { return is_finite(z); }
inline bool finite_value(const WideComplex& z) {
  return boost::multiprecision::isfinite(z.real()) && boost::multiprecision::isfinite(z.imag());
}
inline bool finite_value(const ExtComplex& z) {
  return boost::multiprecision::isfinite(z.real()) && boost::multiprecision::isfinite(z.imag());
}

struct AberthOptions {
  int max_iterations = 500;
  /// A root is frozen once its correction is below tolerance * max(|z|, floor).
  double tolerance = 1e-14;
  double floor = 1e-3;
};

template <class C>
struct AberthOutcome {
  std::vector<C> roots;
  std::vector<char> converged;
  int iterations = 0;
  bool all_converged() const { return std::all_of(converged.begin(), converged.end(), [](char c) { return c != 0; }); }
};

/// n starting points on a circle of the given radius with a seeded random
/// phase offset; the offset breaks the real-axis symmetry of the problems
/// solved here.
template <class C>
std::vector<C> circle_starts(std::size_t n, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double offset = 0.25 + 0.5 * unit(rng);
  std::vector<C> z;
  z.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * (static_cast<double>(k) + offset) / static_cast<double>(n);
    const double r = radius * (1.0 + 0.01 * (unit(rng) - 0.5));
    z.emplace_back(r * std::cos(theta), r * std::sin(theta));
  }
  return z;
}

/// sum_{j != k} 1/(z_k - z_j) + sum_f 1/(z_k - f).
template <class C>
C repulsion_sum(const std::vector<C>& z, std::size_t k, const std::vector<C>& fixed) {
  C acc(0);
  for (std::size_t j = 0; j < z.size(); ++j)
    if (j != k) acc += C(1) / (z[k] - z[j]);
  for (const auto& f : fixed) acc += C(1) / (z[k] - f);
  return acc;
}

/// Same sum in plain real arithmetic; this loop dominates the O(n^2) cost.
inline Complex repulsion_sum(const std::vector<Complex>& z, std::size_t k, const std::vector<Complex>& fixed) {
  const double xr = z[k].real();
  const double xi = z[k].imag();
  double sr = 0.0;
  double si = 0.0;
  auto accumulate = [&](const std::vector<Complex>& pts, std::size_t skip) {
    const std::size_t n = pts.size();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == skip) continue;
      const double dr = xr - pts[j].real();
      const double di = xi - pts[j].imag();
      const double inv = 1.0 / (dr * dr + di * di);
      sr += dr * inv;
      si -= di * inv;
    }
  };
  accumulate(z, k);
  accumulate(fixed, fixed.size());
  return {sr, si};
}

/// Aberth iteration for the roots of a function F given its log-derivative
/// F'/F. `fixed` holds roots already known; they repel the moving points
/// (implicit deflation) but are never updated. Gauss-Seidel ordering, so the
/// result is deterministic for a given start vector.
template <class C, class LogDerivative>
AberthOutcome<C> aberth(LogDerivative&& log_derivative, std::vector<C> z, const std::vector<C>& fixed,
                        const AberthOptions& opt = {}) {
  AberthOutcome<C> out;
  const std::size_t n = z.size();
  out.converged.assign(n, 0);
  std::size_t active = n;
  for (int it = 0; it < opt.max_iterations && active > 0; ++it) {
    out.iterations = it + 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (out.converged[k]) continue;
      const C ld = log_derivative(z[k]);
      if (!finite_value(ld)) {
        // Landed on (or next to) a root of F.
        out.converged[k] = 1;
        --active;
        continue;
      }
      const C denom = ld - repulsion_sum(z, k, fixed);
      C step = C(1) / denom;
      if (!finite_value(step)) {
        // Coincident points: nudge deterministically.
        z[k] += C(1e-7 * (1.0 + static_cast<double>(k % 7)), 1e-7);
        continue;
      }
      z[k] -= step;
      if (magnitude(step) <= opt.tolerance * std::max(magnitude(z[k]), opt.floor)) {
        out.converged[k] = 1;
        --active;
      }
    }
  }
  out.roots = std::move(z);
  return out;
}

/// A root of a dense polynomial with its Newton-step error bound
/// |p(z)| / |p'(z)|.
template <class C>
struct PolishedRoot {
  C value;
  double residual = 0.0;
};

/// All roots of sum coeffs[k] x^k (ascending, leading coefficient nonzero)
/// by Aberth from the given starts (one per root) and Newton polishing.
template <class C>
std::vector<PolishedRoot<C>> polynomial_roots_from(const std::vector<C>& coeffs, std::vector<C> starts,
                                                   const AberthOptions& opt = {}) {
  std::vector<C> a = coeffs;
  while (!a.empty() && magnitude(a.back()) == 0.0) a.pop_back();
  const std::size_t n = a.empty() ? 0 : a.size() - 1;
  std::vector<PolishedRoot<C>> result;
  if (n == 0) return result;
  if (n == 1) {
    result.push_back({-a[0] / a[1], 0.0});
    return result;
  }
  std::vector<C> da(n);
  for (std::size_t k = 1; k <= n; ++k) da[k - 1] = a[k] * C(static_cast<double>(k));

  auto log_derivative = [&](const C& x) { return horner(da, x) / horner(a, x); };
  auto outcome = aberth<C>(log_derivative, std::move(starts), {}, opt);

  for (auto& z : outcome.roots) {
    for (int it = 0; it < 3; ++it) {
      const C p = horner(a, z);
      const C dp = horner(da, z);
      if (magnitude(dp) == 0.0) break;
      const C step = p / dp;
      if (!finite_value(step)) break;
      z -= step;
      if (magnitude(step) == 0.0) break;
    }
    const C p = horner(a, z);
    const C dp = horner(da, z);
    const double bound = magnitude(dp) > 0 ? magnitude(p) / magnitude(dp) : INFINITY;
    result.push_back({z, bound});
  }
  return result;
}

/// Same, starting from a circle whose radius is the geometric mean of the
/// root moduli.
template <class C>
std::vector<PolishedRoot<C>> polynomial_roots(const std::vector<C>& coeffs, const AberthOptions& opt = {},
                                              std::uint64_t seed = 0x5eed) {
  std::size_t n = coeffs.size();
  while (n > 0 && magnitude(coeffs[n - 1]) == 0.0) --n;
  if (n <= 2) return polynomial_roots_from<C>(coeffs, {}, opt);
  const std::size_t deg = n - 1;
  double r0 = magnitude(coeffs[0]) > 0
                  ? std::pow(magnitude(coeffs[0]) / magnitude(coeffs[deg]), 1.0 / static_cast<double>(deg))
                  : 1.0;
  if (!(r0 > 0) || !std::isfinite(r0)) r0 = 1.0;
  return polynomial_roots_from<C>(coeffs, circle_starts<C>(deg, r0, seed), opt);
}

}  // namespace pfs
