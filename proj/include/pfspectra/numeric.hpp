#pragma once

// Floating point vocabulary shared by the numerical modules.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace pfs {

using Complex = std::complex<double>;

/// 113-bit binary floating point (IEEE quad layout) used for center
/// polishing, residual certification and orbit data.
using ExtReal = boost::multiprecision::cpp_bin_float_quad;
using ExtComplex = boost::multiprecision::cpp_complex_quad;
/// 237-bit fallback for ill-conditioned exact polynomials.
using WideComplex = boost::multiprecision::cpp_complex_oct;

inline constexpr int kBaselinePrecision = 53;
inline constexpr int kExtendedPrecision = 106;
inline constexpr int kMaxPrecision = 113;
inline constexpr int kWidePrecision = 237;

inline double to_double(const ExtReal& x) { return x.convert_to<double>(); }
inline Complex to_complex(const ExtComplex& z) { return {to_double(z.real()), to_double(z.imag())}; }
inline ExtComplex to_ext(const Complex& z) { return ExtComplex(ExtReal(z.real()), ExtReal(z.imag())); }

/// Double-double split: hi + lo reproduces z to about 106 bits.
struct SplitComplex {
  Complex hi;
  Complex lo;
};
SplitComplex split(const ExtComplex& z);
inline ExtComplex join(const SplitComplex& s) { return to_ext(s.hi) + to_ext(s.lo); }

/// Shortest round-trip decimal (17 significant digits).
std::string format_real(double x);
/// C99 hex-float, exact.
std::string format_hex(double x);

/// Lexicographic order on (re, im).
inline bool lex_less(const Complex& a, const Complex& b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

inline bool is_finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Evaluate sum coeffs[k] x^k (ascending) by Horner.
template <class C>
C horner(const std::vector<C>& coeffs, const C& x) {
  C acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Sum_k |coeffs[k]| |x|^k, the rounding-error scale of a Horner evaluation.
double horner_abs_scale(const std::vector<Complex>& coeffs, double absx);

/// Expand prod (x - r_i), ascending coefficients, monic.
std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots);

/// Greedy nearest-neighbour matching of two equal-size multisets; returns the
/// largest matched distance (infinity when sizes differ).
double matching_distance(std::vector<Complex> a, std::vector<Complex> b);

}  // namespace pfs
