#include "pfspectra/numeric.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace pfs {

SplitComplex split(const ExtComplex& z) {
  const double re_hi = to_double(z.real());
  const double im_hi = to_double(z.imag());
  const double re_lo = to_double(z.real() - ExtReal(re_hi));
  const double im_lo = to_double(z.imag() - ExtReal(im_hi));
  return {{re_hi, im_hi}, {re_lo, im_lo}};
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_hex(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

double horner_abs_scale(const std::vector<Complex>& coeffs, double absx) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * absx + std::abs(*it);
  return acc;
}

std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> p{1.0};
  for (const auto& r : roots) {
    p.push_back(0.0);
    for (std::size_t j = p.size() - 1; j > 0; --j) p[j] = p[j - 1] - r * p[j];
    p[0] = -r * p[0];
  }
  return p;
}

double matching_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::sort(a.begin(), a.end(), lex_less);
  std::vector<char> used(b.size(), 0);
  double worst = 0.0;
  for (const auto& x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = b.size();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    used[best_j] = 1;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace pfs
