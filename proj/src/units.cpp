#include "pfspectra/units.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pfspectra/errors.hpp"
#include "pfspectra/roots.hpp"

namespace pfs {

BivarPoly build_R(const GleasonTower& tower, int m) {
  if (m < 1 || m > tower.max_period()) throw InvalidArgument("period outside the tower");
  const auto e = static_cast<unsigned>(tower.degree() - 1);
  std::vector<IntPoly> gammas{IntPoly{1}};
  for (int n = 1; n < m; ++n) gammas.push_back(gammas.back() * tower.G(m - n).pow(e));
  return BivarPoly(std::move(gammas));
}

bool within_exact_ceiling(int degree, int period) {
  switch (degree) {
    case 2: return period <= 7;
    case 3: return period <= 5;
    case 4: return period <= 4;
    default: return period <= 3;
  }
}

std::string certify_cost_estimate(int degree, int period) {
  const std::uint64_t h = center_count(degree, period);
  const std::uint64_t points = h * static_cast<std::uint64_t>(period - 1) + 1;
  return "deg H_m = " + std::to_string(h) + ", deg S_m = " + std::to_string(points - 1) + ", " +
         std::to_string(points) + " resultants of degree " + std::to_string(h) + " polynomials";
}

UnitCertificate certify(const GleasonTower& tower, int m, bool force, int threads) {
  const int D = tower.degree();
  if (m < 3) throw DimensionTooSmall("unit certificates need period at least 3");
  if (!force && !within_exact_ceiling(D, m))
    throw ExactCeiling("D=" + std::to_string(D) + " m=" + std::to_string(m) + " exceeds the default ceiling (" +
                       certify_cost_estimate(D, m) + "); pass --force to run anyway");
  UnitCertificate cert;
  cert.degree = D;
  cert.period = m;
  const IntPoly& h = tower.H(m);
  cert.h_degree = h.degree();
  cert.s = resultant_bivar(h, build_R(tower, m), threads);
  cert.constant_coeff = cert.s.coeff(0);
  cert.leading_coeff = cert.s.leading();
  cert.degree_ok = cert.s.degree() == (m - 1) * cert.h_degree;
  cert.constant_ok = cert.constant_coeff == 1;
  cert.leading_ok = abs(cert.leading_coeff) == 1;

  const IntPoly unit_part = IntPoly{1, -1}.pow(static_cast<unsigned>(cert.h_degree));
  const IntPoly rest = exact_div(cert.s, unit_part);
  cert.upsilon = power_series_root(rest, static_cast<unsigned>(D - 1));
  cert.factorization_ok =
      cert.upsilon.coeff(0) == 1 && unit_part * cert.upsilon.pow(static_cast<unsigned>(D - 1)) == cert.s;
  cert.squarefree = gcd(cert.upsilon, derivative(cert.upsilon)).degree() == 0;
  return cert;
}

IntPoly upsilon3_closed_form(int degree) {
  if (degree < 2) throw InvalidArgument("degree must be at least 2");
  return IntPoly{1, 1}.pow(static_cast<unsigned>(degree + 1)) - IntPoly::monomial(1, static_cast<unsigned>(degree));
}

namespace {

/// Roots of an exact polynomial at the precision of C; empty if some Newton
/// error bound stays above the acceptance level.
template <class C>
std::vector<Complex> exact_roots(const IntPoly& p, const std::vector<Complex>& hint) {
  using Real = typename C::value_type;
  std::vector<C> coeffs;
  for (const auto& x : p.coeffs()) coeffs.emplace_back(Real(x.get_str()), Real(0));
  AberthOptions opt;
  opt.tolerance = 1e-24;
  opt.max_iterations = 600;
  std::vector<PolishedRoot<C>> roots;
  if (hint.size() == static_cast<std::size_t>(p.degree())) {
    std::vector<C> starts;
    for (const auto& z : hint) starts.emplace_back(z.real(), z.imag());
    opt.max_iterations = 60;
    roots = polynomial_roots_from<C>(coeffs, std::move(starts), opt);
  } else {
    roots = polynomial_roots<C>(coeffs, opt);
  }
  std::vector<Complex> out;
  for (const auto& r : roots) {
    const Complex z(r.value.real().template convert_to<double>(), r.value.imag().template convert_to<double>());
    if (!(r.residual <= 1e-12 * std::max(1.0, std::abs(z)))) return {};
    out.push_back(z);
  }
  return out;
}

}  // namespace

CrosscheckReport crosscheck_numeric(const UnitCertificate& cert, const std::vector<SpectrumResult>& spectra,
                                    double threshold) {
  if (spectra.size() != static_cast<std::size_t>(cert.h_degree))
    throw IncompleteSurvey("cross-check needs all " + std::to_string(cert.h_degree) + " centers, got " +
                           std::to_string(spectra.size()));
  const int D = cert.degree;
  CrosscheckReport report;

  // Group centers into orbits of c -> omega c.
  std::vector<char> used(spectra.size(), 0);
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    if (used[i]) continue;
    used[i] = 1;
    ++report.orbit_groups;
    const Complex c = spectra[i].center.center;
    int members = 1;
    for (int k = 1; k < D - 1; ++k) {
      const Complex rotated = c * std::polar(1.0, 2.0 * std::numbers::pi * k / (D - 1));
      for (std::size_t j = 0; j < spectra.size(); ++j) {
        if (used[j] || std::abs(spectra[j].center.center - rotated) > 1e-8) continue;
        used[j] = 1;
        ++members;
        break;
      }
    }
    if (members != D - 1) report.omega_collision = true;
    for (const auto& e : spectra[i].eigenvalues) report.numeric.push_back(static_cast<double>(D) * e.value);
  }

  // The numeric values only seed the iteration; every root returned carries
  // its own Newton error bound, so a wrong hint cannot hide a mismatch.
  report.exact = exact_roots<ExtComplex>(cert.upsilon, report.numeric);
  report.precision_bits = kMaxPrecision;
  if (report.exact.empty()) {
    report.exact = exact_roots<WideComplex>(cert.upsilon, report.numeric);
    report.precision_bits = kWidePrecision;
  }
  if (report.exact.empty()) {
    report.exact = exact_roots<WideComplex>(cert.upsilon, {});
    report.precision_bits = kWidePrecision;
  }
  report.distance = matching_distance(report.numeric, report.exact);
  std::sort(report.numeric.begin(), report.numeric.end(), lex_less);
  std::sort(report.exact.begin(), report.exact.end(), lex_less);
  report.passed = report.distance <= threshold;
  return report;
}

}  // namespace pfs
