#include "pfspectra/survey.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "pfspectra/errors.hpp"
#include "pfspectra/gleason.hpp"
#include "pfspectra/parallel.hpp"

namespace pfs {

namespace {

constexpr double kRemainderTolerance = 1e-10;
constexpr double kReconstructionTolerance = 1e-8;

std::string hex_columns(const CenterRecord& c) {
  return format_hex(c.center.real()) + "," + format_hex(c.center_lo.real()) + "," + format_hex(c.center.imag()) + "," +
         format_hex(c.center_lo.imag());
}

const char* kHexHeader = ",re_c_hi_hex,re_c_lo_hex,im_c_hi_hex,im_c_lo_hex";

std::string fixed3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

}  // namespace

std::vector<std::string> PeriodSurvey::failures() const {
  std::vector<std::string> out;
  if (!residual_ok) out.emplace_back("center_residual");
  if (!count_ok) out.emplace_back("eigenvalue_count");
  if (!gap_ok) out.emplace_back("spectral_gap");
  if (!identity_ok) out.emplace_back("derivative_identity");
  if (!remainder_ok) out.emplace_back("division_remainder");
  if (!reconstruction_ok) out.emplace_back("reconstruction");
  return out;
}

PeriodSurvey survey_period(int degree, int period, const DynamicsConfig& dynamics, const SpectrumConfig& spectrum) {
  PeriodSurvey s;
  s.degree = degree;
  s.period = period;
  s.centers = find_centers(degree, period, dynamics);
  s.min_separation = std::numeric_limits<double>::infinity();
  for (const auto& c : s.centers) {
    s.worst_residual = std::max(s.worst_residual, c.newton_residual);
    if (!(c.newton_residual <= dynamics.tol_residual)) s.residual_ok = false;
  }
  if (period < 3) s.note = "dim Q_f = 0";
  if (period < 2) return s;

  const std::size_t n = s.centers.size();
  s.spectra.resize(n);
  s.identities.resize(n);
  parallel_for(n, resolve_threads(dynamics.threads), [&](std::size_t i) {
    const auto& c = s.centers[i];
    s.spectra[i] = period >= 3 ? compute_spectrum(c, spectrum) : chi2_from_orbit(c);
    s.identities[i] = derivative_identity_check(c, s.spectra[i]);
  });

  s.min_abs = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& sp = s.spectra[i];
    const auto& id = s.identities[i];
    s.worst_identity = std::max({s.worst_identity, id.relative, id.normalized_relative});
    if (!id.passed(spectrum.identity_tolerance)) s.identity_ok = false;
    s.worst_remainder = std::max(s.worst_remainder, sp.division_remainder);
    if (!(sp.division_remainder <= kRemainderTolerance)) s.remainder_ok = false;
    if (period < 3) continue;
    if (sp.eigenvalues.size() != static_cast<std::size_t>(period - 2)) s.count_ok = false;
    if (!sp.gap_ok) s.gap_ok = false;
    s.worst_reconstruction = std::max(s.worst_reconstruction, sp.reconstruction_error);
    if (!(sp.reconstruction_error <= kReconstructionTolerance)) s.reconstruction_ok = false;
    s.min_separation = std::min(s.min_separation, sp.min_separation);
    for (const auto& e : sp.eigenvalues) {
      const double a = std::abs(e.value);
      s.min_abs = std::min(s.min_abs, a);
      s.max_abs = std::max(s.max_abs, a);
      ++s.eigenvalue_count;
    }
  }
  if (s.eigenvalue_count == 0) s.min_abs = 0.0;
  return s;
}

void write_survey_csv(std::ostream& os, const std::vector<PeriodSurvey>& surveys, bool hex) {
  os << "D,m,re_c,im_c,re_lambda,im_lambda,residual,abs_lambda" << (hex ? kHexHeader : "") << "\n";
  for (const auto& s : surveys)
    for (const auto& sp : s.spectra)
      for (const auto& e : sp.eigenvalues) {
        os << s.degree << ',' << s.period << ',' << format_real(sp.center.center.real()) << ','
           << format_real(sp.center.center.imag()) << ',' << format_real(e.value.real()) << ','
           << format_real(e.value.imag()) << ',' << format_real(e.residual) << ',' << format_real(std::abs(e.value));
        if (hex) os << ',' << hex_columns(sp.center);
        os << "\n";
      }
}

void write_centers_csv(std::ostream& os, const std::vector<CenterRecord>& centers, bool hex) {
  os << "D,m,re_c,im_c,residual" << (hex ? kHexHeader : "") << "\n";
  for (const auto& c : centers) {
    os << c.degree << ',' << c.period << ',' << format_real(c.center.real()) << ',' << format_real(c.center.imag())
       << ',' << format_real(c.newton_residual);
    if (hex) os << ',' << hex_columns(c);
    os << "\n";
  }
}

nlohmann::json center_json(const CenterRecord& c, bool hex) {
  nlohmann::json j = {{"re", c.center.real()}, {"im", c.center.imag()}, {"residual", c.newton_residual}};
  if (hex)
    j["hex"] = {format_hex(c.center.real()), format_hex(c.center_lo.real()), format_hex(c.center.imag()),
                format_hex(c.center_lo.imag())};
  return j;
}

nlohmann::json survey_summary(const PeriodSurvey& s) {
  nlohmann::json j = {{"degree", s.degree},
                      {"period", s.period},
                      {"centers", s.centers.size()},
                      {"expected_centers", center_count(s.degree, s.period)},
                      {"eigenvalues", s.eigenvalue_count},
                      {"min_abs_lambda", s.min_abs},
                      {"max_abs_lambda", s.max_abs},
                      {"worst_center_residual", s.worst_residual},
                      {"worst_identity", s.worst_identity},
                      {"worst_remainder", s.worst_remainder},
                      {"worst_reconstruction", s.worst_reconstruction},
                      {"passed", s.passed()},
                      {"failed_checks", s.failures()}};
  if (std::isfinite(s.min_separation)) j["min_separation"] = s.min_separation;
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

void write_scatter_svg(std::ostream& os, const std::vector<SvgSeries>& series, const std::vector<SvgCircle>& circles,
                       double extent, const std::string& title) {
  const int size = 800;
  const double half = size / 2.0;
  const double scale = half / extent;
  auto px = [&](double x) { return fixed3(half + x * scale); };
  auto py = [&](double y) { return fixed3(half - y * scale); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
     << size << ' ' << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#101018\"/>\n";
  os << "<text x=\"12\" y=\"24\" fill=\"#ddd\" font-family=\"monospace\" font-size=\"14\">" << title << "</text>\n";
  os << "<line x1=\"0\" y1=\"" << half << "\" x2=\"" << size << "\" y2=\"" << half << "\" stroke=\"#333\"/>\n";
  os << "<line x1=\"" << half << "\" y1=\"0\" x2=\"" << half << "\" y2=\"" << size << "\" stroke=\"#333\"/>\n";
  int row = 0;
  for (const auto& c : circles) {
    os << "<circle cx=\"" << half << "\" cy=\"" << half << "\" r=\"" << fixed3(c.radius * scale)
       << "\" fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1\"/>\n";
    os << "<text x=\"12\" y=\"" << 44 + 16 * row++ << "\" fill=\"" << c.color
       << "\" font-family=\"monospace\" font-size=\"12\">" << c.label << "</text>\n";
  }
  for (const auto& s : series) {
    if (!s.label.empty())
      os << "<text x=\"12\" y=\"" << 44 + 16 * row++ << "\" fill=\"" << s.color
         << "\" font-family=\"monospace\" font-size=\"12\">" << s.label << "</text>\n";
    os << "<g fill=\"" << s.color << "\">\n";
    for (const auto& p : s.points)
      os << "<circle cx=\"" << px(p.real()) << "\" cy=\"" << py(p.imag()) << "\" r=\"1.2\"/>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
}

}  // namespace pfs
