#include "pfspectra/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pfspectra/errors.hpp"

namespace pfs {

AnchorSpec make_anchor(int degree, const Complex& c0) {
  if (degree < 2) throw InvalidArgument("degree must be at least 2");
  constexpr int kHorizon = 64;
  const double tol = 1e-10;
  std::vector<Complex> orbit{Complex(0.0)};
  for (int k = 0; k < kHorizon; ++k) {
    const Complex z = std::pow(orbit.back(), degree) + c0;
    if (std::abs(z) > kEscapeRadius) throw InvalidArgument("critical orbit of the anchor escapes");
    for (std::size_t j = 0; j < orbit.size(); ++j) {
      if (std::abs(orbit[j] - z) > tol) continue;
      if (j == 0) throw InvalidArgument("anchor is a center, not a Misiurewicz parameter");
      const std::size_t cycle = orbit.size() - j;
      if (cycle != 1)
        throw InvalidArgument("critical orbit lands on a cycle of period " + std::to_string(cycle) +
                              "; only fixed-point anchors are supported");
      AnchorSpec a;
      a.degree = degree;
      a.c0 = c0;
      a.beta = orbit[j];
      a.multiplier = static_cast<double>(degree) * std::pow(a.beta, degree - 1);
      a.preperiod = static_cast<int>(j);
      if (!(std::abs(a.multiplier) > 1.0)) throw InvalidArgument("landing fixed point is not repelling");
      return a;
    }
    orbit.push_back(z);
  }
  throw InvalidArgument("critical orbit not preperiodic within the search horizon");
}

std::vector<CenterRecord> generate_center_sequence(const AnchorSpec& anchor, const std::vector<int>& periods,
                                                   const DynamicsConfig& config) {
  std::vector<CenterRecord> out;
  for (int m : periods) {
    if (m < anchor.preperiod + 1) throw NoNearbyCenter("period " + std::to_string(m) + " is below preperiod + 1");
    bool found = false;
    for (int attempt = 0; attempt < 8 && !found; ++attempt) {
      Complex start = anchor.c0;
      if (attempt > 0) start += std::polar(1e-6 * attempt, 2.0 * std::numbers::pi * attempt / 8.0);
      try {
        const auto [c, residual] = polish_center(anchor.degree, m, to_ext(start), 200);
        (void)residual;
        CenterRecord rec = make_center_record(anchor.degree, m, c);
        if (validate_center(rec, config)) {
          out.push_back(std::move(rec));
          found = true;
        }
      } catch (const Overflow&) {
      }
    }
    if (!found) throw NoNearbyCenter("no center of period " + std::to_string(m) + " found near the anchor");
  }
  return out;
}

double EmpiricalMeasure::max_moment() const {
  double best = 0.0;
  for (int k = 1; k <= modes; ++k) best = std::max({best, std::abs(moment(k)), std::abs(moment(-k))});
  return best;
}

EmpiricalMeasure measure_from_samples(std::vector<Complex> samples, int modes) {
  if (samples.empty()) throw InvalidArgument("empirical measure needs at least one sample");
  if (modes < 1) throw InvalidArgument("need at least one Fourier mode");
  EmpiricalMeasure m;
  m.modes = modes;
  m.samples = std::move(samples);
  const double n = static_cast<double>(m.samples.size());
  m.fourier.assign(static_cast<std::size_t>(2 * modes + 1), Complex(0.0));
  double radius_sum = 0.0;
  double square_sum = 0.0;
  for (const auto& z : m.samples) {
    const Complex inv = 1.0 / z;
    Complex up(1.0);
    Complex down(1.0);
    m.fourier[static_cast<std::size_t>(modes)] += 1.0;
    for (int k = 1; k <= modes; ++k) {
      up *= z;
      down *= inv;
      m.fourier[static_cast<std::size_t>(modes + k)] += up;
      m.fourier[static_cast<std::size_t>(modes - k)] += down;
    }
    const double r = std::abs(z);
    radius_sum += r;
    square_sum += (r - 1.0) * (r - 1.0);
  }
  for (auto& x : m.fourier) x /= n;
  m.mean_radius = radius_sum / n;
  m.radial_deviation = std::sqrt(square_sum / n);
  return m;
}

EmpiricalMeasure empirical_measure(const std::vector<SpectrumResult>& spectra, const Complex& mu, int modes) {
  std::vector<Complex> samples;
  for (const auto& s : spectra)
    for (const auto& e : s.eigenvalues) samples.push_back(mu * e.value);
  return measure_from_samples(std::move(samples), modes);
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("slope needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw InvalidArgument("slope needs distinct abscissae");
  return sxy / sxx;
}

EquidistReport equidistribution_test(const std::vector<PeriodRow>& rows) {
  EquidistReport report;
  report.rows = rows;
  std::vector<double> x, moments, radial;
  for (const auto& r : rows) {
    x.push_back(r.period);
    moments.push_back(r.max_moment);
    radial.push_back(r.radial_deviation);
  }
  report.moment_slope = least_squares_slope(x, moments);
  report.radial_slope = least_squares_slope(x, radial);
  report.passed = report.moment_slope < 0.0 && report.radial_slope < 0.0;
  return report;
}

EquidistReport run_equidistribution(const AnchorSpec& anchor, const std::vector<int>& periods, int modes,
                                    const DynamicsConfig& config, const SpectrumConfig& spectrum) {
  const auto centers = generate_center_sequence(anchor, periods, config);
  std::vector<PeriodRow> rows;
  for (const auto& rec : centers) {
    const SpectrumResult s = compute_spectrum(rec, spectrum);
    const EmpiricalMeasure m = empirical_measure({s}, anchor.multiplier, modes);
    PeriodRow row;
    row.period = rec.period;
    row.samples = m.samples.size();
    row.max_moment = m.max_moment();
    row.radial_deviation = m.radial_deviation;
    row.mean_radius = m.mean_radius;
    row.anchor_distance = std::abs(to_complex(rec.center_ext() - to_ext(anchor.c0)));
    row.gap_ok = s.gap_ok;
    row.center = rec.center;
    row.scaled = m.samples;
    rows.push_back(row);
  }
  return equidistribution_test(rows);
}

}  // namespace pfs
