#pragma once

// Period-by-period eigenvalue survey: centers, spectra and the invariant
// checks run over them, plus CSV and SVG emission.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pfspectra/spectrum.hpp"

namespace pfs {

struct PeriodSurvey {
  int degree = 0;
  int period = 0;
  std::vector<CenterRecord> centers;
  std::vector<SpectrumResult> spectra;          ///< one per center when m >= 2
  std::vector<DerivativeIdentity> identities;   ///< one per center when m >= 2
  std::size_t eigenvalue_count = 0;
  double min_abs = 0.0;  ///< over all eigenvalues (0 when there are none)
  double max_abs = 0.0;
  double worst_residual = 0.0;
  double worst_identity = 0.0;
  double worst_remainder = 0.0;
  double worst_reconstruction = 0.0;
  double min_separation = 0.0;
  bool residual_ok = true;
  bool count_ok = true;  ///< m - 2 eigenvalues per center
  bool gap_ok = true;
  bool identity_ok = true;
  bool remainder_ok = true;
  bool reconstruction_ok = true;
  std::string note;

  bool passed() const {
    return residual_ok && count_ok && gap_ok && identity_ok && remainder_ok && reconstruction_ok;
  }
  /// Names of the checks that failed.
  std::vector<std::string> failures() const;
};

PeriodSurvey survey_period(int degree, int period, const DynamicsConfig& dynamics = {},
                           const SpectrumConfig& spectrum = {});

/// D, m, re(c), im(c), re(lambda), im(lambda), residual, |lambda|; one row per
/// eigenvalue. With hex set, the 106-bit center follows as four hex floats.
void write_survey_csv(std::ostream& os, const std::vector<PeriodSurvey>& surveys, bool hex = false);

/// D, m, re(c), im(c), residual; hex columns as above.
void write_centers_csv(std::ostream& os, const std::vector<CenterRecord>& centers, bool hex = false);

nlohmann::json center_json(const CenterRecord& c, bool hex = false);
nlohmann::json survey_summary(const PeriodSurvey& s);

struct SvgSeries {
  std::vector<Complex> points;
  std::string color;
  std::string label;
};

struct SvgCircle {
  double radius = 1.0;
  std::string label;
  std::string color;
};

/// Scatter plot of the series over [-extent, extent]^2 with reference
/// circles centred at the origin.
void write_scatter_svg(std::ostream& os, const std::vector<SvgSeries>& series, const std::vector<SvgCircle>& circles,
                       double extent, const std::string& title);

}  // namespace pfs
