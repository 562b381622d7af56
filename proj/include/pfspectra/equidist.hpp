#pragma once

// Spectra of centers accumulating at a Misiurewicz parameter whose critical
// orbit lands on a repelling fixed point, and moment statistics of the
// rescaled eigenvalues.

#include <vector>

#include "pfspectra/spectrum.hpp"

namespace pfs {

struct AnchorSpec {
  int degree = 0;
  Complex c0;          ///< anchor parameter
  Complex beta;        ///< fixed point hit by the critical orbit
  Complex multiplier;  ///< f'(beta) = D beta^(D-1)
  int preperiod = 0;   ///< f^k0(0) = beta
};

/// Validates the anchor from its critical orbit. Throws InvalidArgument if
/// the orbit is periodic, escapes, is not preperiodic within the search
/// horizon, lands on a cycle of period > 1, or the fixed point is not
/// repelling.
AnchorSpec make_anchor(int degree, const Complex& c0);

/// Centers of each requested period by Newton on G_m from c0 (with small
/// perturbed restarts). Throws NoNearbyCenter(m) when none validates.
std::vector<CenterRecord> generate_center_sequence(const AnchorSpec& anchor, const std::vector<int>& periods,
                                                   const DynamicsConfig& config = {});

struct EmpiricalMeasure {
  int modes = 10;
  std::vector<Complex> samples;
  std::vector<Complex> fourier;  ///< index k + modes holds m_k, -modes <= k <= modes
  double mean_radius = 0.0;
  double radial_deviation = 0.0;  ///< root mean square of |nu| - 1

  Complex moment(int k) const { return fourier.at(static_cast<std::size_t>(k + modes)); }
  /// max over 1 <= |k| <= modes of |m_k|.
  double max_moment() const;
};

EmpiricalMeasure measure_from_samples(std::vector<Complex> samples, int modes = 10);
/// nu = mu * lambda over all eigenvalues of the given spectra.
EmpiricalMeasure empirical_measure(const std::vector<SpectrumResult>& spectra, const Complex& mu, int modes = 10);

struct PeriodRow {
  int period = 0;
  std::size_t samples = 0;
  double max_moment = 0.0;
  double radial_deviation = 0.0;
  double mean_radius = 0.0;
  double anchor_distance = 0.0;  ///< |c_m - c0|
  bool gap_ok = false;
  Complex center;
  std::vector<Complex> scaled;  ///< mu * lambda
};

struct EquidistReport {
  std::vector<PeriodRow> rows;
  double moment_slope = 0.0;
  double radial_slope = 0.0;
  bool passed = false;  ///< both slopes strictly negative
};

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

EquidistReport equidistribution_test(const std::vector<PeriodRow>& rows);

/// Full pipeline: centers, spectra, one row per period, trend test.
EquidistReport run_equidistribution(const AnchorSpec& anchor, const std::vector<int>& periods, int modes = 10,
                                    const DynamicsConfig& config = {}, const SpectrumConfig& spectrum = {});

}  // namespace pfs
