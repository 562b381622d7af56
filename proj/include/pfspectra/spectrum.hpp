#pragma once

// Characteristic polynomials of the pushforward operator for a periodic
// unicritical polynomial, its eigenvalues, and the two constructions of the
// pushforward matrix.

#include <vector>

#include <Eigen/Dense>

#include "pfspectra/dynamics.hpp"

namespace pfs {

struct SpectrumConfig {
  double gap_margin = 1e-10;
  double root_tolerance = 1e-10;     ///< accepted |chi|/|chi'| relative to max(1, |lambda|)
  double identity_tolerance = 1e-8;  ///< derivative identity, relative
  double contour_fraction = 1e-2;    ///< contour radius / minimum point distance
  int contour_nodes = 256;
  double contour_floor = 1e-12;
};

struct Eigenvalue {
  Complex value;
  double residual = 0.0;  ///< |chi(lambda)| / |chi'(lambda)|
};

struct SpectrumResult {
  CenterRecord center;
  /// Ascending in lambda: chi2 = lambda^(m-1) + sum_k lambda^(m-1-k) / Delta_k.
  std::vector<Complex> chi2_coeffs;
  /// chi2(lambda) / chi2(0) = 1 + Delta_{-1} lambda + ... (ascending).
  std::vector<Complex> normalized_coeffs;
  /// chi2 / (lambda - 1/D), monic, ascending.
  std::vector<Complex> chi_coeffs;
  double division_remainder = 0.0;  ///< |remainder| of that division, normalized scale
  std::vector<Eigenvalue> eigenvalues;  ///< sorted by (re, im)
  bool gap_ok = false;
  double min_separation = 0.0;       ///< smallest pairwise eigenvalue distance (inf if < 2)
  double reconstruction_error = 0.0; ///< prod(lambda - lambda_i) (lambda - 1/D) against chi2, relative
};

/// chi2, its normalized form and chi. Throws DimensionTooSmall for m < 2.
SpectrumResult chi2_from_orbit(const CenterRecord& record);

/// Roots of chi. Throws DimensionTooSmall for m < 3 and NonConvergence
/// (after filling result.eigenvalues) if a root fails to polish.
void eigenvalues(SpectrumResult& result, const SpectrumConfig& config = {});

/// chi2_from_orbit + eigenvalues + gap_check.
SpectrumResult compute_spectrum(const CenterRecord& record, const SpectrumConfig& config = {});

/// 1/(4D) + margin < |lambda| < 1 - margin for every eigenvalue.
bool gap_check(const SpectrumResult& result, double margin = 1e-10);

struct DerivativeIdentity {
  Complex lhs;   ///< G_m'(c) chi(0)
  Complex rhs;   ///< (1 - D) chi(1)
  double relative = 0.0;
  Complex normalized_lhs;  ///< chi2(1) / chi2(0) from the coefficients
  Complex normalized_rhs;  ///< 1 + Delta_{-1} + ... + Delta_{-(m-1)} from the orbit
  double normalized_relative = 0.0;
  bool passed(double tol = 1e-8) const { return relative <= tol && normalized_relative <= tol; }
};

DerivativeIdentity derivative_identity_check(const CenterRecord& record, const SpectrumResult& result);

struct PushforwardMatrix {
  int size = 0;
  Eigen::MatrixXcd entries;
  std::vector<int> labels;      ///< orbit index of each basis element
  std::vector<Complex> points;  ///< the postcritical point x for q_x
};

/// Two entries per column: -1/delta_n in row 1, 1/delta_n in row n+1 mod m.
PushforwardMatrix build_matrix_explicit(const CenterRecord& record);

/// a_{y,x} = sum of residues of dz / ((z - x) f'(z)) over w in f^{-1}(y)
/// meeting {0, x}, each by trapezoid-rule contour integration.
PushforwardMatrix build_matrix_residues(int degree, const Complex& c, const std::vector<Complex>& postcritical_orbit,
                                        const SpectrumConfig& config = {});

/// det(lambda I - A), ascending, by the division-free Berkowitz recursion.
std::vector<Complex> characteristic_polynomial(const Eigen::MatrixXcd& a);

/// Eigenvalues of a dense matrix (Schur form).
std::vector<Complex> matrix_eigenvalues(const Eigen::MatrixXcd& a);

/// 1/(2D) for even D, 1/(2D cos(pi/(2D))) for odd D.
double r_constant(int degree);

}  // namespace pfs
