#pragma once

// Exact certificates that D * lambda is an algebraic unit: the resultant
// S_m(nu) = Res_c(H_m, R(c, nu)), its unit coefficients and the factor
// Upsilon_m with S_m = (1 - nu)^deg(H_m) Upsilon_m^(D-1).

#include <string>
#include <vector>

#include "pfspectra/gleason.hpp"
#include "pfspectra/spectrum.hpp"

namespace pfs {

/// R(c, nu) = sum_{n=0}^{m-1} Gamma_n(c) nu^n, Gamma_n = prod_{k=1}^n G_{m-k}^(D-1).
BivarPoly build_R(const GleasonTower& tower, int m);

/// Default exact ceiling: D=2 m<=7, D=3 m<=5, D=4 m<=4, otherwise m<=3.
bool within_exact_ceiling(int degree, int period);
/// Human-readable size of the elimination for (D, m).
std::string certify_cost_estimate(int degree, int period);

struct UnitCertificate {
  int degree = 0;
  int period = 0;
  int h_degree = 0;        ///< deg H_m
  IntPoly s;               ///< S_m in nu
  BigInt constant_coeff;
  BigInt leading_coeff;
  IntPoly upsilon;
  bool degree_ok = false;         ///< deg S_m = (m-1) deg H_m
  bool constant_ok = false;       ///< S_m(0) = 1
  bool leading_ok = false;        ///< |lead S_m| = 1
  bool factorization_ok = false;  ///< exact re-expansion
  bool squarefree = false;        ///< gcd(Upsilon, Upsilon') = 1
  bool passed() const { return degree_ok && constant_ok && leading_ok && factorization_ok; }
};

/// Throws DimensionTooSmall for m < 3 and ExactCeiling beyond the default
/// ceiling unless force is set.
UnitCertificate certify(const GleasonTower& tower, int m, bool force = false, int threads = 1);

/// (nu + 1)^(D+1) - nu^D.
IntPoly upsilon3_closed_form(int degree);

struct CrosscheckReport {
  double distance = 0.0;          ///< matching distance, numeric vs exact
  bool passed = false;
  std::size_t orbit_groups = 0;   ///< centers modulo c -> omega c
  bool omega_collision = false;   ///< some rotation orbit was not free
  int precision_bits = 0;         ///< precision used for the roots of Upsilon
  std::vector<Complex> numeric;   ///< D lambda, one rotation representative each
  std::vector<Complex> exact;     ///< roots of Upsilon_m
};

/// Compare {D lambda} over all period-m centers, one per orbit of
/// c -> omega c (omega^(D-1) = 1), with the roots of Upsilon_m. The factor
/// (1 - nu)^deg(H_m) carries no spectral data and is left out. Throws
/// IncompleteSurvey unless the spectra cover all deg H_m centers.
CrosscheckReport crosscheck_numeric(const UnitCertificate& cert, const std::vector<SpectrumResult>& spectra,
                                    double threshold = 1e-6);

}  // namespace pfs
