#pragma once

// Floating point dynamics of f_c(z) = z^D + c: critical-orbit evaluation,
// enumeration of centers of a given period, and periodic cycles with their
// multipliers. Nothing here expands Gleason polynomials.

#include <cstdint>
#include <utility>
#include <vector>

#include "pfspectra/numeric.hpp"

namespace pfs {

struct DynamicsConfig {
  double tol_residual = 1e-13;   ///< accepted |G_m(c)| after polishing
  double dedup_tol = 1e-9;       ///< centers closer than this are one center
  double period_reject = 1e-6;   ///< |G_d(c)| floor for proper divisors d | m
  double tol_bound = 1e-9;       ///< slack in the |z|^(D-1) <= 2 escape bound
  int precision_bits = kBaselinePrecision;
  int restart_rounds = 6;
  int threads = 1;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

/// Escape radius for the critical orbit; any |g| beyond it means c is not a
/// center (every bounded orbit satisfies |z|^(D-1) <= 2).
inline constexpr double kEscapeRadius = 4.0;

struct GmValue {
  Complex value;       ///< G_m(c)
  Complex derivative;  ///< G_m'(c)
};

/// (G_m(c), G_m'(c)) by the coupled iteration g <- g^D + c,
/// g' <- D g^(D-1) g' + 1. Throws Overflow once |g| exceeds kEscapeRadius.
GmValue eval_gm(int degree, int period, const Complex& c);
std::pair<ExtComplex, ExtComplex> eval_gm_ext(int degree, int period, const ExtComplex& c);

/// Centers of exact period m with the full critical orbit. Indexing follows
/// the orbit: zeta_0 = 0, zeta_j = f^j(0); delta_j = D zeta_j^(D-1).
struct CenterRecord {
  int degree = 0;
  int period = 0;
  Complex center;
  /// Low part of the 106-bit center (center + center_lo); zero only if the
  /// double value is already exact.
  Complex center_lo;
  double newton_residual = 0.0;  ///< |G_m(c)| at the polished center
  std::vector<Complex> orbit;    ///< zeta_0 .. zeta_{m-1}
  std::vector<Complex> deltas;   ///< index j holds delta_j; deltas[0] = 0
  std::vector<Complex> forward;  ///< index j holds Delta_j = delta_1..delta_j; forward[0] = 1
  std::vector<Complex> backward; ///< index j holds Delta_{-j} = delta_{m-1}..delta_{m-j}; backward[0] = 1

  ExtComplex center_ext() const { return join({center, center_lo}); }
};

/// Orbit record for an arbitrary parameter (validation is the caller's job).
CenterRecord make_center_record(int degree, int period, const ExtComplex& c);

/// Polish a candidate center by Newton's method on G_m in extended
/// precision. Returns the polished value and |G_m| there.
std::pair<ExtComplex, double> polish_center(int degree, int period, ExtComplex c, int max_iterations = 60);

/// Exact-period and escape-bound validation for a polished record.
bool validate_center(const CenterRecord& record, const DynamicsConfig& config);

/// All centers of exact period m, sorted lexicographically by (re, im).
/// Throws IncompleteEnumeration if the Moebius count is not met.
std::vector<CenterRecord> find_centers(int degree, int period, const DynamicsConfig& config = {});

/// |c|^(D-1) and every |zeta_j|^(D-1) within 2 + tol_bound.
bool escape_bound_check(const CenterRecord& record, double tol_bound = 1e-9);

struct CycleRecord {
  int degree = 0;
  Complex parameter;
  int period = 0;
  std::vector<Complex> points;       ///< z_1 .. z_n in orbit order
  Complex multiplier;                ///< D^n (z_1 ... z_n)^(D-1)
  bool postcritical = false;         ///< meets the forward critical orbit
  std::vector<Complex> eigenvalues;  ///< the n roots of lambda^n = 1/multiplier; empty when postcritical
};

/// All cycles of exact period n = 1 .. n_max, grouped by period then sorted by
/// their lexicographically smallest point.
std::vector<CycleRecord> find_cycles(int degree, const Complex& c, int n_max, const DynamicsConfig& config = {});

}  // namespace pfs
