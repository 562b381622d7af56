#pragma once

#include <cstdint>
#include <vector>

#include "pfspectra/int_poly.hpp"

namespace pfs {

/// Moebius function.
int mobius(int n);
/// Positive divisors in increasing order.
std::vector<int> divisors(int n);

/// Number of centers of exact period m for z^D + c:
/// sum_{d | m} mu(m/d) D^(d-1). Throws InvalidArgument on 64-bit overflow.
std::uint64_t center_count(int degree, int period);
/// Number of points of exact period n for any z^D + c:
/// sum_{d | n} mu(n/d) D^d.
std::uint64_t periodic_point_count(int degree, int period);

/// Gleason polynomials G_n(c) = f_c^n(0) and their exact-period factors
/// H_m, with G_n = prod_{m | n} H_m.
class GleasonTower {
 public:
  GleasonTower(int degree, int max_period);

  int degree() const noexcept { return degree_; }
  int max_period() const noexcept { return max_period_; }
  /// G_n for 0 <= n <= max_period.
  const IntPoly& G(int n) const;
  /// H_m for 1 <= m <= max_period.
  const IntPoly& H(int m) const;

 private:
  int degree_;
  int max_period_;
  std::vector<IntPoly> g_;
  std::vector<IntPoly> h_;
};

GleasonTower build_tower(int degree, int max_period);

struct SimpleRootsCertificate {
  int n = 0;
  BigInt resultant;                   ///< Res(G_n, G_n')
  bool derivative_one_mod_d = false;  ///< G_n' == 1 coefficientwise mod D
  bool resultant_one_mod_d = false;   ///< Res(G_n, G_n') == 1 mod D
  bool passed() const { return derivative_one_mod_d && resultant_one_mod_d && resultant != 0; }
};

SimpleRootsCertificate certify_simple_roots(const GleasonTower& tower, int n);

struct PoonenCertificate {
  int m = 0;
  int n = 0;
  BigInt resultant;  ///< Res(H_m, H_n)
  bool passed() const { return abs(resultant) == 1; }
};

PoonenCertificate certify_poonen(const GleasonTower& tower, int m, int n);

/// All pairs 1 <= m < n <= max_period, in (m, n) order.
std::vector<PoonenCertificate> certify_poonen_all(const GleasonTower& tower, int threads = 1);

struct DegreeRow {
  int period = 0;
  int degree = 0;                 ///< deg H_m as built
  std::uint64_t predicted = 0;    ///< Moebius formula
};

/// deg H_m against the Moebius formula for every m. A mismatch throws an
/// Exact-kind Error; it can only come from a bug in the tower.
std::vector<DegreeRow> degree_check(const GleasonTower& tower);

}  // namespace pfs
