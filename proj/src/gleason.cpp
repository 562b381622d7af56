#include "pfspectra/gleason.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "pfspectra/errors.hpp"
#include "pfspectra/parallel.hpp"

namespace pfs {

int mobius(int n) {
  if (n < 1) throw InvalidArgument("mobius of nonpositive integer");
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

std::vector<int> divisors(int n) {
  std::vector<int> out;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

namespace {

std::uint64_t checked_pow(int base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(base))
      throw InvalidArgument("count exceeds 64-bit range");
    r *= static_cast<std::uint64_t>(base);
  }
  return r;
}

std::uint64_t mobius_sum(int degree, int period, int shift) {
  if (degree < 2) throw InvalidArgument("degree must be at least 2");
  if (period < 1) throw InvalidArgument("period must be at least 1");
  // Positive and negative parts kept apart to stay unsigned.
  std::uint64_t plus = 0;
  std::uint64_t minus = 0;
  for (int d : divisors(period)) {
    const int mu = mobius(period / d);
    if (mu == 0) continue;
    const std::uint64_t term = checked_pow(degree, d + shift);
    (mu > 0 ? plus : minus) += term;
  }
  return plus - minus;
}

}  // namespace

std::uint64_t center_count(int degree, int period) { return mobius_sum(degree, period, -1); }

std::uint64_t periodic_point_count(int degree, int period) { return mobius_sum(degree, period, 0); }

GleasonTower::GleasonTower(int degree, int max_period) : degree_(degree), max_period_(max_period) {
  if (degree < 2) throw InvalidArgument("degree must be at least 2");
  if (max_period < 1) throw InvalidArgument("max period must be at least 1");
  const IntPoly c = IntPoly::x();
  g_.reserve(static_cast<std::size_t>(max_period) + 1);
  g_.emplace_back();  // G_0 = 0
  for (int n = 1; n <= max_period; ++n) g_.push_back(g_.back().pow(static_cast<unsigned>(degree)) + c);

  h_.resize(static_cast<std::size_t>(max_period) + 1);
  for (int m = 1; m <= max_period; ++m) {
    IntPoly lower = IntPoly::constant(1);
    for (int d : divisors(m))
      if (d < m) lower *= h_[static_cast<std::size_t>(d)];
    h_[static_cast<std::size_t>(m)] = exact_div(g_[static_cast<std::size_t>(m)], lower);
  }
}

const IntPoly& GleasonTower::G(int n) const {
  if (n < 0 || n > max_period_) throw InvalidArgument("G_n index out of range: " + std::to_string(n));
  return g_[static_cast<std::size_t>(n)];
}

const IntPoly& GleasonTower::H(int m) const {
  if (m < 1 || m > max_period_) throw InvalidArgument("H_m index out of range: " + std::to_string(m));
  return h_[static_cast<std::size_t>(m)];
}

GleasonTower build_tower(int degree, int max_period) { return GleasonTower(degree, max_period); }

SimpleRootsCertificate certify_simple_roots(const GleasonTower& tower, int n) {
  if (n < 1 || n > tower.max_period()) throw InvalidArgument("certify_simple_roots: n out of range");
  const IntPoly& g = tower.G(n);
  const IntPoly dg = derivative(g);
  const BigInt D = tower.degree();

  SimpleRootsCertificate cert;
  cert.n = n;
  cert.derivative_one_mod_d = true;
  for (std::size_t i = 0; i < dg.size(); ++i) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), dg.coeffs()[i].get_mpz_t(), D.get_mpz_t());
    if (r != (i == 0 ? 1 : 0)) {
      cert.derivative_one_mod_d = false;
      break;
    }
  }
  cert.resultant = resultant(g, dg);
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), cert.resultant.get_mpz_t(), D.get_mpz_t());
  cert.resultant_one_mod_d = (r == 1);
  return cert;
}

PoonenCertificate certify_poonen(const GleasonTower& tower, int m, int n) {
  if (m < 1 || m >= n || n > tower.max_period()) throw InvalidArgument("certify_poonen needs 1 <= m < n <= max period");
  PoonenCertificate cert;
  cert.m = m;
  cert.n = n;
  cert.resultant = resultant(tower.H(m), tower.H(n));
  return cert;
}

std::vector<PoonenCertificate> certify_poonen_all(const GleasonTower& tower, int threads) {
  std::vector<std::pair<int, int>> pairs;
  for (int n = 2; n <= tower.max_period(); ++n)
    for (int m = 1; m < n; ++m) pairs.emplace_back(m, n);
  std::sort(pairs.begin(), pairs.end());
  std::vector<PoonenCertificate> out(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) { out[i] = certify_poonen(tower, pairs[i].first, pairs[i].second); });
  return out;
}

std::vector<DegreeRow> degree_check(const GleasonTower& tower) {
  std::vector<DegreeRow> rows;
  for (int m = 1; m <= tower.max_period(); ++m) {
    DegreeRow row{m, tower.H(m).degree(), center_count(tower.degree(), m)};
    if (static_cast<std::uint64_t>(row.degree) != row.predicted)
      throw Error(ErrorKind::Exact, "DegreeMismatch", "deg H_" + std::to_string(m) + " = " + std::to_string(row.degree) + " but the Moebius count is " +
                         std::to_string(row.predicted));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pfs
