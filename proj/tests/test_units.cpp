#include <doctest.h>

#include <chrono>

#include "oracles.hpp"
#include "pfspectra/errors.hpp"
#include "pfspectra/units.hpp"

using namespace pfs;

namespace {

std::vector<SpectrumResult> survey(int D, int m) {
  std::vector<SpectrumResult> out;
  for (const auto& r : find_centers(D, m)) out.push_back(compute_spectrum(r));
  return out;
}

}  // namespace

TEST_CASE("R coefficients") {
  const GleasonTower t = build_tower(2, 3);
  const BivarPoly r = build_R(t, 3);
  REQUIRE(r.degree_nu() == 2);
  CHECK(r.nu_coeff(0) == IntPoly{1});
  CHECK(r.nu_coeff(1) == IntPoly{0, 1, 1});
  CHECK(r.nu_coeff(2) == IntPoly{0, 0, 1, 1});
}

TEST_CASE("period 3 certificate for D = 2") {
  const GleasonTower t = build_tower(2, 3);
  const UnitCertificate c = certify(t, 3);
  CHECK(c.passed());
  CHECK(c.upsilon == IntPoly{1, 3, 2, 1});
  CHECK(c.s == IntPoly{1, -1}.pow(3) * IntPoly{1, 3, 2, 1});
  CHECK(c.s.degree() == 6);
  CHECK(c.constant_coeff == 1);
  CHECK(abs(c.leading_coeff) == 1);
  CHECK(c.squarefree);
  // S_3(2) against a Sylvester determinant of the specialised R.
  CHECK(c.s.eval(2) == pfs::testing::sylvester_resultant(t.H(3), build_R(t, 3).at_nu(2)));
}

TEST_CASE("closed form for Upsilon_3") {
  CHECK(upsilon3_closed_form(2) == IntPoly{1, 3, 2, 1});
  CHECK(upsilon3_closed_form(3) == IntPoly{1, 4, 6, 3, 1});
  for (int D = 2; D <= 7; ++D) {
    CHECK(upsilon3_closed_form(D).coeff(0) == 1);
    const UnitCertificate c = certify(build_tower(D, 3), 3);
    CHECK(c.passed());
    CHECK(c.upsilon == upsilon3_closed_form(D));
    CHECK(c.squarefree);
  }
}

TEST_CASE("certificates for small periods") {
  for (int D : {2, 3}) {
    const int M = D == 2 ? 5 : 4;
    const GleasonTower t = build_tower(D, M);
    for (int m = 3; m <= M; ++m) {
      const UnitCertificate c = certify(t, m, false, 2);
      CHECK(c.passed());
      CHECK(c.s.eval(0) == 1);
      CHECK(c.upsilon.coeff(0) == 1);
    }
  }
}

TEST_CASE("cross-check against numeric spectra") {
  for (auto [D, m] : {std::pair{2, 3}, std::pair{2, 4}, std::pair{2, 5}, std::pair{3, 3}, std::pair{3, 4}}) {
    const UnitCertificate c = certify(build_tower(D, m), m);
    const auto report = crosscheck_numeric(c, survey(D, m));
    CHECK(report.passed);
    CHECK(report.distance <= 1e-6);
    CHECK_FALSE(report.omega_collision);
    CHECK(report.orbit_groups * static_cast<std::size_t>(D - 1) == static_cast<std::size_t>(c.h_degree));
  }
  const UnitCertificate c = certify(build_tower(2, 4), 4);
  auto partial = survey(2, 4);
  partial.pop_back();
  CHECK_THROWS_AS(crosscheck_numeric(c, partial), IncompleteSurvey);
}

TEST_CASE("ceiling and preconditions") {
  const GleasonTower t = build_tower(2, 8);
  CHECK_THROWS_AS(certify(t, 8), ExactCeiling);
  CHECK_THROWS_AS(certify(t, 2), DimensionTooSmall);
  CHECK(within_exact_ceiling(2, 7));
  CHECK_FALSE(within_exact_ceiling(3, 6));
  CHECK(certify_cost_estimate(2, 8).find("deg H_m = 120") != std::string::npos);
}
