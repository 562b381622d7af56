#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pfspectra/equidist.hpp"
#include "pfspectra/errors.hpp"

using namespace pfs;

TEST_CASE("anchor at c = -2") {
  const AnchorSpec a = make_anchor(2, -2.0);
  CHECK(a.preperiod == 2);
  CHECK(std::abs(a.beta - Complex(2.0)) < 1e-15);
  CHECK(std::abs(a.multiplier - Complex(4.0)) < 1e-15);
  // 1/|mu| sits inside the spectral annulus.
  CHECK(1.0 / std::abs(a.multiplier) > 1.0 / 8.0);
  CHECK(1.0 / std::abs(a.multiplier) < 1.0);
}

TEST_CASE("rejected anchors") {
  CHECK_THROWS_AS(make_anchor(2, Complex(0.0, 1.0)), InvalidArgument);  // lands on a 2-cycle
  CHECK_THROWS_AS(make_anchor(2, -1.0), InvalidArgument);                // a center
  CHECK_THROWS_AS(make_anchor(2, 1.0), InvalidArgument);                 // escapes
  CHECK_THROWS_AS(make_anchor(1, -2.0), InvalidArgument);
}

TEST_CASE("center sequence approaches the anchor") {
  const AnchorSpec a = make_anchor(2, -2.0);
  std::vector<int> periods;
  for (int m = 10; m <= 24; ++m) periods.push_back(m);
  const auto centers = generate_center_sequence(a, periods);
  REQUIRE(centers.size() == periods.size());
  double prev = INFINITY;
  for (const auto& r : centers) {
    const double d = std::abs(to_complex(r.center_ext() - to_ext(a.c0)));
    CHECK(d < prev);
    prev = d;
    CHECK(r.newton_residual <= 1e-13);
  }
  CHECK_THROWS_AS(generate_center_sequence(a, {2}), NoNearbyCenter);
}

TEST_CASE("moments of simple samples") {
  const auto one = measure_from_samples({Complex(0.6, 0.8)});
  for (int k = -10; k <= 10; ++k) CHECK(std::abs(one.moment(k) - std::pow(Complex(0.6, 0.8), k)) < 1e-14);

  std::vector<Complex> roots;
  for (int j = 0; j < 64; ++j) roots.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / 64));
  const auto uniform = measure_from_samples(roots);
  CHECK(std::abs(uniform.moment(0) - Complex(1.0)) < 1e-15);
  CHECK(uniform.max_moment() < 1e-13);
  CHECK(uniform.radial_deviation < 1e-15);
}

TEST_CASE("calibration on random uniform samples") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const int trials = 300;
  const std::size_t n = 400;
  int within = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<Complex> s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(std::polar(1.0, angle(rng)));
    const auto m = measure_from_samples(s);
    CHECK(std::abs(m.moment(0) - Complex(1.0)) < 1e-12);
    if (m.max_moment() <= 3.0 / std::sqrt(static_cast<double>(n))) ++within;
  }
  CHECK(within >= static_cast<int>(0.99 * trials));
}

TEST_CASE("trend test") {
  std::vector<PeriodRow> flat;
  for (int m : {12, 16, 20, 24}) flat.push_back({m, 10, 0.1, 0.02, 1.0, 0.0, true});
  const auto report = equidistribution_test(flat);
  CHECK(report.moment_slope == 0.0);
  CHECK_FALSE(report.passed);
  CHECK(least_squares_slope({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0));
  CHECK_THROWS(least_squares_slope({1}, {1}));
}

TEST_CASE("equidistribution near c = -2") {
  const AnchorSpec a = make_anchor(2, -2.0);
  const auto report = run_equidistribution(a, {12, 16, 20, 24});
  CHECK(report.passed);
  CHECK(report.moment_slope < 0.0);
  CHECK(report.radial_slope < 0.0);
  for (const auto& row : report.rows) {
    CHECK(row.samples == static_cast<std::size_t>(row.period - 2));
    CHECK(row.gap_ok);
  }
  CHECK(std::abs(report.rows.back().mean_radius - 1.0) < 0.15);
}
