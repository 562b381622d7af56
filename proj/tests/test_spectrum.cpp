#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "pfspectra/errors.hpp"
#include "pfspectra/gleason.hpp"
#include "pfspectra/spectrum.hpp"

using namespace pfs;

namespace {

const CenterRecord& airplane() {
  static const CenterRecord r = find_centers(2, 3).front();
  return r;
}

/// Real root of nu^3 + 2 nu^2 + 3 nu + 1 by bisection.
double upsilon3_real_root() {
  auto u = [](double x) { return ((x + 2) * x + 3) * x + 1; };
  double lo = -1.0, hi = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (u(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// det(lambda I - A) by LU, independent of the Berkowitz recursion.
Complex det_oracle(const Eigen::MatrixXcd& a, const Complex& lambda) {
  const Eigen::MatrixXcd m = lambda * Eigen::MatrixXcd::Identity(a.rows(), a.cols()) - a;
  return m.partialPivLu().determinant();
}

}  // namespace

TEST_CASE("airplane spectrum") {
  const auto& rec = airplane();
  const Complex c = rec.center;
  const Complex big_delta2 = 4.0 * c * (c * c + c);
  const auto s = compute_spectrum(rec);
  REQUIRE(s.eigenvalues.size() == 1);
  const Complex lambda = s.eigenvalues[0].value;
  CHECK(std::abs(lambda - 2.0 / big_delta2) < 1e-12);
  CHECK(std::abs(lambda - Complex(upsilon3_real_root() / 2, 0)) < 1e-12);
  CHECK(std::abs(lambda - Complex(-0.21508, 0)) < 1e-5);
  CHECK(s.division_remainder < 1e-10);
  CHECK(gap_check(s));
  CHECK(s.gap_ok);
  // chi2 has roots 1/2 and lambda.
  CHECK(std::abs(s.chi2_coeffs[0] - 0.5 * lambda) < 1e-12);
  CHECK(std::abs(s.chi2_coeffs[1] + 0.5 + lambda) < 1e-12);
}

TEST_CASE("rabbit pair") {
  const auto centers = find_centers(2, 3);
  std::vector<Complex> found;
  for (std::size_t i = 1; i < 3; ++i) found.push_back(compute_spectrum(centers[i]).eigenvalues[0].value);
  // Complex pair of nu^3 + 2 nu^2 + 3 nu + 1 from the deflated quadratic, halved.
  const double r = upsilon3_real_root();
  const double b = r + 2, k = r * r + 2 * r + 3;
  const Complex nu = (-b + std::sqrt(Complex(b * b - 4 * k))) / 2.0;
  const Complex expected = nu / 2.0;
  const bool hit = std::abs(found[0] - expected) < 1e-12 || std::abs(found[1] - expected) < 1e-12;
  CHECK(hit);
  CHECK(std::abs(expected - Complex(-0.39256, 0.65355)) < 2e-4);
  CHECK(std::abs(found[0] - std::conj(found[1])) < 1e-12);
}

TEST_CASE("period 4 spectra") {
  std::size_t total = 0;
  for (const auto& rec : find_centers(2, 4)) {
    const auto s = compute_spectrum(rec);
    total += s.eigenvalues.size();
    for (const auto& e : s.eigenvalues) {
      CHECK(std::abs(e.value) > 0.125);
      CHECK(std::abs(e.value) < 1.0);
    }
  }
  CHECK(total == 12);
}

TEST_CASE("small periods") {
  const auto one = find_centers(2, 1).front();
  CHECK_THROWS_AS(chi2_from_orbit(one), DimensionTooSmall);
  const auto basilica = find_centers(2, 2).front();
  auto s = chi2_from_orbit(basilica);
  CHECK(s.chi2_coeffs.size() == 2);
  CHECK(std::abs(s.chi2_coeffs[0] + 0.5) < 1e-15);
  CHECK_THROWS_AS(eigenvalues(s), DimensionTooSmall);

  SpectrumResult edge;
  edge.center = basilica;
  edge.eigenvalues.push_back({Complex(1.0 / 8.0, 0.0), 0.0});
  CHECK_FALSE(gap_check(edge, 0.0));
}

TEST_CASE("derivative identity") {
  const auto& rec = airplane();
  const auto s = compute_spectrum(rec);
  const auto id = derivative_identity_check(rec, s);
  CHECK(id.relative <= 1e-8);
  CHECK(id.normalized_relative <= 1e-8);
  for (const auto& r : find_centers(3, 3)) {
    const auto t = compute_spectrum(r);
    CHECK(derivative_identity_check(r, t).passed());
  }
}

TEST_CASE("spectral invariants over surveys") {
  for (int D : {2, 3}) {
    const int M = D == 2 ? 10 : 7;
    for (int m = 3; m <= M; ++m) {
      for (const auto& rec : find_centers(D, m)) {
        const auto s = compute_spectrum(rec);
        CHECK(s.eigenvalues.size() == static_cast<std::size_t>(m - 2));
        CHECK(s.gap_ok);
        CHECK(s.division_remainder < 1e-10);
        CHECK(s.reconstruction_error < 1e-8);
        CHECK(derivative_identity_check(rec, s).passed());
        for (std::size_t j = 1; j < rec.deltas.size(); ++j) CHECK(std::abs(rec.deltas[j]) <= 2.0 * D + 1e-12);
      }
    }
  }
}

TEST_CASE("conjugate parameters give conjugate spectra") {
  const auto centers = find_centers(2, 6);
  for (const auto& rec : centers) {
    if (rec.center.imag() <= 0) continue;
    const auto twin = std::find_if(centers.begin(), centers.end(),
                                   [&](const CenterRecord& r) { return std::abs(r.center - std::conj(rec.center)) < 1e-12; });
    REQUIRE(twin != centers.end());
    std::vector<Complex> a, b;
    for (const auto& e : compute_spectrum(rec).eigenvalues) a.push_back(std::conj(e.value));
    for (const auto& e : compute_spectrum(*twin).eigenvalues) b.push_back(e.value);
    CHECK(matching_distance(a, b) < 1e-10);
  }
}

TEST_CASE("explicit matrix") {
  const auto& rec = airplane();
  const auto a = build_matrix_explicit(rec);
  REQUIRE(a.size == 3);
  for (int r = 0; r < 3; ++r) CHECK(std::abs(a.entries(r, 0)) == 0.0);
  const Complex a1 = 1.0 / rec.deltas[1];
  const Complex a2 = 1.0 / rec.deltas[2];
  CHECK(std::abs(a.entries(1, 1) + a1) < 1e-15);
  CHECK(std::abs(a.entries(2, 1) - a1) < 1e-15);
  CHECK(std::abs(a.entries(1, 2) + a2) < 1e-15);
  CHECK(std::abs(a.entries(0, 2) - a2) < 1e-15);

  for (int D : {2, 3}) {
    for (const auto& r : find_centers(D, D == 2 ? 7 : 5)) {
      const auto m = build_matrix_explicit(r);
      const auto chi2 = chi2_from_orbit(r).chi2_coeffs;
      const auto cp = characteristic_polynomial(m.entries);
      REQUIRE(cp.size() == chi2.size() + 1);
      CHECK(std::abs(cp[0]) < 1e-14);
      for (std::size_t j = 0; j < chi2.size(); ++j) CHECK(std::abs(cp[j + 1] - chi2[j]) < 1e-10);
      for (Complex z : {Complex(0.3, 0.2), Complex(-0.7, 0.1), Complex(1.1, -0.4)}) {
        Complex v(0.0);
        for (auto it = cp.rbegin(); it != cp.rend(); ++it) v = v * z + *it;
        CHECK(std::abs(v - det_oracle(m.entries, z)) < 1e-10 * std::max(1.0, std::abs(v)));
      }
    }
  }
}

TEST_CASE("residue matrix matches the explicit one") {
  for (int D : {2, 3}) {
    for (int period : {3, 5}) {
      for (const auto& r : find_centers(D, period)) {
        const auto e = build_matrix_explicit(r);
        const auto q = build_matrix_residues(D, r.center, r.orbit);
        CHECK((e.entries - q.entries).cwiseAbs().maxCoeff() < 1e-8);

        std::vector<Complex> expected{0.0, 1.0 / D};
        if (period >= 3)
          for (const auto& ev : compute_spectrum(r).eigenvalues) expected.push_back(ev.value);
        CHECK(matching_distance(matrix_eigenvalues(q.entries), expected) < 1e-8);
      }
    }
  }
  CHECK_THROWS_AS(build_matrix_residues(2, -1.0, {0.0, 0.0}), ContourTooClose);
}

TEST_CASE("r_D") {
  CHECK(r_constant(2) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(r_constant(3) == doctest::Approx(1.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-14));
  CHECK(r_constant(3) == doctest::Approx(0.19245).epsilon(1e-4));
  CHECK(r_constant(4) == doctest::Approx(0.125).epsilon(1e-15));
}
