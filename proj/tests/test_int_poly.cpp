#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pfspectra/errors.hpp"
#include "pfspectra/int_poly.hpp"

using namespace pfs;
using pfs::testing::random_poly;
using pfs::testing::sylvester_resultant;

namespace {

const IntPoly kC{0, 1};
const IntPoly kG3{0, 1, 1, 2, 1};      // c^4 + 2c^3 + c^2 + c
const IntPoly kH3{1, 1, 2, 1};         // c^3 + 2c^2 + c + 1
const IntPoly kUpsilon3{1, 3, 2, 1};   // nu^3 + 2nu^2 + 3nu + 1

}  // namespace

TEST_CASE("add") {
  CHECK(add(kC, IntPoly{0, 1, 1}) == IntPoly{0, 2, 1});
  CHECK(add(kG3, IntPoly{}) == kG3);
  CHECK(add(IntPoly{1, 1, 2, 1}, IntPoly{-1, -1, -2, -1}).is_zero());
  CHECK(add(IntPoly{1, 1, 2, 1}, IntPoly{-1, -1, -2, -1}).degree() == -1);
}

TEST_CASE("mul") {
  CHECK(mul(kC, kH3) == kG3);
  CHECK(mul(kG3, IntPoly{1}) == kG3);
  CHECK(mul(IntPoly{1, 1}, IntPoly{1, 1}) == IntPoly{1, 2, 1});
  CHECK(mul(kG3, kH3).degree() == 7);
}

TEST_CASE("exact_div") {
  CHECK(exact_div(kG3, kC) == kH3);
  CHECK(exact_div(kG3, kG3) == IntPoly{1});
  CHECK_THROWS_AS(exact_div(IntPoly{0, 1, 1}, IntPoly{2, 1}), NonDivisible);
  CHECK_THROWS_AS(exact_div(IntPoly{1, 0, 2}, IntPoly{0, 2}), NonDivisible);
}

TEST_CASE("derivative") {
  CHECK(derivative(IntPoly{0, 1, 1}) == IntPoly{1, 2});
  CHECK(derivative(IntPoly{7}).is_zero());
  CHECK(derivative(kG3) == IntPoly{1, 2, 6, 4});
}

TEST_CASE("resultant examples") {
  CHECK(resultant(kC, IntPoly{1, 1}) == 1);
  const IntPoly g2{0, 1, 1};
  const BigInt r = resultant(g2, derivative(g2));
  CHECK(r == sylvester_resultant(g2, derivative(g2)));
  CHECK(mpz_odd_p(r.get_mpz_t()));
  CHECK_THROWS_AS(resultant(IntPoly{}, kC), ZeroInput);
  // constants
  CHECK(resultant(IntPoly{3}, IntPoly{0, 0, 1}) == 9);
  CHECK(resultant(IntPoly{0, 0, 1}, IntPoly{3}) == 9);
}

TEST_CASE("resultant agrees with the Sylvester determinant") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const IntPoly p = random_poly(rng, 7, 50);
    const IntPoly q = random_poly(rng, 7, 50);
    REQUIRE(resultant(p, q) == sylvester_resultant(p, q));
  }
}

TEST_CASE("resultant symmetry and vanishing") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const IntPoly p = random_poly(rng, 6, 20);
    const IntPoly q = random_poly(rng, 6, 20);
    const int sign = (p.degree() * q.degree()) % 2 ? -1 : 1;
    CHECK(resultant(p, q) == sign * resultant(q, p));

    IntPoly shared = random_poly(rng, 3, 20);
    if (shared.degree() < 1) shared = IntPoly{1, 1};
    const IntPoly a = p * shared;
    const IntPoly b = q * shared;
    CHECK(resultant(a, b) == 0);
    CHECK(gcd(a, b).degree() >= 1);
    CHECK((resultant(p, q) == 0) == (gcd(p, q).degree() >= 1));
  }
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const IntPoly p = random_poly(rng, 8, 1000000);
    const IntPoly q = random_poly(rng, 8, 1000000);
    const IntPoly r = random_poly(rng, 8, 1000000);
    REQUIRE((p + q) * r == p * r + q * r);
    REQUIRE(p * q == q * p);
    REQUIRE((p * q) * r == p * (q * r));
    if (!q.is_zero()) REQUIRE(exact_div(p * q, q) == p);
  }
}

TEST_CASE("gcd") {
  CHECK(gcd(IntPoly{0, 1, 1}, kC) == kC);
  CHECK(gcd(IntPoly{0, 6, 4}, IntPoly{}) == IntPoly{0, 3, 2});
  CHECK(gcd(IntPoly{0, -2, -4}, IntPoly{}) == IntPoly{0, 1, 2});
  CHECK(gcd(kUpsilon3, derivative(kUpsilon3)) == IntPoly{1});
  CHECK(gcd(IntPoly{-1, 0, 1}, IntPoly{1, 2, 1}) == IntPoly{1, 1});
  CHECK_THROWS_AS(gcd(IntPoly{}, IntPoly{}), ZeroInput);
}

TEST_CASE("power_series_root") {
  CHECK(power_series_root(IntPoly{1, 2, 1}, 2) == IntPoly{1, 1});
  CHECK(power_series_root(kG3, 1) == kG3);
  CHECK(power_series_root(kUpsilon3 * kUpsilon3, 2) == kUpsilon3);
  CHECK(power_series_root(IntPoly{-1, -3, -3, -1}, 3) == IntPoly{-1, -1});
  CHECK_THROWS_AS(power_series_root(IntPoly{1, 1}, 2), NotAPower);
  CHECK_THROWS_AS(power_series_root(IntPoly{1, 2, 2}, 2), NotAPower);
  CHECK_THROWS_AS(power_series_root(IntPoly{4, 4, 1}, 2), NotAPower);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    IntPoly u = random_poly(rng, 6, 30);
    std::vector<BigInt> c = u.coeffs();
    c[0] = 1;
    u = IntPoly(c);
    for (unsigned k : {2u, 3u, 4u}) REQUIRE(power_series_root(u.pow(k), k) == u);
  }
}

TEST_CASE("interpolation rejects non-integral data") {
  const std::vector<BigInt> xs{0, 1, 2};
  CHECK(interpolate_integer(xs, {1, 2, 5}) == IntPoly{1, 0, 1});
  CHECK_THROWS_AS(interpolate_integer(xs, {0, 1, 3}), NonIntegral);
}

TEST_CASE("resultant_bivar for the period-3 quadratic data") {
  // R(c, nu) = 1 + G_2 nu + G_2 G_1 nu^2 for D = 2, m = 3.
  const IntPoly g1 = kC;
  const IntPoly g2{0, 1, 1};
  const BivarPoly r({IntPoly{1}, g2, g2 * g1});
  const IntPoly s = resultant_bivar(kH3, r);
  // (1 - nu)^3 (nu^3 + 2 nu^2 + 3 nu + 1), expanded by hand.
  CHECK(s == IntPoly{1, 0, -4, 3, 0, 1, -1});
  CHECK(s.eval(2) == resultant(kH3, r.at_nu(2)));
  CHECK(s.eval(2) == sylvester_resultant(kH3, r.at_nu(2)));
}

TEST_CASE("resultant_bivar degenerate and random cases") {
  const IntPoly p{2, 0, 1};
  const BivarPoly constant_in_c({IntPoly{3}, IntPoly{1}});  // 3 + nu
  const IntPoly s = resultant_bivar(p, constant_in_c);
  // Res(p, 3 + nu) = (3 + nu)^2
  CHECK(s == IntPoly{9, 6, 1});

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    IntPoly a = random_poly(rng, 4, 9);
    if (a.degree() < 1) a = IntPoly{1, 2, 1};
    std::vector<IntPoly> nu_coeffs;
    for (int k = 0; k < 3; ++k) nu_coeffs.push_back(random_poly(rng, 3, 9));
    const BivarPoly b(nu_coeffs);
    const IntPoly sab = resultant_bivar(a, b, 2);
    std::uniform_int_distribution<long> pick(-40, 40);
    for (int j = 0; j < 5; ++j) {
      const BigInt nu = pick(rng);
      const IntPoly spec = b.at_nu(nu);
      if (spec.degree() != b.degree_c() || spec.is_zero()) continue;
      REQUIRE(sab.eval(nu) == sylvester_resultant(a, spec));
    }
  }
}

TEST_CASE("json serialization") {
  IntPoly big = IntPoly{1} * BigInt("123456789012345678901234567890");
  big += kG3;
  const nlohmann::json j = big;
  CHECK(j.is_array());
  CHECK(j[0].get<std::string>() == "123456789012345678901234567890");
  CHECK(j.get<IntPoly>() == big);
  CHECK_THROWS_AS(nlohmann::json::parse(R"([1, 2])").get<IntPoly>(), InvalidArgument);
  CHECK_THROWS_AS(nlohmann::json::parse(R"(["1x"])").get<IntPoly>(), InvalidArgument);
}
