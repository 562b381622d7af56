#pragma once

// Dense univariate polynomials over Z and polynomials in nu with Z[c]
// coefficients. All operations are pure; objects are immutable values.

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

#include <json.hpp>

namespace pfs {

using BigInt = mpz_class;
using BigRational = mpq_class;

class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  /// Coefficients listed constant term first.
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const BigInt& value);
  /// value * x^degree
  static IntPoly monomial(const BigInt& value, std::size_t degree);
  static IntPoly x() { return monomial(1, 1); }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Coefficient of x^i; zero beyond the degree.
  BigInt coeff(std::size_t i) const;
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  /// Leading coefficient; zero for the zero polynomial.
  BigInt leading() const;

  BigInt eval(const BigInt& x) const;
  /// Evaluate at a floating point argument of any field type T.
  template <class T>
  T eval_as(const T& x) const {
    T acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + T(it->get_d());
    return acc;
  }

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& rhs);
  IntPoly& operator-=(const IntPoly& rhs);
  IntPoly& operator*=(const IntPoly& rhs);
  IntPoly& operator*=(const BigInt& scalar);

  friend IntPoly operator+(IntPoly lhs, const IntPoly& rhs) { return lhs += rhs; }
  friend IntPoly operator-(IntPoly lhs, const IntPoly& rhs) { return lhs -= rhs; }
  friend IntPoly operator*(const IntPoly& lhs, const IntPoly& rhs);
  friend IntPoly operator*(IntPoly lhs, const BigInt& rhs) { return lhs *= rhs; }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

  IntPoly pow(unsigned exponent) const;

  /// Human readable form in the given variable, highest degree first.
  std::string to_string(const std::string& var = "c") const;

 private:
  void normalize();
  std::vector<BigInt> coeffs_;
};

/// Polynomial in nu whose coefficients are polynomials in c.
class BivarPoly {
 public:
  BivarPoly() = default;
  explicit BivarPoly(std::vector<IntPoly> nu_coeffs);

  int degree_nu() const noexcept { return static_cast<int>(nu_coeffs_.size()) - 1; }
  /// Maximum c-degree over all nu-coefficients.
  int degree_c() const noexcept;
  bool is_zero() const noexcept { return nu_coeffs_.empty(); }
  const std::vector<IntPoly>& nu_coeffs() const noexcept { return nu_coeffs_; }
  const IntPoly& nu_coeff(std::size_t k) const;

  /// Specialize nu to an integer, leaving a polynomial in c.
  IntPoly at_nu(const BigInt& nu) const;

 private:
  std::vector<IntPoly> nu_coeffs_;
};

IntPoly add(const IntPoly& p, const IntPoly& q);
IntPoly mul(const IntPoly& p, const IntPoly& q);

/// Exact quotient p / q over Z. Throws NonDivisible on any nonzero remainder
/// or non-integral quotient coefficient.
IntPoly exact_div(const IntPoly& p, const IntPoly& q);
/// Divide every coefficient by an integer that must divide it.
IntPoly exact_div(const IntPoly& p, const BigInt& q);

IntPoly derivative(const IntPoly& p);

/// lc(q)^(deg p - deg q + 1) * p = quotient * q + remainder.
IntPoly pseudo_remainder(const IntPoly& p, const IntPoly& q);

/// Nonnegative gcd of the coefficients.
BigInt content(const IntPoly& p);
/// p / content(p), sign preserved.
IntPoly primitive_part(const IntPoly& p);

/// Res(p, q) = lc(p)^deg(q) * prod q(alpha) over the roots alpha of p,
/// computed with the subresultant pseudo-remainder sequence.
BigInt resultant(const IntPoly& p, const IntPoly& q);

/// S(nu) = Res_c(p, r(c, nu)) by evaluation at integer nodes and exact
/// interpolation. Nodes run 0, 1, -1, 2, -2, ... skipping any node where the
/// c-degree of r drops.
IntPoly resultant_bivar(const IntPoly& p, const BivarPoly& r, int threads = 1);

/// u with u^k = p exactly; u(0) = 1 when p(0) = 1. Throws NotAPower.
IntPoly power_series_root(const IntPoly& p, unsigned k);

/// Primitive gcd with positive leading coefficient.
IntPoly gcd(const IntPoly& p, const IntPoly& q);

/// Newton interpolation through (x_i, y_i) over Q; throws NonIntegral unless
/// every coefficient is an integer.
IntPoly interpolate_integer(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys);

// JSON: array of decimal strings, constant term first.
void to_json(nlohmann::json& j, const IntPoly& p);
void from_json(const nlohmann::json& j, IntPoly& p);

}  // namespace pfs
