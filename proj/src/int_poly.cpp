#include "pfspectra/int_poly.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "pfspectra/errors.hpp"
#include "pfspectra/parallel.hpp"

namespace pfs {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPoly IntPoly::constant(const BigInt& value) { return IntPoly(std::vector<BigInt>{value}); }

IntPoly IntPoly::monomial(const BigInt& value, std::size_t degree) {
  std::vector<BigInt> c(degree + 1);
  c[degree] = value;
  return IntPoly(std::move(c));
}

void IntPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

BigInt IntPoly::leading() const { return coeffs_.empty() ? BigInt(0) : coeffs_.back(); }

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  normalize();
  return *this;
}

IntPoly operator*(const IntPoly& lhs, const IntPoly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<BigInt> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    if (lhs.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
      mpz_addmul(out[i + j].get_mpz_t(), lhs.coeffs_[i].get_mpz_t(), rhs.coeffs_[j].get_mpz_t());
  }
  return IntPoly(std::move(out));
}

IntPoly& IntPoly::operator*=(const IntPoly& rhs) { return *this = *this * rhs; }

IntPoly& IntPoly::operator*=(const BigInt& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  normalize();
  return *this;
}

IntPoly IntPoly::pow(unsigned exponent) const {
  IntPoly result = constant(1);
  IntPoly base = *this;
  while (exponent) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent) base *= base;
  }
  return result;
}

std::string IntPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag;
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

BivarPoly::BivarPoly(std::vector<IntPoly> nu_coeffs) : nu_coeffs_(std::move(nu_coeffs)) {
  while (!nu_coeffs_.empty() && nu_coeffs_.back().is_zero()) nu_coeffs_.pop_back();
}

int BivarPoly::degree_c() const noexcept {
  int d = -1;
  for (const auto& p : nu_coeffs_) d = std::max(d, p.degree());
  return d;
}

const IntPoly& BivarPoly::nu_coeff(std::size_t k) const {
  static const IntPoly zero;
  return k < nu_coeffs_.size() ? nu_coeffs_[k] : zero;
}

IntPoly BivarPoly::at_nu(const BigInt& nu) const {
  IntPoly acc;
  for (auto it = nu_coeffs_.rbegin(); it != nu_coeffs_.rend(); ++it) {
    acc *= nu;
    acc += *it;
  }
  return acc;
}

IntPoly add(const IntPoly& p, const IntPoly& q) { return p + q; }
IntPoly mul(const IntPoly& p, const IntPoly& q) { return p * q; }

IntPoly exact_div(const IntPoly& p, const IntPoly& q) {
  if (q.is_zero()) throw NonDivisible("division by the zero polynomial");
  if (p.is_zero()) return {};
  if (p.degree() < q.degree()) throw NonDivisible("dividend degree below divisor degree");
  std::vector<BigInt> rem = p.coeffs();
  const std::size_t dq = static_cast<std::size_t>(q.degree());
  const BigInt& lc = q.coeffs().back();
  std::vector<BigInt> quot(rem.size() - dq);
  for (std::size_t k = quot.size(); k-- > 0;) {
    BigInt& top = rem[k + dq];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t()))
      throw NonDivisible("quotient coefficient is not integral");
    BigInt t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    for (std::size_t j = 0; j <= dq; ++j)
      mpz_submul(rem[k + j].get_mpz_t(), t.get_mpz_t(), q.coeffs()[j].get_mpz_t());
    quot[k] = std::move(t);
  }
  for (std::size_t j = 0; j < dq; ++j)
    if (rem[j] != 0) throw NonDivisible("nonzero remainder");
  return IntPoly(std::move(quot));
}

IntPoly exact_div(const IntPoly& p, const BigInt& q) {
  if (q == 0) throw NonDivisible("division by zero");
  std::vector<BigInt> out(p.coeffs().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!mpz_divisible_p(p.coeffs()[i].get_mpz_t(), q.get_mpz_t()))
      throw NonDivisible("coefficient not divisible by scalar");
    mpz_divexact(out[i].get_mpz_t(), p.coeffs()[i].get_mpz_t(), q.get_mpz_t());
  }
  return IntPoly(std::move(out));
}

IntPoly derivative(const IntPoly& p) {
  if (p.degree() < 1) return {};
  std::vector<BigInt> out(p.coeffs().size() - 1);
  for (std::size_t i = 1; i < p.coeffs().size(); ++i) out[i - 1] = p.coeffs()[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(out));
}

IntPoly pseudo_remainder(const IntPoly& p, const IntPoly& q) {
  if (q.is_zero()) throw ZeroInput("pseudo-remainder by zero");
  if (p.degree() < q.degree()) return p;
  std::vector<BigInt> rem = p.coeffs();
  const std::size_t dq = static_cast<std::size_t>(q.degree());
  const BigInt& lc = q.coeffs().back();
  // One multiplication by lc per eliminated position gives exactly
  // lc^(deg p - deg q + 1).
  for (std::size_t top = rem.size(); top-- > dq;) {
    BigInt t = rem[top];
    for (std::size_t j = 0; j < top; ++j) rem[j] *= lc;
    rem[top] = 0;
    if (t != 0) {
      const std::size_t shift = top - dq;
      for (std::size_t j = 0; j < dq; ++j) mpz_submul(rem[shift + j].get_mpz_t(), t.get_mpz_t(), q.coeffs()[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(rem));
}

BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& c : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  BigInt g = content(p);
  return g == 1 ? p : exact_div(p, g);
}

namespace {

BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace

BigInt resultant(const IntPoly& p, const IntPoly& q) {
  if (p.is_zero() || q.is_zero()) throw ZeroInput("resultant of a zero polynomial");
  IntPoly a = p;
  IntPoly b = q;
  int s = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if ((a.degree() & 1) && (b.degree() & 1)) s = -1;
  }
  if (b.degree() == 0) return s * ipow(b.leading(), static_cast<unsigned long>(a.degree()));

  const BigInt ca = content(a);
  const BigInt cb = content(b);
  BigInt t = ipow(ca, static_cast<unsigned long>(b.degree())) * ipow(cb, static_cast<unsigned long>(a.degree()));
  a = exact_div(a, ca);
  b = exact_div(b, cb);
  BigInt g = 1;
  BigInt h = 1;
  for (;;) {
    const int da = a.degree();
    const int db = b.degree();
    const unsigned long delta = static_cast<unsigned long>(da - db);
    if ((da & 1) && (db & 1)) s = -s;
    IntPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    if (r.is_zero()) return 0;
    b = exact_div(r, g * ipow(h, delta));
    g = a.leading();
    // h <- h^(1 - delta) g^delta
    if (delta > 0) {
      BigInt num = ipow(g, delta);
      BigInt den = ipow(h, delta - 1);
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (b.degree() == 0) {
      const unsigned long dA = static_cast<unsigned long>(a.degree());
      BigInt num = ipow(b.leading(), dA);
      BigInt den = ipow(h, dA - 1);
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      return s * t * h;
    }
  }
}

IntPoly interpolate_integer(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys) {
  const std::size_t n = xs.size();
  if (n == 0 || ys.size() != n) throw InvalidArgument("interpolation needs matching nonempty node lists");
  // Divided differences in place.
  std::vector<BigRational> dd(ys.begin(), ys.end());
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / BigRational(xs[i] - xs[i - level]);
      dd[i].canonicalize();
    }
  }
  // Horner expansion of the Newton form.
  std::vector<BigRational> poly(n);
  poly[0] = dd[n - 1];
  std::size_t len = 1;
  for (std::size_t k = n - 1; k-- > 0;) {
    // poly <- poly * (x - xs[k]) + dd[k]
    poly[len] = 0;
    for (std::size_t j = len; j > 0; --j) poly[j] = poly[j - 1] - poly[j] * xs[k];
    poly[0] = -poly[0] * xs[k];
    ++len;
    poly[0] += dd[k];
  }
  std::vector<BigInt> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    poly[i].canonicalize();
    if (poly[i].get_den() != 1) throw NonIntegral("interpolated coefficient of degree " + std::to_string(i) + " is not an integer");
    out[i] = poly[i].get_num();
  }
  return IntPoly(std::move(out));
}

IntPoly resultant_bivar(const IntPoly& p, const BivarPoly& r, int threads) {
  if (p.is_zero()) throw ZeroInput("resultant_bivar with zero first argument");
  if (r.is_zero()) throw ZeroInput("resultant_bivar with zero bivariate argument");
  const int dc = r.degree_c();
  // Leading c-coefficient as a polynomial in nu; its integer roots are the
  // only nodes where the c-degree drops.
  std::vector<BigInt> lead_c(r.nu_coeffs().size());
  for (std::size_t k = 0; k < lead_c.size(); ++k) lead_c[k] = r.nu_coeffs()[k].coeff(static_cast<std::size_t>(dc));
  const IntPoly lead(std::move(lead_c));
  const std::size_t max_skips = static_cast<std::size_t>(std::max(0, lead.degree()));

  const std::size_t points = static_cast<std::size_t>(p.degree()) * static_cast<std::size_t>(std::max(0, r.degree_nu())) + 1;
  std::vector<BigInt> nodes;
  nodes.reserve(points);
  std::size_t skipped = 0;
  for (long k = 0; nodes.size() < points; ++k) {
    // 0, 1, -1, 2, -2, ...
    const long v = (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
    const BigInt nu = v;
    if (lead.eval(nu) == 0) {
      if (++skipped > max_skips) throw DegreeDrop("too many degree-dropping nodes");
      continue;
    }
    nodes.push_back(nu);
  }
  std::vector<BigInt> values(nodes.size());
  parallel_for(nodes.size(), threads, [&](std::size_t i) {
    const IntPoly spec = r.at_nu(nodes[i]);
    values[i] = resultant(p, spec);
  });
  return interpolate_integer(nodes, values);
}

IntPoly power_series_root(const IntPoly& p, unsigned k) {
  if (k == 0) throw InvalidArgument("root order must be positive");
  if (k == 1) return p;
  if (p.is_zero()) throw NotAPower("zero polynomial");
  const BigInt p0 = p.coeff(0);
  BigInt u0;
  if (p0 == 1) {
    u0 = 1;
  } else if (p0 == -1 && (k & 1u)) {
    u0 = -1;
  } else {
    throw NotAPower("constant coefficient must be 1 (or -1 for odd order)");
  }
  if (p.degree() % static_cast<int>(k) != 0) throw NotAPower("degree is not a multiple of the root order");
  const std::size_t du = static_cast<std::size_t>(p.degree()) / k;
  std::vector<BigInt> u(du + 1);
  u[0] = u0;
  // From k p u' = p' u:  k p0 n u_n = sum_{j=1..n} (j - k (n - j)) p_j u_{n-j}.
  for (std::size_t n = 1; n <= du; ++n) {
    BigInt acc = 0;
    for (std::size_t j = 1; j <= n && j < p.size(); ++j) {
      const BigInt& pj = p.coeffs()[j];
      if (pj == 0) continue;
      const long weight = static_cast<long>(j) - static_cast<long>(k) * static_cast<long>(n - j);
      acc += BigInt(weight) * pj * u[n - j];
    }
    const BigInt den = BigInt(static_cast<unsigned long>(k) * n) * p0;
    if (!mpz_divisible_p(acc.get_mpz_t(), den.get_mpz_t())) throw NotAPower("non-integral root coefficient");
    mpz_divexact(u[n].get_mpz_t(), acc.get_mpz_t(), den.get_mpz_t());
  }
  IntPoly root(std::move(u));
  if (!(root.pow(k) == p)) throw NotAPower("re-expansion mismatch");
  return root;
}

IntPoly gcd(const IntPoly& p, const IntPoly& q) {
  if (p.is_zero() && q.is_zero()) throw ZeroInput("gcd of two zero polynomials");
  auto normalize_sign = [](IntPoly r) { return r.leading() < 0 ? -r : r; };
  if (q.is_zero()) return normalize_sign(primitive_part(p));
  if (p.is_zero()) return normalize_sign(primitive_part(q));
  IntPoly a = primitive_part(p);
  IntPoly b = primitive_part(q);
  if (a.degree() < b.degree()) std::swap(a, b);
  for (;;) {
    IntPoly r = pseudo_remainder(a, b);
    if (r.is_zero()) return normalize_sign(b);
    if (r.degree() == 0) return IntPoly::constant(1);
    a = std::move(b);
    b = primitive_part(r);
  }
}

void to_json(nlohmann::json& j, const IntPoly& p) {
  j = nlohmann::json::array();
  for (const auto& c : p.coeffs()) j.push_back(c.get_str());
}

void from_json(const nlohmann::json& j, IntPoly& p) {
  if (!j.is_array()) throw InvalidArgument("IntPoly JSON must be an array of decimal strings");
  std::vector<BigInt> coeffs;
  coeffs.reserve(j.size());
  for (const auto& item : j) {
    if (!item.is_string()) throw InvalidArgument("IntPoly coefficient must be a decimal string");
    BigInt v;
    if (v.set_str(item.get<std::string>(), 10) != 0) throw InvalidArgument("malformed decimal coefficient");
    coeffs.push_back(std::move(v));
  }
  p = IntPoly(std::move(coeffs));
}

}  // namespace pfs
