#include "pfspectra/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "pfspectra/errors.hpp"
#include "pfspectra/gleason.hpp"
#include "pfspectra/parallel.hpp"
#include "pfspectra/roots.hpp"

namespace pfs {

namespace {

template <class C>
C ipow(const C& z, int k) {
  C acc(1);
  C base = z;
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

void check_args(int degree, int period) {
  if (degree < 2) throw InvalidArgument("degree must be at least 2");
  if (period < 1) throw InvalidArgument("period must be at least 1");
}

/// Beyond this modulus g^D + c is g^D to double precision, so the
/// logarithmic derivative just scales by D per step.
double ratio_threshold(int degree) { return std::pow(10.0, std::min(16.0, 280.0 / degree)); }

/// Moebius weights w[d] = mu(n/d) for d | n, zero elsewhere.
std::vector<int> mobius_weights(int n) {
  std::vector<int> w(static_cast<std::size_t>(n) + 1, 0);
  for (int d : divisors(n)) w[static_cast<std::size_t>(d)] = mobius(n / d);
  return w;
}

/// H_m'/H_m = sum_{d | m} mu(m/d) G_d'/G_d from one pass over the critical
/// orbit.
Complex center_log_derivative(int degree, int period, const std::vector<int>& weights, const Complex& c) {
  const double big = ratio_threshold(degree);
  Complex g(0.0);
  Complex dg(0.0);
  Complex ratio(0.0);
  bool escaped = false;
  Complex sum(0.0);
  for (int n = 1; n <= period; ++n) {
    if (!escaped) {
      dg = static_cast<double>(degree) * ipow(g, degree - 1) * dg + 1.0;
      g = ipow(g, degree) + c;
      if (std::abs(g) > big) {
        escaped = true;
        ratio = dg / g;
      }
    } else {
      ratio *= static_cast<double>(degree);
    }
    const int w = weights[static_cast<std::size_t>(n)];
    if (w != 0) sum += static_cast<double>(w) * (escaped ? ratio : dg / g);
  }
  return sum;
}

/// Phi_n'/Phi_n for Phi_n(z) = prod_{d | n} (f^d(z) - z)^{mu(n/d)}.
Complex cycle_log_derivative(int degree, const Complex& c, int n, const std::vector<int>& weights, const Complex& z) {
  const double big = ratio_threshold(degree);
  Complex w = z;
  Complex dw(1.0);
  Complex ratio(0.0);
  bool escaped = false;
  Complex sum(0.0);
  for (int k = 1; k <= n; ++k) {
    if (!escaped) {
      dw *= static_cast<double>(degree) * ipow(w, degree - 1);
      w = ipow(w, degree) + c;
      if (std::abs(w) > big) {
        escaped = true;
        ratio = dw / w;
      }
    } else {
      ratio *= static_cast<double>(degree);
    }
    const int m = weights[static_cast<std::size_t>(k)];
    if (m != 0) sum += static_cast<double>(m) * (escaped ? ratio : (dw - 1.0) / (w - z));
  }
  return sum;
}

/// Points already accepted, indexed by real part for tolerance lookups.
class PointSet {
 public:
  explicit PointSet(double tol) : tol_(tol) {}

  bool contains(const Complex& z) const {
    for (auto it = index_.lower_bound(z.real() - tol_); it != index_.end() && it->first <= z.real() + tol_; ++it)
      if (std::abs(points_[it->second] - z) <= tol_) return true;
    return false;
  }
  void insert(const Complex& z) {
    index_.emplace(z.real(), points_.size());
    points_.push_back(z);
  }
  const std::vector<Complex>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  double tol_;
  std::multimap<double, std::size_t> index_;
  std::vector<Complex> points_;
};

double center_search_radius(int degree) { return 1.05 * std::pow(2.0, 1.0 / (degree - 1)); }

inline constexpr double kLemniscateLevel = 4.0;

/// Walk once around the lemniscate {|F| = R} by lifting w = R e^{it} through
/// F, starting from a point with F(start) = R. Returns the points where
/// F = -R, one per turn. Every critical value of F must lie inside |w| < R so
/// the lift is a Jordan curve; the walk is checked to close up.
template <class Eval>
std::vector<Complex> lift_lemniscate(Eval&& eval, Complex z, std::size_t turns) {
  const double R = kLemniscateLevel;
  constexpr int kSubsteps = 32;
  std::vector<Complex> samples;
  samples.reserve(turns);
  const Complex start = z;
  auto solve = [&](Complex guess, const Complex& target, Complex& out) {
    for (int it = 0; it < 30; ++it) {
      const auto [f, df] = eval(guess);
      const Complex step = (f - target) / df;
      if (!is_finite(step)) return false;
      guess -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(guess))) {
        out = guess;
        return true;
      }
    }
    const auto [f, df] = eval(guess);
    (void)df;
    out = guess;
    return std::abs(f - target) <= 1e-9 * R;
  };
  double t = 0.0;
  const double dt_max = 2.0 * std::numbers::pi / kSubsteps;
  const double t_end = 2.0 * std::numbers::pi * static_cast<double>(turns);
  double dt = dt_max;
  std::size_t next_sample = 0;
  while (t < t_end - 1e-12) {
    const double sample_t = std::numbers::pi * static_cast<double>(2 * next_sample + 1);
    double step = std::min(dt, t_end - t);
    bool hits_sample = next_sample < turns && t + step >= sample_t - 1e-12;
    if (hits_sample) step = sample_t - t;
    const Complex target = std::polar(R, t + step);
    const auto [f, df] = eval(z);
    Complex next;
    if (!solve(z + (target - f) / df, target, next) || std::abs(next - z) > 0.25 * std::max(1.0, std::abs(z))) {
      dt *= 0.5;
      if (dt < 1e-9) throw NonConvergence("lemniscate walk stalled");
      continue;
    }
    z = next;
    t += step;
    if (hits_sample) {
      samples.push_back(z);
      ++next_sample;
    }
    dt = std::min(dt_max, 2.0 * dt);
  }
  if (samples.size() != turns || std::abs(z - start) > 1e-8 * std::max(1.0, std::abs(start)))
    throw NonConvergence("lemniscate walk did not close");
  return samples;
}

/// D^(m-1) parameters on {|G_m(c)| = 4}, one between each pair of
/// consecutive roots in harmonic measure; ideal Aberth starts for G_m.
std::vector<Complex> parameter_lemniscate(int degree, int period) {
  auto eval = [&](const Complex& c) {
    Complex g(0.0), dg(0.0);
    for (int n = 1; n <= period; ++n) {
      dg = static_cast<double>(degree) * ipow(g, degree - 1) * dg + 1.0;
      g = ipow(g, degree) + c;
    }
    return std::pair{g, dg};
  };
  // G_m is increasing on c >= 0; bisect for G_m(c) = 4.
  double lo = 0.0, hi = kLemniscateLevel;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    double g = 0.0;
    for (int n = 1; n <= period && g <= kLemniscateLevel; ++n) g = std::pow(g, degree) + mid;
    (g > kLemniscateLevel ? hi : lo) = mid;
  }
  std::size_t turns = 1;
  for (int k = 1; k < period; ++k) turns *= static_cast<std::size_t>(degree);
  return lift_lemniscate(eval, Complex(0.5 * (lo + hi)), turns);
}

/// D^n points on {|f_c^n(z)| = 4} for the dynamical plane.
std::vector<Complex> dynamical_lemniscate(int degree, const Complex& c, int n) {
  auto eval = [&](const Complex& z) {
    Complex w = z, dw(1.0);
    for (int k = 0; k < n; ++k) {
      dw *= static_cast<double>(degree) * ipow(w, degree - 1);
      w = ipow(w, degree) + c;
    }
    return std::pair{w, dw};
  };
  // Pull w = 4 back n times along principal branches.
  Complex z(kLemniscateLevel);
  for (int k = 0; k < n; ++k) z = std::pow(z - c, 1.0 / degree);
  std::size_t turns = 1;
  for (int k = 0; k < n; ++k) turns *= static_cast<std::size_t>(degree);
  return lift_lemniscate(eval, z, turns);
}

}  // namespace

GmValue eval_gm(int degree, int period, const Complex& c) {
  check_args(degree, period);
  Complex g(0.0);
  Complex dg(0.0);
  for (int n = 1; n <= period; ++n) {
    dg = static_cast<double>(degree) * ipow(g, degree - 1) * dg + 1.0;
    g = ipow(g, degree) + c;
    if (!(std::abs(g) <= kEscapeRadius)) throw Overflow("critical orbit escaped at step " + std::to_string(n));
  }
  return {g, dg};
}

std::pair<ExtComplex, ExtComplex> eval_gm_ext(int degree, int period, const ExtComplex& c) {
  check_args(degree, period);
  ExtComplex g(0);
  ExtComplex dg(0);
  const ExtComplex d(degree);
  for (int n = 1; n <= period; ++n) {
    dg = d * ipow(g, degree - 1) * dg + ExtComplex(1);
    g = ipow(g, degree) + c;
    if (!(magnitude(g) <= kEscapeRadius)) throw Overflow("critical orbit escaped at step " + std::to_string(n));
  }
  return {g, dg};
}

CenterRecord make_center_record(int degree, int period, const ExtComplex& c) {
  check_args(degree, period);
  CenterRecord r;
  r.degree = degree;
  r.period = period;
  const SplitComplex s = split(c);
  r.center = s.hi;
  r.center_lo = s.lo;

  const auto m = static_cast<std::size_t>(period);
  std::vector<ExtComplex> zeta(m);
  zeta[0] = ExtComplex(0);
  for (std::size_t j = 1; j < m; ++j) zeta[j] = ipow(zeta[j - 1], degree) + c;
  const ExtComplex closing = ipow(zeta[m - 1], degree) + c;
  r.newton_residual = magnitude(closing);

  std::vector<ExtComplex> delta(m);
  delta[0] = ExtComplex(0);
  for (std::size_t j = 1; j < m; ++j) delta[j] = ExtComplex(degree) * ipow(zeta[j], degree - 1);

  r.orbit.resize(m);
  r.deltas.resize(m);
  r.forward.resize(m);
  r.backward.resize(m);
  ExtComplex fwd(1);
  ExtComplex bwd(1);
  r.forward[0] = 1.0;
  r.backward[0] = 1.0;
  for (std::size_t j = 0; j < m; ++j) {
    r.orbit[j] = to_complex(zeta[j]);
    r.deltas[j] = to_complex(delta[j]);
    if (j >= 1) {
      fwd *= delta[j];
      bwd *= delta[m - j];
      r.forward[j] = to_complex(fwd);
      r.backward[j] = to_complex(bwd);
    }
  }
  return r;
}

std::pair<ExtComplex, double> polish_center(int degree, int period, ExtComplex c, int max_iterations) {
  const ExtReal eps = std::numeric_limits<ExtReal>::epsilon();
  for (int it = 0; it < max_iterations; ++it) {
    const auto [g, dg] = eval_gm_ext(degree, period, c);
    if (magnitude(dg) == 0.0) break;
    const ExtComplex step = g / dg;
    c -= step;
    const ExtReal scale = std::max(ExtReal(1), ExtReal(abs(c)));
    if (abs(step) <= 4 * eps * scale) break;
  }
  auto [g, dg] = eval_gm_ext(degree, period, c);
  // G_m is real and its roots are simple, so a root this close to the axis is real.
  if (c.imag() != 0 && abs(c.imag()) <= ExtReal(1e-20) * std::max(ExtReal(1), ExtReal(abs(c)))) {
    ExtComplex r(c.real(), ExtReal(0));
    for (int it = 0; it < 4; ++it) {
      const auto [gr, dgr] = eval_gm_ext(degree, period, r);
      if (magnitude(dgr) == 0.0) break;
      r = ExtComplex((r - gr / dgr).real(), ExtReal(0));
    }
    const auto [gr, dgr] = eval_gm_ext(degree, period, r);
    if (magnitude(gr) <= std::max(magnitude(g), 1e-28)) {
      c = r;
      g = gr;
    }
  }
  return {c, magnitude(g)};
}

bool escape_bound_check(const CenterRecord& record, double tol_bound) {
  const double limit = 2.0 + tol_bound;
  const int e = record.degree - 1;
  if (!(std::pow(std::abs(record.center), e) <= limit)) return false;
  for (const auto& z : record.orbit)
    if (!(std::pow(std::abs(z), e) <= limit)) return false;
  return true;
}

bool validate_center(const CenterRecord& record, const DynamicsConfig& config) {
  if (!(record.newton_residual <= config.tol_residual)) return false;
  for (int d : divisors(record.period)) {
    if (d == record.period) continue;
    // zeta_d = G_d(c).
    if (!(std::abs(record.orbit[static_cast<std::size_t>(d)]) > config.period_reject)) return false;
  }
  return escape_bound_check(record, config.tol_bound);
}

std::vector<CenterRecord> find_centers(int degree, int period, const DynamicsConfig& config) {
  check_args(degree, period);
  const std::uint64_t expected = center_count(degree, period);
  const auto weights = mobius_weights(period);
  const double radius = center_search_radius(degree);
  const int threads = resolve_threads(config.threads);

  std::vector<CenterRecord> accepted;
  PointSet seen(config.dedup_tol);
  AberthOptions opt;
  opt.max_iterations = 300;
  opt.tolerance = 1e-12;

  std::vector<int> full_weights(static_cast<std::size_t>(period) + 1, 0);
  full_weights.back() = 1;
  auto log_derivative = [&](const Complex& c) { return center_log_derivative(degree, period, weights, c); };
  auto full_log_derivative = [&](const Complex& c) { return center_log_derivative(degree, period, full_weights, c); };

  for (int round = 0; round <= config.restart_rounds && seen.size() < expected; ++round) {
    AberthOutcome<Complex> outcome;
    bool lemniscate = false;
    if (round == 0) {
      // All of G_m from the lemniscate; lower periods are filtered below.
      try {
        outcome = aberth<Complex>(full_log_derivative, parameter_lemniscate(degree, period), {}, opt);
        lemniscate = true;
      } catch (const NonConvergence&) {
      }
    }
    if (!lemniscate) {
      const std::size_t missing = static_cast<std::size_t>(expected) - seen.size();
      const double r = radius * (1.0 + 0.07 * round);
      auto starts = circle_starts<Complex>(missing, r, config.seed + static_cast<std::uint64_t>(round));
      outcome = aberth<Complex>(log_derivative, std::move(starts), seen.points(), opt);
    }

    std::vector<CenterRecord> records(outcome.roots.size());
    std::vector<char> ok(outcome.roots.size(), 0);
    parallel_for(outcome.roots.size(), threads, [&](std::size_t i) {
      const Complex z = outcome.roots[i];
      if (!is_finite(z) || std::abs(z) > kEscapeRadius) return;
      try {
        const auto [c, residual] = polish_center(degree, period, to_ext(z));
        (void)residual;
        records[i] = make_center_record(degree, period, c);
        ok[i] = validate_center(records[i], config);
      } catch (const Overflow&) {
      }
    });

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < records.size(); ++i)
      if (ok[i]) order.push_back(i);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return lex_less(records[a].center, records[b].center); });
    for (std::size_t i : order) {
      if (seen.contains(records[i].center)) continue;
      seen.insert(records[i].center);
      accepted.push_back(std::move(records[i]));
    }
  }

  if (accepted.size() != expected)
    throw IncompleteEnumeration(accepted.size(), expected,
                                "centers D=" + std::to_string(degree) + " m=" + std::to_string(period));
  std::sort(accepted.begin(), accepted.end(),
            [](const CenterRecord& a, const CenterRecord& b) { return lex_less(a.center, b.center); });
  return accepted;
}

std::vector<CycleRecord> find_cycles(int degree, const Complex& c, int n_max, const DynamicsConfig& config) {
  check_args(degree, n_max);
  if (!is_finite(c)) throw InvalidArgument("parameter must be finite");
  const double radius = 1.1 * std::max(std::pow(2.0, 1.0 / (degree - 1)), 2.0 * std::pow(std::abs(c), 1.0 / degree));
  const double point_tol = 1e-8;
  std::vector<CycleRecord> cycles;

  // Forward critical orbit, long enough to land on any cycle it meets.
  std::vector<Complex> critical_orbit;
  {
    Complex z(0.0);
    for (int k = 0; k <= 64 + n_max && std::abs(z) <= kEscapeRadius; ++k) {
      critical_orbit.push_back(z);
      z = ipow(z, degree) + c;
    }
  }
  auto on_critical_orbit = [&](const Complex& z) {
    return std::any_of(critical_orbit.begin(), critical_orbit.end(),
                       [&](const Complex& w) { return std::abs(w - z) < 1e-7 * std::max(1.0, std::abs(z)); });
  };

  auto iterate = [&](Complex z, int k) {
    for (int i = 0; i < k; ++i) z = ipow(z, degree) + c;
    return z;
  };

  for (int n = 1; n <= n_max; ++n) {
    const std::uint64_t expected = periodic_point_count(degree, n);
    const auto weights = mobius_weights(n);
    std::vector<int> full_weights(static_cast<std::size_t>(n) + 1, 0);
    full_weights.back() = 1;
    auto log_derivative = [&](const Complex& z) { return cycle_log_derivative(degree, c, n, weights, z); };
    auto full_log_derivative = [&](const Complex& z) { return cycle_log_derivative(degree, c, n, full_weights, z); };
    AberthOptions opt;
    opt.max_iterations = 300;
    opt.tolerance = 1e-13;

    PointSet seen(point_tol);
    for (int round = 0; round <= config.restart_rounds && seen.size() < expected; ++round) {
      AberthOutcome<Complex> outcome;
      bool lemniscate = false;
      if (round == 0) {
        try {
          outcome = aberth<Complex>(full_log_derivative, dynamical_lemniscate(degree, c, n), {}, opt);
          lemniscate = true;
        } catch (const NonConvergence&) {
        }
      }
      if (!lemniscate) {
        const std::size_t missing = static_cast<std::size_t>(expected) - seen.size();
        auto starts = circle_starts<Complex>(missing, radius * (1.0 + 0.07 * round),
                                             config.seed + 0x100u * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(round));
        outcome = aberth<Complex>(log_derivative, std::move(starts), seen.points(), opt);
      }
      std::vector<Complex> found;
      for (Complex z : outcome.roots) {
        if (!is_finite(z)) continue;
        // Newton on f^n(z) - z.
        for (int it = 0; it < 8; ++it) {
          Complex w = z;
          Complex dw(1.0);
          for (int k = 0; k < n; ++k) {
            dw *= static_cast<double>(degree) * ipow(w, degree - 1);
            w = ipow(w, degree) + c;
          }
          const Complex step = (w - z) / (dw - 1.0);
          if (!is_finite(step)) break;
          z -= step;
          if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        const double scale = std::max(1.0, std::abs(z));
        if (!(std::abs(iterate(z, n) - z) <= 1e-9 * scale)) continue;
        bool exact = true;
        for (int d : divisors(n))
          if (d < n && !(std::abs(iterate(z, d) - z) > config.period_reject)) exact = false;
        if (exact) found.push_back(z);
      }
      std::sort(found.begin(), found.end(), lex_less);
      for (const auto& z : found)
        if (!seen.contains(z)) seen.insert(z);
    }
    if (seen.size() != expected)
      throw IncompleteEnumeration(seen.size(), expected, "period-" + std::to_string(n) + " points");

    // Group points into orbits, each cycle starting at its smallest point.
    std::vector<Complex> pts = seen.points();
    std::sort(pts.begin(), pts.end(), lex_less);
    std::vector<char> used(pts.size(), 0);
    auto claim = [&](const Complex& z) -> std::size_t {
      std::size_t best = pts.size();
      double best_d = 1e-6 * std::max(1.0, std::abs(z));
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (used[j]) continue;
        const double d = std::abs(pts[j] - z);
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      return best;
    };
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (used[i]) continue;
      used[i] = 1;
      CycleRecord cyc;
      cyc.degree = degree;
      cyc.parameter = c;
      cyc.period = n;
      cyc.points.push_back(pts[i]);
      for (int k = 1; k < n; ++k) {
        const std::size_t j = claim(ipow(cyc.points.back(), degree) + c);
        if (j == pts.size())
          throw IncompleteEnumeration(cycles.size(), static_cast<std::size_t>(expected) / static_cast<std::size_t>(n),
                                      "grouping period-" + std::to_string(n) + " cycles");
        used[j] = 1;
        cyc.points.push_back(pts[j]);
      }
      Complex mult(std::pow(static_cast<double>(degree), n));
      for (const auto& z : cyc.points) {
        mult *= ipow(z, degree - 1);
        if (on_critical_orbit(z)) cyc.postcritical = true;
      }
      cyc.multiplier = mult;
      if (!cyc.postcritical) {
        // lambda^n = 1/mu.
        const double rho = -std::log(std::abs(mult)) / n;
        const double theta = -std::arg(mult);
        for (int k = 0; k < n; ++k) {
          const double phase = (theta + 2.0 * std::numbers::pi * k) / n;
          cyc.eigenvalues.push_back(std::polar(std::exp(rho), phase));
        }
      }
      cycles.push_back(std::move(cyc));
    }
  }
  return cycles;
}

}  // namespace pfs
