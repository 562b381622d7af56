#include "pfspectra/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "pfspectra/errors.hpp"
#include "pfspectra/roots.hpp"

namespace pfs {

SpectrumResult chi2_from_orbit(const CenterRecord& record) {
  const int m = record.period;
  if (m < 2) throw DimensionTooSmall("chi2 needs period at least 2, got " + std::to_string(m));
  const auto n = static_cast<std::size_t>(m);
  SpectrumResult r;
  r.center = record;
  // Assemble in the bounded normalized form and rescale by chi2(0) = 1/Delta_{m-1}.
  r.normalized_coeffs.assign(record.backward.begin(), record.backward.begin() + static_cast<std::ptrdiff_t>(n));
  const Complex top = record.forward[n - 1];
  r.chi2_coeffs.resize(n);
  for (std::size_t j = 0; j < n; ++j) r.chi2_coeffs[j] = r.normalized_coeffs[j] / top;
  r.chi2_coeffs[n - 1] = 1.0;

  // Synthetic division of the normalized polynomial by (lambda - 1/D).
  const Complex root(1.0 / record.degree);
  const auto& a = r.normalized_coeffs;
  std::vector<Complex> q(n - 1);
  q[n - 2] = a[n - 1];
  for (std::size_t k = n - 2; k >= 1; --k) q[k - 1] = a[k] + root * q[k];
  const Complex remainder = a[0] + root * q[0];
  double scale = 0.0;
  for (const auto& x : a) scale = std::max(scale, std::abs(x));
  r.division_remainder = std::abs(remainder) / scale;
  const Complex lead = q[n - 2];
  r.chi_coeffs.resize(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) r.chi_coeffs[j] = q[j] / lead;
  r.chi_coeffs[n - 2] = 1.0;
  return r;
}

void eigenvalues(SpectrumResult& result, const SpectrumConfig& config) {
  const int m = result.center.period;
  if (m < 3) throw DimensionTooSmall("no eigenvalues: dim Q_f = " + std::to_string(std::max(0, m - 2)));
  result.eigenvalues.clear();
  AberthOptions opt;
  opt.tolerance = 1e-15;
  bool all_ok = true;
  for (const auto& root : polynomial_roots<Complex>(result.chi_coeffs, opt)) {
    result.eigenvalues.push_back({root.value, root.residual});
    if (!(root.residual <= config.root_tolerance * std::max(1.0, std::abs(root.value)))) all_ok = false;
  }
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end(),
            [](const Eigenvalue& a, const Eigenvalue& b) { return lex_less(a.value, b.value); });

  result.min_separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < result.eigenvalues.size(); ++i)
    for (std::size_t j = i + 1; j < result.eigenvalues.size(); ++j)
      result.min_separation =
          std::min(result.min_separation, std::abs(result.eigenvalues[i].value - result.eigenvalues[j].value));

  std::vector<Complex> roots;
  for (const auto& e : result.eigenvalues) roots.push_back(e.value);
  roots.emplace_back(1.0 / result.center.degree);
  const auto rebuilt = poly_from_roots(roots);
  double worst = 0.0;
  for (std::size_t j = 0; j < rebuilt.size(); ++j) worst = std::max(worst, std::abs(rebuilt[j] - result.chi2_coeffs[j]));
  result.reconstruction_error = worst;

  result.gap_ok = gap_check(result, config.gap_margin);
  if (!all_ok) throw NonConvergence("eigenvalue polish failed for a center of period " + std::to_string(m));
}

SpectrumResult compute_spectrum(const CenterRecord& record, const SpectrumConfig& config) {
  SpectrumResult r = chi2_from_orbit(record);
  eigenvalues(r, config);
  return r;
}

bool gap_check(const SpectrumResult& result, double margin) {
  const double inner = 1.0 / (4.0 * result.center.degree);
  return std::all_of(result.eigenvalues.begin(), result.eigenvalues.end(), [&](const Eigenvalue& e) {
    const double r = std::abs(e.value);
    return r > inner + margin && r < 1.0 - margin;
  });
}

DerivativeIdentity derivative_identity_check(const CenterRecord& record, const SpectrumResult& result) {
  DerivativeIdentity out;
  const Complex gm_prime = to_complex(eval_gm_ext(record.degree, record.period, record.center_ext()).second);
  const auto& chi = result.chi_coeffs;
  Complex chi1(0.0);
  for (const auto& x : chi) chi1 += x;
  out.lhs = gm_prime * chi[0];
  out.rhs = static_cast<double>(1 - record.degree) * chi1;
  out.relative = std::abs(out.lhs - out.rhs) / std::abs(out.lhs);

  Complex chi2_at_1(0.0);
  for (const auto& x : result.chi2_coeffs) chi2_at_1 += x;
  out.normalized_lhs = chi2_at_1 / result.chi2_coeffs[0];
  out.normalized_rhs = 0.0;
  for (const auto& x : record.backward) out.normalized_rhs += x;
  out.normalized_relative = std::abs(out.normalized_lhs - out.normalized_rhs) / std::abs(out.normalized_rhs);
  return out;
}

PushforwardMatrix build_matrix_explicit(const CenterRecord& record) {
  const int m = record.period;
  PushforwardMatrix a;
  a.size = m;
  a.entries = Eigen::MatrixXcd::Zero(m, m);
  for (int n = 0; n < m; ++n) {
    a.labels.push_back(n);
    a.points.push_back(record.orbit[static_cast<std::size_t>(n)]);
  }
  for (int n = 1; n < m; ++n) {
    const Complex an = 1.0 / record.deltas[static_cast<std::size_t>(n)];
    a.entries(1 % m, n) -= an;
    a.entries((n + 1) % m, n) += an;
  }
  return a;
}

PushforwardMatrix build_matrix_residues(int degree, const Complex& c, const std::vector<Complex>& orbit,
                                        const SpectrumConfig& config) {
  if (degree < 2) throw InvalidArgument("degree must be at least 2");
  const int m = static_cast<int>(orbit.size());
  if (m < 1) throw InvalidArgument("empty postcritical orbit");
  PushforwardMatrix a;
  a.size = m;
  a.entries = Eigen::MatrixXcd::Zero(m, m);
  for (int n = 0; n < m; ++n) {
    a.labels.push_back(n);
    a.points.push_back(orbit[static_cast<std::size_t>(n)]);
  }

  double min_dist = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) min_dist = std::min(min_dist, std::abs(orbit[i] - orbit[j]));
  double scale = 1.0;
  for (const auto& z : orbit) scale = std::max(scale, std::abs(z));
  if (!std::isfinite(min_dist)) min_dist = scale;
  if (!(config.contour_fraction * min_dist >= config.contour_floor))
    throw ContourTooClose("postcritical points closer than the contour floor");

  const double match_tol = 1e-7 * scale;
  const int nodes = config.contour_nodes;
  const double d = static_cast<double>(degree);

  // (1/2 pi i) contour integral of 1/((z - x) f'(z)) around w.
  auto residue = [&](const Complex& w, const Complex& x, double radius) {
    Complex sum(0.0);
    for (int k = 0; k < nodes; ++k) {
      const Complex u = std::polar(radius, 2.0 * std::numbers::pi * k / nodes);
      const Complex z = w + u;
      sum += u / ((z - x) * d * std::pow(z, degree - 1));
    }
    return sum / static_cast<double>(nodes);
  };

  for (int col = 0; col < m; ++col) {
    const Complex x = orbit[static_cast<std::size_t>(col)];
    for (int row = 0; row < m; ++row) {
      const Complex y = orbit[static_cast<std::size_t>(row)];
      // Preimages of y that are the critical point or x itself.
      std::vector<Complex> contributing;
      const Complex target = y - c;
      if (std::abs(target) <= match_tol) {
        contributing.emplace_back(0.0);
      } else {
        const Complex base = std::pow(target, 1.0 / d);
        for (int j = 0; j < degree; ++j) {
          const Complex w = base * std::polar(1.0, 2.0 * std::numbers::pi * j / d);
          if (std::abs(w) <= match_tol) contributing.emplace_back(0.0);
          else if (std::abs(w - x) <= match_tol) contributing.push_back(x);
        }
      }
      if (contributing.empty()) continue;

      double radius = config.contour_fraction * min_dist;
      auto crowded = [&](double r) {
        for (std::size_t i = 0; i < contributing.size(); ++i)
          for (std::size_t j = i + 1; j < contributing.size(); ++j)
            if (std::abs(contributing[i] - contributing[j]) < 4.0 * r) return true;
        return false;
      };
      while (crowded(radius)) {
        radius *= 0.5;
        if (radius < config.contour_floor) throw ContourTooClose("contributing points coincide");
      }
      Complex entry(0.0);
      for (const auto& w : contributing) entry += residue(w, x, radius);
      a.entries(row, col) = entry;
    }
  }
  return a;
}

std::vector<Complex> characteristic_polynomial(const Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  // Descending coefficients of det(lambda I - A_r) for the leading r x r block.
  std::vector<Complex> c{1.0};
  for (Eigen::Index r = 0; r < n; ++r) {
    // First column of the Toeplitz factor: 1, -a_rr, -R S, -R A S, ...
    std::vector<Complex> t(static_cast<std::size_t>(r) + 2);
    t[0] = 1.0;
    t[1] = -a(r, r);
    if (r > 0) {
      const Eigen::MatrixXcd block = a.topLeftCorner(r, r);
      const Eigen::RowVectorXcd row = a.row(r).head(r);
      Eigen::VectorXcd v = a.col(r).head(r);
      for (Eigen::Index k = 0; k < r; ++k) {
        t[static_cast<std::size_t>(k) + 2] = -(row * v)(0);
        v = block * v;
      }
    }
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < next.size(); ++i)
      for (std::size_t j = 0; j <= i && j < c.size(); ++j) next[i] += t[i - j] * c[j];
    c = std::move(next);
  }
  std::reverse(c.begin(), c.end());
  return c;
}

std::vector<Complex> matrix_eigenvalues(const Eigen::MatrixXcd& a) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, false);
  if (solver.info() != Eigen::Success) throw NonConvergence("matrix eigenvalue solver failed");
  std::vector<Complex> out(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

double r_constant(int degree) {
  if (degree < 2) throw InvalidArgument("degree must be at least 2");
  const double d = degree;
  if (degree % 2 == 0) return 1.0 / (2.0 * d);
  return 1.0 / (2.0 * d * std::cos(std::numbers::pi / (2.0 * d)));
}

}  // namespace pfs
