#include "pfspectra/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pfspectra/equidist.hpp"
#include "pfspectra/errors.hpp"
#include "pfspectra/gleason.hpp"
#include "pfspectra/parallel.hpp"
#include "pfspectra/survey.hpp"
#include "pfspectra/units.hpp"

namespace pfs {

namespace {

using nlohmann::json;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int degree = 2;
  int period = 0;
  std::string periods;
  int max_period = 0;
  int precision = kBaselinePrecision;
  std::string out;
  std::string svg;
  bool json = false;
  int threads = 0;
  bool force = false;
  bool certify = false;
  bool no_crosscheck = false;
  std::string param;
  std::string anchor = "-2";
  int modes = 10;
  int index = 0;
};

json cjson(const Complex& z) { return json::array({z.real(), z.imag()}); }

json cjson(const std::vector<Complex>& zs) {
  json a = json::array();
  for (const auto& z : zs) a.push_back(cjson(z));
  return a;
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(cjson(Complex(m(r, c))));
    rows.push_back(row);
  }
  return rows;
}

json poly_json(const IntPoly& p) { return p; }

/// Writes to the named file, or to the fallback stream for an empty path.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path) {
    if (path.empty()) {
      os_ = &fallback;
    } else {
      file_.open(path, std::ios::binary);
      if (!file_) throw IoFailure("cannot open " + path + " for writing");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }
  void close() {
    os_->flush();
    if (!*os_) throw IoFailure("write failed" + (path_.empty() ? std::string() : " for " + path_));
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void check_common(const Options& o) {
  if (o.degree < 2) throw InvalidArgument("--degree must be at least 2, got " + std::to_string(o.degree));
  if (o.precision < kBaselinePrecision || o.precision > kMaxPrecision)
    throw InvalidArgument("--precision must lie in [" + std::to_string(kBaselinePrecision) + ", " +
                          std::to_string(kMaxPrecision) + "]");
  if (o.threads < 0) throw InvalidArgument("--threads must be positive");
}

DynamicsConfig dynamics_config(const Options& o) {
  DynamicsConfig cfg;
  cfg.precision_bits = o.precision;
  cfg.threads = resolve_threads(o.threads);
  return cfg;
}

int require_period(const Options& o, const char* what) {
  if (o.period < 1) throw InvalidArgument(std::string(what) + " needs --period >= 1");
  return o.period;
}

std::vector<int> requested_periods(const Options& o) {
  if (!o.periods.empty()) return parse_periods(o.periods);
  return {require_period(o, "survey")};
}

/// Exit status for a check outcome, with the failure JSON on err.
int verdict(bool passed, const std::string& command, const std::vector<std::string>& failed, std::ostream& err) {
  if (passed) return kExitOk;
  err << json{{"status", "fail"}, {"command", command}, {"failed_checks", failed}, {"exit_code", kExitCheckFailed}}
             .dump()
      << "\n";
  return kExitCheckFailed;
}

int cmd_gleason(const Options& o, std::ostream& out, std::ostream& err) {
  const int M = o.max_period > 0 ? o.max_period : o.period;
  if (M < 1) throw InvalidArgument("gleason needs --max-period >= 1");
  const GleasonTower tower = build_tower(o.degree, M);
  json doc = {{"command", "gleason"}, {"degree", o.degree}, {"max_period", M}};
  json degrees = json::array();
  for (const auto& r : degree_check(tower))
    degrees.push_back({{"period", r.period}, {"degree", r.degree}, {"predicted", r.predicted}});
  doc["degrees"] = degrees;
  json h = json::object();
  for (int m = 1; m <= M; ++m) h[std::to_string(m)] = poly_json(tower.H(m));
  doc["H"] = h;

  std::vector<std::string> failed;
  if (o.certify) {
    json simple = json::array();
    for (int n = 1; n <= M; ++n) {
      const auto c = certify_simple_roots(tower, n);
      simple.push_back({{"n", n},
                        {"resultant", c.resultant.get_str()},
                        {"derivative_one_mod_d", c.derivative_one_mod_d},
                        {"resultant_one_mod_d", c.resultant_one_mod_d},
                        {"passed", c.passed()}});
      if (!c.passed()) failed.push_back("simple_roots_" + std::to_string(n));
    }
    doc["simple_roots"] = simple;
    json poonen = json::array();
    for (const auto& c : certify_poonen_all(tower, resolve_threads(o.threads))) {
      poonen.push_back({{"m", c.m}, {"n", c.n}, {"resultant", c.resultant.get_str()}, {"passed", c.passed()}});
      if (!c.passed()) failed.push_back("poonen_" + std::to_string(c.m) + "_" + std::to_string(c.n));
    }
    doc["poonen"] = poonen;
  }
  doc["passed"] = failed.empty();
  Sink sink(o.out, out);
  sink.stream() << doc.dump(2) << "\n";
  sink.close();
  return verdict(failed.empty(), "gleason", failed, err);
}

int cmd_centers(const Options& o, std::ostream& out, std::ostream& err) {
  const int m = require_period(o, "centers");
  const auto centers = find_centers(o.degree, m, dynamics_config(o));
  const bool hex = o.precision > kBaselinePrecision;
  std::string path = o.out;
  bool as_json = o.json || ends_with(path, ".json");
  if (path == "json" || path == "csv") {
    as_json = path == "json";
    path.clear();
  }
  bool residual_ok = true;
  for (const auto& c : centers) residual_ok = residual_ok && c.newton_residual <= DynamicsConfig{}.tol_residual;

  Sink sink(path, out);
  if (as_json) {
    json list = json::array();
    for (const auto& c : centers) list.push_back(center_json(c, hex));
    json doc = {{"command", "centers"},
                {"degree", o.degree},
                {"period", m},
                {"count", centers.size()},
                {"expected", center_count(o.degree, m)},
                {"precision", o.precision},
                {"centers", list}};
    sink.stream() << doc.dump(2) << "\n";
  } else {
    write_centers_csv(sink.stream(), centers, hex);
  }
  sink.close();
  return verdict(residual_ok, "centers", {"center_residual"}, err);
}

int cmd_survey(const Options& o, std::ostream& out, std::ostream& err) {
  const auto periods = requested_periods(o);
  const DynamicsConfig cfg = dynamics_config(o);
  std::vector<PeriodSurvey> surveys;
  for (int m : periods) surveys.push_back(survey_period(o.degree, m, cfg));

  const bool hex = o.precision > kBaselinePrecision;
  if (!o.out.empty() || !o.json) {
    Sink sink(o.out, out);
    write_survey_csv(sink.stream(), surveys, hex);
    sink.close();
  }
  if (!o.svg.empty()) {
    SvgSeries cloud{{}, "#f0f0f0", ""};
    for (const auto& s : surveys)
      for (const auto& sp : s.spectra)
        for (const auto& e : sp.eigenvalues) cloud.points.push_back(e.value);
    const double d = o.degree;
    std::vector<SvgCircle> circles{{1.0 / (4.0 * d), "|lambda| = 1/(4D)", "#e05050"},
                                   {r_constant(o.degree), "|lambda| = r_D", "#50a0e0"},
                                   {1.0, "|lambda| = 1", "#60c060"}};
    std::ostringstream title;
    title << "eigenvalues, D = " << o.degree << ", periods " << periods.front() << ".." << periods.back();
    Sink sink(o.svg, out);
    write_scatter_svg(sink.stream(), {cloud}, circles, 1.1, title.str());
    sink.close();
  }

  json rows = json::array();
  std::vector<std::string> failed;
  for (const auto& s : surveys) {
    rows.push_back(survey_summary(s));
    for (const auto& f : s.failures()) failed.push_back(f + "@m=" + std::to_string(s.period));
    if (!o.json && !s.note.empty()) err << "note: m = " << s.period << ": " << s.note << "\n";
  }
  const bool passed = failed.empty();
  if (o.json) out << json{{"command", "survey"}, {"degree", o.degree}, {"periods", rows}, {"passed", passed}}.dump(2)
                  << "\n";
  return verdict(passed, "survey", failed, err);
}

int cmd_certify_units(const Options& o, std::ostream& out, std::ostream& err) {
  const int m = require_period(o, "certify-units");
  if (m < 3) throw DimensionTooSmall("unit certificates need period >= 3");
  if (!o.force && !within_exact_ceiling(o.degree, m))
    throw ExactCeiling("D=" + std::to_string(o.degree) + " m=" + std::to_string(m) + " exceeds the default ceiling (" +
                       certify_cost_estimate(o.degree, m) + "); pass --force to run anyway");
  const int threads = resolve_threads(o.threads);
  const GleasonTower tower = build_tower(o.degree, m);
  const UnitCertificate cert = certify(tower, m, o.force, threads);

  std::vector<std::string> failed;
  json doc = {{"command", "certify-units"},
              {"degree", cert.degree},
              {"period", cert.period},
              {"h_degree", cert.h_degree},
              {"S", poly_json(cert.s)},
              {"S_constant", cert.constant_coeff.get_str()},
              {"S_leading", cert.leading_coeff.get_str()},
              {"upsilon", poly_json(cert.upsilon)},
              {"checks",
               {{"degree", cert.degree_ok},
                {"constant_one", cert.constant_ok},
                {"leading_unit", cert.leading_ok},
                {"factorization", cert.factorization_ok},
                {"squarefree", cert.squarefree}}}};
  if (!cert.degree_ok) failed.emplace_back("degree");
  if (!cert.constant_ok) failed.emplace_back("constant_one");
  if (!cert.leading_ok) failed.emplace_back("leading_unit");
  if (!cert.factorization_ok) failed.emplace_back("factorization");
  if (m == 3) {
    const bool closed = cert.upsilon == upsilon3_closed_form(o.degree);
    doc["checks"]["upsilon3_closed_form"] = closed;
    if (!closed) failed.emplace_back("upsilon3_closed_form");
  }
  if (!o.no_crosscheck) {
    const PeriodSurvey s = survey_period(o.degree, m, dynamics_config(o));
    const CrosscheckReport x = crosscheck_numeric(cert, s.spectra);
    doc["crosscheck"] = {{"distance", x.distance},
                         {"passed", x.passed},
                         {"orbit_groups", x.orbit_groups},
                         {"omega_collision", x.omega_collision},
                         {"precision_bits", x.precision_bits}};
    if (!x.passed) failed.emplace_back("crosscheck");
  }
  doc["passed"] = failed.empty();
  Sink sink(o.out, out);
  sink.stream() << doc.dump(2) << "\n";
  sink.close();
  return verdict(failed.empty(), "certify-units", failed, err);
}

/// Period of the critical point, or 0 if none is seen within the horizon.
int critical_period(int degree, const Complex& c) {
  Complex z(0.0);
  for (int k = 1; k <= 256; ++k) {
    z = std::pow(z, degree) + c;
    if (std::abs(z) < 1e-10) return k;
    if (std::abs(z) > kEscapeRadius) return 0;
  }
  return 0;
}

Complex chosen_parameter(const Options& o, const DynamicsConfig& cfg, const char* command) {
  if (!o.param.empty()) return parse_complex(o.param);
  const int m = require_period(o, command);
  const auto centers = find_centers(o.degree, m, cfg);
  if (o.index < 0 || static_cast<std::size_t>(o.index) >= centers.size())
    throw InvalidArgument("--index out of range: period " + std::to_string(m) + " has " +
                          std::to_string(centers.size()) + " centers");
  return centers[static_cast<std::size_t>(o.index)].center;
}

int cmd_cycles(const Options& o, std::ostream& out, std::ostream& err) {
  const DynamicsConfig cfg = dynamics_config(o);
  const Complex c = chosen_parameter(o, cfg, "cycles");
  const int n_max = o.max_period > 0 ? o.max_period : 6;
  const auto cycles = find_cycles(o.degree, c, n_max, cfg);
  const int k = critical_period(o.degree, c);

  json list = json::array();
  json multipliers = json::array();
  double lo = INFINITY, hi = 0.0;
  for (const auto& cyc : cycles) {
    list.push_back({{"period", cyc.period},
                    {"points", cjson(cyc.points)},
                    {"multiplier", cjson(cyc.multiplier)},
                    {"abs_multiplier", std::abs(cyc.multiplier)},
                    {"postcritical", cyc.postcritical},
                    {"eigenvalues", cjson(cyc.eigenvalues)}});
    if (cyc.postcritical) continue;
    multipliers.push_back(cjson(cyc.multiplier));
    for (const auto& l : cyc.eigenvalues) {
      lo = std::min(lo, std::abs(l));
      hi = std::max(hi, std::abs(l));
    }
  }
  json doc = {{"command", "cycles"},
              {"degree", o.degree},
              {"parameter", cjson(c)},
              {"max_period", n_max},
              {"cycles", list},
              {"multipliers", multipliers}};
  bool passed = true;
  if (k > 0) {
    // The bound 1/(2D) <= |lambda| < 1 is a statement about centers.
    const double floor = 1.0 / (2.0 * o.degree);
    passed = lo >= floor - 1e-12 && hi < 1.0;
    doc["critical_period"] = k;
    doc["lambda_bound"] = {{"min_abs", lo}, {"max_abs", hi}, {"passed", passed}};
  } else {
    doc["critical_period"] = nullptr;
  }
  Sink sink(o.out, out);
  sink.stream() << doc.dump(2) << "\n";
  sink.close();
  return verdict(passed, "cycles", {"lambda_bound"}, err);
}

int cmd_equidist(const Options& o, std::ostream& out, std::ostream& err) {
  const AnchorSpec anchor = make_anchor(o.degree, parse_complex(o.anchor));
  const auto periods = parse_periods(o.periods.empty() ? "12,16,20,24" : o.periods);
  const EquidistReport report = run_equidistribution(anchor, periods, o.modes, dynamics_config(o));

  json rows = json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"period", r.period},
                    {"center", cjson(r.center)},
                    {"samples", r.samples},
                    {"max_moment", r.max_moment},
                    {"radial_deviation", r.radial_deviation},
                    {"mean_radius", r.mean_radius},
                    {"anchor_distance", r.anchor_distance},
                    {"gap_ok", r.gap_ok}});
  json doc = {{"command", "equidist"},
              {"degree", o.degree},
              {"anchor", {{"c0", cjson(anchor.c0)},
                          {"beta", cjson(anchor.beta)},
                          {"multiplier", cjson(anchor.multiplier)},
                          {"preperiod", anchor.preperiod}}},
              {"modes", o.modes},
              {"rows", rows},
              {"moment_slope", report.moment_slope},
              {"radial_slope", report.radial_slope},
              {"passed", report.passed}};
  Sink sink(o.out, out);
  sink.stream() << doc.dump(2) << "\n";
  sink.close();

  if (!o.svg.empty()) {
    static const char* colors[] = {"#e05050", "#e0a040", "#60c060", "#50a0e0", "#a070e0", "#e070c0"};
    std::vector<SvgSeries> series;
    double extent = 1.2;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      const auto& r = report.rows[i];
      series.push_back({r.scaled, colors[i % 6], "m = " + std::to_string(r.period)});
      for (const auto& z : r.scaled) extent = std::max(extent, 1.1 * std::abs(z));
    }
    Sink svg(o.svg, out);
    write_scatter_svg(svg.stream(), series, {{1.0, "|nu| = 1", "#aaaaaa"}}, extent, "mu * lambda near the anchor");
    svg.close();
  }
  std::vector<std::string> failed;
  if (!(report.moment_slope < 0.0)) failed.emplace_back("moment_slope");
  if (!(report.radial_slope < 0.0)) failed.emplace_back("radial_slope");
  return verdict(report.passed, "equidist", failed, err);
}

int cmd_matrix(const Options& o, std::ostream& out, std::ostream& err) {
  const DynamicsConfig cfg = dynamics_config(o);
  const int m = require_period(o, "matrix");
  CenterRecord rec;
  if (!o.param.empty()) {
    const auto polished = polish_center(o.degree, m, to_ext(parse_complex(o.param)));
    rec = make_center_record(o.degree, m, polished.first);
    if (!validate_center(rec, cfg)) throw InvalidArgument("--param does not polish to a center of period " +
                                                          std::to_string(m));
  } else {
    const auto centers = find_centers(o.degree, m, cfg);
    if (o.index < 0 || static_cast<std::size_t>(o.index) >= centers.size())
      throw InvalidArgument("--index out of range: period " + std::to_string(m) + " has " +
                            std::to_string(centers.size()) + " centers");
    rec = centers[static_cast<std::size_t>(o.index)];
  }
  const auto explicit_m = build_matrix_explicit(rec);
  const auto residue_m = build_matrix_residues(o.degree, rec.center, rec.orbit);
  const double entry_diff = (explicit_m.entries - residue_m.entries).cwiseAbs().maxCoeff();

  std::vector<Complex> expected{0.0, 1.0 / o.degree};
  if (m >= 3)
    for (const auto& e : compute_spectrum(rec).eigenvalues) expected.push_back(e.value);
  auto eig = matrix_eigenvalues(residue_m.entries);
  std::sort(eig.begin(), eig.end(), lex_less);
  std::sort(expected.begin(), expected.end(), lex_less);
  const double match = matching_distance(eig, expected);
  const bool entries_ok = entry_diff <= 1e-8;
  const bool roots_ok = match <= 1e-8;

  json doc = {{"command", "matrix"},
              {"degree", o.degree},
              {"period", m},
              {"center", center_json(rec, o.precision > kBaselinePrecision)},
              {"points", cjson(residue_m.points)},
              {"explicit", matrix_json(explicit_m.entries)},
              {"residue", matrix_json(residue_m.entries)},
              {"max_entry_difference", entry_diff},
              {"characteristic_polynomial", cjson(characteristic_polynomial(residue_m.entries))},
              {"eigenvalues", cjson(eig)},
              {"expected", cjson(expected)},
              {"matching_distance", match},
              {"passed", entries_ok && roots_ok}};
  Sink sink(o.out, out);
  sink.stream() << doc.dump(2) << "\n";
  sink.close();
  std::vector<std::string> failed;
  if (!entries_ok) failed.emplace_back("entries");
  if (!roots_ok) failed.emplace_back("characteristic_roots");
  return verdict(failed.empty(), "matrix", failed, err);
}

int error_exit(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return kExitUsage;
    case ErrorKind::Exact: return kExitExact;
    case ErrorKind::Numerical: return kExitNumerical;
    case ErrorKind::Resource: return kExitResource;
  }
  return kExitNumerical;
}

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Exact: return "exact";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Resource: return "resource";
  }
  return "unknown";
}

int failure(std::ostream& err, const std::string& error, const std::string& kind, const std::string& message,
            int code) {
  err << json{{"status", "error"}, {"error", error}, {"kind", kind}, {"message", message}, {"exit_code", code}}.dump()
      << "\n";
  return code;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  auto number = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size() || t.empty()) throw InvalidArgument("cannot parse complex number '" + text + "'");
    return v;
  };
  if (s.empty()) throw InvalidArgument("empty complex number");
  if (const auto comma = s.find(','); comma != std::string::npos) {
    const std::string re = s.substr(0, comma), im = s.substr(comma + 1);
    if (re.empty() || im.empty()) throw InvalidArgument("cannot parse complex number '" + text + "'");
    return {number(re), number(im)};
  }
  if (s.back() != 'i' && s.back() != 'j') {
    if (s == "+" || s == "-") throw InvalidArgument("cannot parse complex number '" + text + "'");
    return {number(s), 0.0};
  }
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, number(s)};
  const std::string re = s.substr(0, split);
  if (re == "+" || re == "-") throw InvalidArgument("cannot parse complex number '" + text + "'");
  return {number(re), number(s.substr(split))};
}

std::vector<int> parse_periods(const std::string& text) {
  auto to_int = [&](const std::string& t) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (t.empty() || used != t.size() || v < 1) throw InvalidArgument("bad period list '" + text + "'");
    return v;
  };
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int a = to_int(text.substr(0, dots));
    const int b = to_int(text.substr(dots + 2));
    if (b < a) throw InvalidArgument("empty period range '" + text + "'");
    for (int m = a; m <= b; ++m) out.push_back(m);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_int(item));
  if (out.empty()) throw InvalidArgument("empty period list");
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of the pushforward operator for periodic z^D + c", "pf-spectra"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--degree", o.degree, "D in z^D + c (>= 2)")->capture_default_str();
    sub->add_option("--period", o.period, "period m");
    sub->add_option("--periods", o.periods, "period list, '12,16,20' or '3..14'");
    sub->add_option("--precision", o.precision, "bits: 53 prints decimals; above 53 also prints the 106-bit "
                                                "center as hex floats (at most 113)")
        ->capture_default_str();
    sub->add_option("--out", o.out, "output file (stdout if omitted)");
    sub->add_option("--svg", o.svg, "SVG figure path");
    sub->add_flag("--json", o.json, "machine-readable output");
    sub->add_option("--threads", o.threads, "worker threads (falls back to PF_SPECTRA_THREADS)");
    sub->add_flag("--force", o.force, "run beyond the exact ceiling");
  };

  using Handler = std::function<int(const Options&, std::ostream&, std::ostream&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;

  auto* gleason = app.add_subcommand("gleason", "Gleason tower degree table and exact certificates");
  common(gleason);
  gleason->add_option("--max-period", o.max_period, "build G_n, H_n for n <= M");
  gleason->add_flag("--certify", o.certify, "simple-root and pairwise resultant certificates");
  gleason->footer("Exact resultants grow quickly: D=2 M=7 takes seconds, M=8 about a minute.");
  commands.emplace_back(gleason, cmd_gleason);

  auto* centers = app.add_subcommand("centers", "all centers of exact period m");
  common(centers);
  centers->footer("--out csv|json selects the format on stdout; any other value is a file path.");
  commands.emplace_back(centers, cmd_centers);

  auto* survey = app.add_subcommand("survey", "eigenvalues and invariant checks over all centers");
  common(survey);
  commands.emplace_back(survey, cmd_survey);

  auto* units = app.add_subcommand("certify-units", "exact unit certificate for D lambda");
  common(units);
  units->add_flag("--no-crosscheck", o.no_crosscheck, "skip the comparison with the numeric survey");
  units->footer("Default ceiling: D=2 m<=7, D=3 m<=5, D=4 m<=4, else m<=3. D=2 m=7 takes about 20 s.");
  commands.emplace_back(units, cmd_certify_units);

  auto* cycles = app.add_subcommand("cycles", "periodic cycles, multipliers and cycle eigenvalues");
  common(cycles);
  cycles->add_option("--param", o.param, "parameter c, e.g. -1 or 0.25,0.5 or -0.12+0.74i");
  cycles->add_option("--index", o.index, "with --period: which center (sorted by re, im)");
  cycles->add_option("--max-period", o.max_period, "largest cycle period (default 6)");
  commands.emplace_back(cycles, cmd_cycles);

  auto* equidist = app.add_subcommand("equidist", "moments of rescaled spectra near a Misiurewicz anchor");
  common(equidist);
  equidist->add_option("--anchor", o.anchor, "anchor parameter c0")->capture_default_str();
  equidist->add_option("--modes", o.modes, "Fourier modes")->capture_default_str();
  commands.emplace_back(equidist, cmd_equidist);

  auto* matrix = app.add_subcommand("matrix", "explicit and residue pushforward matrices for one center");
  common(matrix);
  matrix->add_option("--param", o.param, "approximate center, polished by Newton");
  matrix->add_option("--index", o.index, "which center (sorted by re, im)");
  commands.emplace_back(matrix, cmd_matrix);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return failure(err, e.get_name(), "usage", e.what(), kExitUsage);
  }

  try {
    check_common(o);
    for (auto& [sub, handler] : commands)
      if (sub->parsed()) return handler(o, out, err);
    return failure(err, "NoCommand", "usage", "no command given", kExitUsage);
  } catch (const Error& e) {
    return failure(err, e.name(), kind_name(e.kind()), e.what(), error_exit(e.kind()));
  } catch (const IoFailure& e) {
    return failure(err, "IoFailure", "io", e.what(), kExitIo);
  } catch (const std::bad_alloc&) {
    return failure(err, "OutOfMemory", "resource", "allocation failed", kExitResource);
  }
}

}  // namespace pfs
