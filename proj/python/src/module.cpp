#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pfspectra/cli.hpp"
#include "pfspectra/equidist.hpp"
#include "pfspectra/errors.hpp"
#include "pfspectra/gleason.hpp"
#include "pfspectra/parallel.hpp"
#include "pfspectra/survey.hpp"
#include "pfspectra/units.hpp"

namespace py = pybind11;
using namespace pfs;

namespace {

py::int_ to_py(const BigInt& x) { return py::int_(py::module_::import("builtins").attr("int")(x.get_str())); }

py::list to_py(const IntPoly& p) {
  py::list out;
  for (const auto& c : p.coeffs()) out.append(to_py(c));
  return out;
}

DynamicsConfig config(int threads) {
  DynamicsConfig cfg;
  cfg.threads = resolve_threads(threads);
  return cfg;
}

py::dict survey(int degree, int period, int threads) {
  PeriodSurvey s;
  {
    py::gil_scoped_release release;
    s = survey_period(degree, period, config(threads));
  }
  py::list centers, spectra;
  for (std::size_t i = 0; i < s.centers.size(); ++i) {
    centers.append(s.centers[i].center);
    std::vector<Complex> ev;
    if (i < s.spectra.size())
      for (const auto& e : s.spectra[i].eigenvalues) ev.push_back(e.value);
    spectra.append(ev);
  }
  py::dict d;
  d["degree"] = degree;
  d["period"] = period;
  d["centers"] = centers;
  d["eigenvalues"] = spectra;
  d["passed"] = s.passed();
  d["failed_checks"] = s.failures();
  d["worst_identity"] = s.worst_identity;
  d["note"] = s.note;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "pushforward spectra for periodic z^D + c";

  static py::exception<Error> base(m, "PfsError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  m.def("center_count", &center_count, py::arg("degree"), py::arg("period"));

  m.def(
      "gleason",
      [](int degree, int max_period) {
        const GleasonTower t = build_tower(degree, max_period);
        py::dict d;
        py::list g, h;
        for (int n = 1; n <= max_period; ++n) {
          g.append(to_py(t.G(n)));
          h.append(to_py(t.H(n)));
        }
        d["G"] = g;
        d["H"] = h;
        return d;
      },
      py::arg("degree"), py::arg("max_period"), "G_n and H_n for n = 1..M, ascending integer coefficients");

  m.def(
      "poonen",
      [](int degree, int max_period) {
        py::list out;
        for (const auto& c : certify_poonen_all(build_tower(degree, max_period)))
          out.append(py::make_tuple(c.m, c.n, to_py(c.resultant)));
        return out;
      },
      py::arg("degree"), py::arg("max_period"), "(m, n, Res(H_m, H_n)) for m < n <= M");

  m.def(
      "centers",
      [](int degree, int period, int threads) {
        std::vector<CenterRecord> recs;
        {
          py::gil_scoped_release release;
          recs = find_centers(degree, period, config(threads));
        }
        std::vector<Complex> out;
        for (const auto& r : recs) out.push_back(r.center);
        return out;
      },
      py::arg("degree"), py::arg("period"), py::arg("threads") = 0);

  m.def("survey", &survey, py::arg("degree"), py::arg("period"), py::arg("threads") = 0,
        "centers, eigenvalues per center and the invariant checks");

  m.def(
      "cycles",
      [](int degree, Complex c, int max_period) {
        py::list out;
        for (const auto& cyc : find_cycles(degree, c, max_period)) {
          py::dict d;
          d["period"] = cyc.period;
          d["points"] = cyc.points;
          d["multiplier"] = cyc.multiplier;
          d["postcritical"] = cyc.postcritical;
          d["eigenvalues"] = cyc.eigenvalues;
          out.append(d);
        }
        return out;
      },
      py::arg("degree"), py::arg("c"), py::arg("max_period"));

  m.def(
      "certify_units",
      [](int degree, int period, bool force) {
        const UnitCertificate cert = certify(build_tower(degree, period), period, force);
        py::dict d;
        d["S"] = to_py(cert.s);
        d["upsilon"] = to_py(cert.upsilon);
        d["h_degree"] = cert.h_degree;
        d["squarefree"] = cert.squarefree;
        d["passed"] = cert.passed();
        return d;
      },
      py::arg("degree"), py::arg("period"), py::arg("force") = false);

  m.def(
      "equidist",
      [](int degree, Complex anchor, std::vector<int> periods, int modes) {
        const EquidistReport r = run_equidistribution(make_anchor(degree, anchor), periods, modes);
        py::list rows;
        for (const auto& row : r.rows) {
          py::dict d;
          d["period"] = row.period;
          d["max_moment"] = row.max_moment;
          d["radial_deviation"] = row.radial_deviation;
          rows.append(d);
        }
        py::dict d;
        d["rows"] = rows;
        d["moment_slope"] = r.moment_slope;
        d["radial_slope"] = r.radial_slope;
        d["passed"] = r.passed;
        return d;
      },
      py::arg("degree"), py::arg("anchor"), py::arg("periods"), py::arg("modes") = 10);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "(exit code, stdout, stderr) of the command line front end");
}
