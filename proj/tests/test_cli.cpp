#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "pfspectra/cli.hpp"
#include "pfspectra/errors.hpp"

using namespace pfs;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("parse_complex") {
  CHECK(parse_complex("-2") == Complex(-2.0, 0.0));
  CHECK(parse_complex("0.25,-0.5") == Complex(0.25, -0.5));
  CHECK(parse_complex("i") == Complex(0.0, 1.0));
  CHECK(parse_complex("-i") == Complex(0.0, -1.0));
  CHECK(parse_complex("-0.12+0.74i") == Complex(-0.12, 0.74));
  CHECK(parse_complex("1e-3-2e+1i") == Complex(1e-3, -20.0));
  CHECK(parse_complex("3j") == Complex(0.0, 3.0));
  CHECK_THROWS_AS(parse_complex("abc"), InvalidArgument);
  CHECK_THROWS_AS(parse_complex(""), InvalidArgument);
  CHECK_THROWS_AS(parse_complex("1,"), InvalidArgument);
}

TEST_CASE("parse_periods") {
  CHECK(parse_periods("12,16,20,24") == std::vector<int>{12, 16, 20, 24});
  CHECK(parse_periods("3..6") == std::vector<int>{3, 4, 5, 6});
  CHECK(parse_periods("5") == std::vector<int>{5});
  CHECK_THROWS_AS(parse_periods("6..3"), InvalidArgument);
  CHECK_THROWS_AS(parse_periods("0"), InvalidArgument);
  CHECK_THROWS_AS(parse_periods("3,x"), InvalidArgument);
}

TEST_CASE("usage errors exit 2 with failure JSON") {
  for (const auto& args : std::vector<std::vector<std::string>>{{"survey", "--degree", "1", "--period", "3"},
                                                                {"survey"},
                                                                {"nonsense"},
                                                                {},
                                                                {"centers", "--period", "3", "--precision", "200"},
                                                                {"equidist", "--anchor", "i", "--periods", "4,5"}}) {
    const Run r = run(args);
    CHECK(r.code == kExitUsage);
    const json j = json::parse(r.err);
    CHECK(j["status"] == "error");
    CHECK(j["exit_code"] == kExitUsage);
  }
}

TEST_CASE("survey of period one is empty") {
  const Run r = run({"survey", "--degree", "2", "--period", "1"});
  CHECK(r.code == kExitOk);
  CHECK(lines(r.out) == 1);
  CHECK(r.err.find("dim Q_f = 0") != std::string::npos);
}

TEST_CASE("survey of period three") {
  const Run r = run({"survey", "--degree", "2", "--period", "3"});
  CHECK(r.code == kExitOk);
  CHECK(lines(r.out) == 4);
  CHECK(r.out.rfind("D,m,re_c,im_c,re_lambda,im_lambda,residual,abs_lambda\n", 0) == 0);

  const Run j = run({"survey", "--degree", "2", "--period", "3", "--json"});
  const json doc = json::parse(j.out);
  CHECK(doc["passed"] == true);
  CHECK(doc["periods"][0]["centers"] == 3);
  CHECK(doc["periods"][0]["eigenvalues"] == 3);
}

TEST_CASE("gleason certificates") {
  const Run r = run({"gleason", "--degree", "2", "--max-period", "6", "--certify"});
  CHECK(r.code == kExitOk);
  const json doc = json::parse(r.out);
  CHECK(doc["poonen"].size() == 15);
  for (const auto& p : doc["poonen"]) {
    CHECK(p["passed"] == true);
    CHECK((p["resultant"] == "1" || p["resultant"] == "-1"));
  }
  CHECK(doc["H"]["4"] == json::array({"1", "0", "2", "3", "3", "3", "1"}));
}

TEST_CASE("cycles of z^2") {
  const Run r = run({"cycles", "--degree", "2", "--param", "0", "--max-period", "3"});
  CHECK(r.code == kExitOk);
  const json doc = json::parse(r.out);
  const double expected[] = {2.0, 4.0, 8.0, 8.0};
  REQUIRE(doc["multipliers"].size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(doc["multipliers"][i][0].get<double>() == doctest::Approx(expected[i]).epsilon(1e-12));
    CHECK(std::abs(doc["multipliers"][i][1].get<double>()) < 1e-12);
  }
  CHECK(doc["critical_period"] == 1);
  CHECK(doc["lambda_bound"]["passed"] == true);
}

TEST_CASE("certify-units") {
  const Run r = run({"certify-units", "--degree", "3", "--period", "3"});
  CHECK(r.code == kExitOk);
  const json doc = json::parse(r.out);
  CHECK(doc["S_constant"] == "1");
  CHECK(doc["checks"]["upsilon3_closed_form"] == true);
  CHECK(doc["crosscheck"]["passed"] == true);

  const Run ceiling = run({"certify-units", "--degree", "2", "--period", "9"});
  CHECK(ceiling.code == kExitResource);
  CHECK(ceiling.err.find("deg H_m") != std::string::npos);
}

TEST_CASE("matrix agrees") {
  const Run r = run({"matrix", "--degree", "3", "--period", "4", "--index", "5"});
  CHECK(r.code == kExitOk);
  const json doc = json::parse(r.out);
  CHECK(doc["max_entry_difference"].get<double>() < 1e-8);
  CHECK(doc["eigenvalues"].size() == 4);
}

TEST_CASE("io failure") {
  const Run r = run({"survey", "--period", "3", "--out", "/nonexistent-dir/x.csv"});
  CHECK(r.code == kExitIo);
}

TEST_CASE("output does not depend on the thread count") {
  const Run a = run({"survey", "--degree", "3", "--periods", "3..5", "--threads", "1", "--precision", "106"});
  const Run b = run({"survey", "--degree", "3", "--periods", "3..5", "--threads", "4", "--precision", "106"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  const Run c = run({"centers", "--degree", "2", "--period", "7", "--threads", "3", "--json"});
  const Run d = run({"centers", "--degree", "2", "--period", "7", "--threads", "2", "--json"});
  CHECK(c.out == d.out);
  CHECK(json::parse(c.out)["count"] == 63);
}
