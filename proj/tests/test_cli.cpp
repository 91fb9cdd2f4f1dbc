#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "mwl/cli.hpp"
#include "mwl/errors.hpp"
#include "mwl/json_io.hpp"

using namespace mwl;

namespace {

const std::string kScenarios = MWL_SCENARIO_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scenario(const std::string& name) { return kScenarios + "/" + name; }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("mwl_test_cli_" + name);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("exit codes follow the report status") {
  CHECK(call({"mean", "--scenario", scenario("z2-shift.json")}).code == 0);
  CHECK(call({"wl-axioms", "--scenario", scenario("gen-product.json")}).code == 2);
  CHECK(call({"wl-axioms", "--scenario", scenario("log-card-axioms.json")}).code == 0);
  CHECK(call({"biv-check", "--scenario", scenario("cover-check.json")}).code == 0);
  CHECK(call({"addition", "--scenario", scenario("addition-coeff.json")}).code == 0);
  CHECK(call({"addition", "--scenario", scenario("addition-principal.json")}).code == 0);
}

TEST_CASE("errors exit with 1") {
  CHECK(call({"mean"}).code == 1);
  CHECK(call({"mean", "--scenario", scenario("does-not-exist.json")}).code == 1);
  CHECK(call({"no-such-command"}).code == 1);
  CHECK(call({"example", "no-such-example"}).code == 1);

  const auto bad = temp_file("bad.json");
  std::ofstream(bad) << "{\"module\": ";
  const auto r = call({"mean", "--scenario", bad.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("malformed JSON at byte") != std::string::npos);

  const auto composite = temp_file("composite.json");
  std::ofstream(composite) << R"({
    "module": {"group": {"free_rank": 1, "torsion": []}, "coeff": {"free_rank": 0, "torsion": [4]},
               "quotient": {"closure": "principal_gamma_z", "p": 4, "generators": [[[[0], [1]], [[1], [1]]]]}},
    "weak_length": {"kind": "log_card"},
    "witness": [[], [[[0], [1]]]],
    "folner": {"kind": "boxes", "n_max": 3}
  })";
  CHECK(call({"mean", "--scenario", composite.string()}).code == 1);
  std::filesystem::remove(bad);
  std::filesystem::remove(composite);
}

TEST_CASE("reports are deterministic") {
  const auto a = temp_file("a.json"), b = temp_file("b.json");
  for (const auto& [cmd, file] : std::vector<std::pair<std::string, std::string>>{
           {"wl-axioms", "log-card-axioms.json"}, {"biv-check", "cover-check.json"}, {"mean", "quotient-action.json"}}) {
    setenv("MWL_THREADS", "1", 1);
    call({cmd, "--scenario", scenario(file), "--out", a.string(), "--seed", "11"});
    setenv("MWL_THREADS", "3", 1);
    call({cmd, "--scenario", scenario(file), "--out", b.string(), "--seed", "11"});
    unsetenv("MWL_THREADS");
    CHECK(read_file(a) == read_file(b));
    CHECK_FALSE(read_file(a).empty());
  }
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("reports round-trip through validation") {
  const auto out = temp_file("round.json");
  const auto r = call({"mean", "--scenario", scenario("z2-shift.json"), "--out", out.string()});
  REQUIRE(r.code == 0);
  const Json report = parse_json(read_file(out), out.string());
  CHECK_NOTHROW(validate_report(report));
  CHECK(report["command"] == "mean");
  CHECK(report["status"] == "pass");
  CHECK(report["result"]["lower_bound"]["text"] == "log 2");
  // stdout carries the table and the status line
  CHECK(r.out.find("status: pass") != std::string::npos);

  const auto json = call({"mean", "--scenario", scenario("z2-shift.json"), "--format", "json"});
  CHECK(parse_json(json.out, "stdout") == report);
  std::filesystem::remove(out);
}

TEST_CASE("validation rejects malformed reports") {
  const Json good = parse_json(R"({"command":"mean","scenario":"x","status":"pass","result":{}})", "t");
  CHECK_NOTHROW(validate_report(good));
  Json bad = good;
  bad["status"] = "maybe";
  CHECK_THROWS_AS(validate_report(bad), InputError);
  Json missing = good;
  missing.erase("result");
  CHECK_THROWS_AS(validate_report(missing), InputError);
  Json ratios = good;
  ratios["result"]["ratios"] = Json::array({Json::object({{"n", 1}})});
  CHECK_THROWS_AS(validate_report(ratios), InputError);
}

TEST_CASE("the example registry is reachable") {
  const auto list = call({"list-examples"});
  CHECK(list.code == 0);
  for (const std::string name : {"z2-vs-z3", "ct15-bound", "addition-principal", "union-vs-sum"})
    CHECK(list.out.find(name) != std::string::npos);
  CHECK(call({"example", "list"}).out == list.out);
  CHECK(call({"example", "z2-vs-z3"}).code == 0);
  const auto out = temp_file("ex.json");
  CHECK(call({"example", "addition-coeff", "--out", out.string()}).code == 0);
  const Json report = parse_json(read_file(out), out.string());
  CHECK_NOTHROW(validate_report(report));
  CHECK(report["example"] == "addition-coeff");
  std::filesystem::remove(out);
}
