#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "nilspace/cli.hpp"

using namespace nilspace;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "nilspace");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(NILSPACE_FIXTURE_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("triangularize a conjugated NT3 over F2") {
  const auto r = run({"triangularize", "--input", fixture("nt3_f2_conjugated.json")});
  REQUIRE(r.code == 0);
  const auto trace = trace_from_json(parse_json_text(r.out));
  CHECK(conjugate(trace.input, trace.p) == MatrixSubspace::strictly_upper(trace.tower, 3));
  CHECK(trace.input == subspace_from_json(read_json_file(fixture("nt3_f2_conjugated.json"))));
  CHECK(dump(to_json(trace)) == r.out);
}

TEST_CASE("triangularize a conjugated NT3 over the Hamilton quaternions") {
  const auto r = run({"triangularize", "-i", fixture("nt3_hamilton_conjugated.json")});
  REQUIRE(r.code == 0);
  const auto trace = trace_from_json(parse_json_text(r.out));
  CHECK(conjugate(trace.input, trace.p) == MatrixSubspace::strictly_upper(Tower::hamilton(), 3));
  CHECK(trace.all_observations_hold());
}

TEST_CASE("bound on the zero space") {
  const auto r = run({"bound", "--input", fixture("zero_space.json")});
  CHECK(r.code == 0);
  const auto j = parse_json_text(r.out);
  CHECK(j["statement"] == "0 <= q*C(n,2) = 1*3 = 3");
  CHECK(j["holds"] == true);
}

TEST_CASE("bound from an inline literal") {
  const auto r = run({"bound", "--literal", R"({"tower":{"kind":"quaternion","a":"-1","b":"-1"},"n":2,"basis":[[["0","i"],["0","0"]]]})"});
  CHECK(r.code == 0);
  CHECK(parse_json_text(r.out)["bound"] == 4);
}

TEST_CASE("enumerate") {
  const auto r = run({"enumerate", "--p", "2", "--n", "2"});
  CHECK(r.code == 0);
  const auto j = parse_json_text(r.out);
  CHECK(j["summary"] == "3 maximal subspaces, all similar to NT_2");
  CHECK_FALSE(j.contains("wall_seconds"));
  CHECK(run({"enumerate", "--p", "2", "--n", "2"}).out == r.out);
  CHECK(parse_json_text(run({"enumerate", "--p", "2", "--n", "2", "--timing"}).out).contains("wall_seconds"));
  CHECK(run({"enumerate", "--p", "5", "--n", "2"}).code == 1);
}

TEST_CASE("similarity") {
  const auto r = run({"similarity", "--input", fixture("lower_f2.json")});
  CHECK(r.code == 0);
  const auto j = parse_json_text(r.out);
  CHECK(j["similar"] == true);
  CHECK(j["P"].dump() == "[[0,1],[1,0]]");
  const auto self = run({"similarity", "--input", fixture("lower_f2.json"), "--target", fixture("lower_f2.json")});
  CHECK(parse_json_text(self.out)["P"].dump() == "[[1,0],[0,1]]");
}

TEST_CASE("precondition failures exit 2 with the step") {
  const auto r = run({"triangularize", "--input", fixture("non_nilpotent_f2.json")});
  CHECK(r.code == 2);
  const auto j = parse_json_text(r.out);
  CHECK(j["error"] == "NotNilpotent");
  CHECK(j["step"] == "precondition");
  CHECK(r.err.find("NotNilpotent") != std::string::npos);

  const auto nv = run({"triangularize", "--no-verify", "--input", fixture("non_nilpotent_f2.json")});
  CHECK(nv.code == 2);
  CHECK_FALSE(parse_json_text(nv.out)["step"].get<std::string>().empty());

  const auto small = run({"triangularize", "--input", fixture("zero_space.json")});
  CHECK(small.code == 2);
  CHECK(parse_json_text(small.out)["error"] == "NotMaximalDimension");
}

TEST_CASE("usage and parse errors exit 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"bound"}).code == 1);
  CHECK(run({"bound", "--input", "a", "--literal", "{}"}).code == 1);
  CHECK(run({"bound", "--literal", "{"}).code == 1);
  CHECK(run({"enumerate", "--p", "2"}).code == 1);
  CHECK(run({"selftest", "--samples", "1.5"}).code == 1);
  const auto f = run({"bound", "--input", fixture("float_entry.json")});
  CHECK(f.code == 1);
  CHECK(parse_json_text(f.out)["error"] == "ParseError");
  CHECK(run({"bound", "--input", fixture("missing.json")}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("output files match stdout") {
  const std::string path = "cli_test_output.json";
  const auto to_file = run({"triangularize", "--input", fixture("nt3_hamilton_conjugated.json"), "--output", path});
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());
  const auto to_stdout = run({"triangularize", "--input", fixture("nt3_hamilton_conjugated.json")});
  CHECK(slurp(path) == to_stdout.out);
  std::remove(path.c_str());
}

TEST_CASE("selftest") {
  const auto r = run({"selftest", "--samples", "3", "--seed", "5"});
  CHECK(r.code == 0);
  const auto j = parse_json_text(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["seed"] == 5);
  CHECK(j["suites"].size() == 8);
}
