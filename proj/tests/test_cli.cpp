// End-to-end exit-code contract of the calkinkit binary. The binary path
// comes in through CALKINKIT_BIN; scratch files go to the working directory
// (ctest runs these in the build tree).

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>

#include "calkin/io.hpp"
#include "calkin/presets.hpp"

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(CALKINKIT_BIN) + " " + args +
                          " > cli_test_stdout.txt 2> cli_test_stderr.txt";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("check: exit 0 on spherical presets, 2 otherwise, 1 on bad files") {
  CHECK(run("check --preset chavan-counterexample") == 0);
  CHECK(run("check --preset banded-spherical") == 0);

  write_file("cli_counterexample.json",
             calkin::tuple_to_json(calkin::make_preset("chavan-counterexample")));
  CHECK(run("check cli_counterexample.json") == 0);

  write_file("cli_rr.json",
             calkin::tuple_to_json(calkin::OperatorTuple{
                 calkin::right_shift(), calkin::right_shift()}));
  CHECK(run("check cli_rr.json") == 2);

  write_file("cli_bad.json", "{ this is not json");
  CHECK(run("check cli_bad.json") == 1);
  CHECK(run("check cli_missing_file.json") == 1);
  CHECK(run("check --preset no-such-preset") == 1);
  CHECK(run("check --preset right-shift --sizes 64,32") == 1);
}

TEST_CASE("isometrize: exit 3 on obstruction, 0 with K = 0 on isometries") {
  write_file("cli_left.json",
             calkin::operator_to_json(calkin::left_shift()));
  CHECK(run("isometrize cli_left.json") == 3);

  CHECK(run("isometrize --preset right-shift --format json --out cli_iso.json") ==
        0);
  const std::string report = slurp("cli_iso.json");
  CHECK(report.find("\"kernel_dim\": 0") != std::string::npos);
  CHECK(run("isometrize --preset chavan-counterexample") == 0);

  write_file("cli_rr.json",
             calkin::tuple_to_json(calkin::OperatorTuple{
                 calkin::right_shift(), calkin::right_shift()}));
  CHECK(run("isometrize cli_rr.json") == 2);
}

TEST_CASE("index: reports -1 for the right shift") {
  CHECK(run("index --preset right-shift --format json --out cli_index.json") ==
        0);
  const std::string report = slurp("cli_index.json");
  CHECK(report.find("\"winding_index\": -1") != std::string::npos);
  CHECK(report.find("\"section_index\": -1") != std::string::npos);
  CHECK(report.find("\"agreement\": true") != std::string::npos);

  // not Fredholm: symbol vanishes on the circle
  write_file("cli_vanish.json",
             calkin::operator_to_json(calkin::toeplitz(
                 calkin::LaurentPoly({{1, 0.5}, {2, 0.5}}))));
  CHECK(run("index cli_vanish.json") == 2);
}

TEST_CASE("verdict: OBSTRUCTED for the shift pair") {
  CHECK(run("verdict --preset-a right-shift --preset-b left-shift "
            "--format json --out cli_verdict.json") == 0);
  const std::string report = slurp("cli_verdict.json");
  CHECK(report.find("OBSTRUCTED") != std::string::npos);

  write_file("cli_r.json", calkin::operator_to_json(calkin::right_shift()));
  CHECK(run("verdict cli_r.json cli_r.json") == 2);
}

TEST_CASE("demo passes") {
  CHECK(run("demo") == 0);
  CHECK(run("demo --format json --out cli_demo.json") == 0);
  CHECK(slurp("cli_demo.json").find("\"all_passed\": true") != std::string::npos);
}

TEST_CASE("oracle: small deviations pass, the size cap is enforced") {
  CHECK(run("oracle --preset chavan-counterexample --N 64") == 0);
  CHECK(run("oracle --preset banded-spherical --N 32") == 0);
  CHECK(run("oracle --preset right-shift --N 1024") == 1);

  // a hand-written tuple file with symbols and blocks
  write_file("cli_random_tuple.json", R"({"operators": [
    {"symbol": [[1, 0.4, 0.1], [-2, 0.3, 0.0], [0, -0.2, 0.05]],
     "compact": {"size": 3, "entries": [[0, 1, 0.5, -0.25], [2, 2, 0.1, 0.3]]}},
    {"symbol": [[-1, 0.7, 0.0], [3, 0.1, -0.2]],
     "compact": {"size": 2, "entries": [[1, 0, -0.4, 0.0]]}}
  ]})");
  CHECK(run("oracle cli_random_tuple.json --N 64") == 0);
}
