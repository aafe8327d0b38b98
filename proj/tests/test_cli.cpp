#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"

using ivest::cli::run;
using ivest::cli::validate_output;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ivest_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("interval output") {
  auto r = call({"interval", "neyman", "--x0", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("kind=neyman\nx0=3\nlo=2\nhi=4\ncoverage_given_x0=0.68361229903") == 0);
  CHECK(r.out.find("q_lo=0.15865525393145") != std::string::npos);

  r = call({"interval", "neyman", "--x0", "-2"});
  CHECK(r.out.find("lo=-3\nhi=-1\ncoverage_given_x0=0\n") != std::string::npos);

  r = call({"interval", "neyman", "--x0", "-2", "--policy", "clip"});
  CHECK(r.out.find("lo=0\nhi=0\n") != std::string::npos);

  r = call({"interval", "bayes", "--x0", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("lo=4.0000009967") != std::string::npos);
  CHECK(r.out.find("hi=6.0000001879") != std::string::npos);
  CHECK(r.out.find("coverage_given_x0") == std::string::npos);

  r = call({"interval", "neyman", "--x0", "3", "--u", "2"});
  CHECK(r.out.find("x0=6\nlo=4\nhi=8\n") != std::string::npos);

  r = call({"interval", "neyman", "--x0", "0", "--rounded"});
  CHECK(r.out.find("q_lo=0.16\nq_hi=0.84\n") != std::string::npos);

  r = call({"interval", "neyman", "--x0", "0", "--policy", "clip", "--level", "0.5"});
  CHECK(r.out.find("lo=0\nhi=1\n") != std::string::npos);

  r = call({"interval", "bayes", "--x0", "1", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"kind\": \"bayes\"") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(call({}).code == 2);
  CHECK(call({"interval", "neyman"}).code == 2);
  CHECK(call({"interval", "frequentist", "--x0", "1"}).code == 2);
  CHECK(call({"interval", "neyman", "--x0", "1", "--q-lo", "0.9", "--q-hi", "0.1"}).code == 2);
  CHECK(call({"interval", "bayes", "--x0", "1", "--policy", "clip"}).code == 2);
  CHECK(call({"interval", "neyman", "--x0", "1", "--threshold", "2"}).code == 2);
  CHECK(call({"interval", "neyman", "--x0", "nan"}).code == 2);
  CHECK(call({"scatter", "--n", "0"}).code == 2);
  CHECK(call({"scatter", "--a-max", "-1"}).code == 2);
  CHECK(call({"experiment", "fig3", "--start", "0", "--n", "10"}).code == 2);
  CHECK(call({"experiment", "fig5", "--step", "0", "--n", "10"}).code == 2);
  CHECK(call({"experiment", "fig5", "--start", "3", "--stop", "1", "--n", "10"}).code == 2);
  CHECK(call({"experiment", "fig5", "--policy", "clip", "--n", "10"}).code == 2);
  CHECK(call({"experiment", "fig9"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("experiment CSV: schema, determinism, validation") {
  const std::vector<std::string> args{"experiment", "fig3-reject", "--start", "0.2", "--stop", "1",
                                      "--n",        "2000",        "--seed",  "17"};
  const auto a = call(args);
  REQUIRE(a.code == 0);
  CHECK(a.out.rfind("grid_value,rate,std_err,n_trials,analytic,seed\n0.2,", 0) == 0);
  CHECK(a.out.find(",0.7714612881537") != std::string::npos);
  CHECK(a.out.find("\n0.6,") != std::string::npos);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 6);
  CHECK(call(args).out == a.out);
  const auto v = validate_output(a.out);
  CHECK(v.ok);
  CHECK(v.rows == 5);
}

TEST_CASE("every experiment writes valid CSV and JSON") {
  for (const std::string name : {"fig3", "fig3-reject", "fig4", "fig4-neyman", "fig5"}) {
    const auto csv = call({"experiment", name, "--n", "200", "--seed", "3", "--step", "1"});
    REQUIRE(csv.code == 0);
    CHECK_MESSAGE(validate_output(csv.out).ok, name);
    const auto js = call({"experiment", name, "--n", "200", "--seed", "3", "--step", "1", "--format", "json"});
    REQUIRE(js.code == 0);
    CHECK_MESSAGE(validate_output(js.out).ok, name);
  }
}

TEST_CASE("seed comes from the environment when not given") {
  ::setenv("IVEST_SEED", "4242", 1);
  const auto r = call({"experiment", "fig5", "--start", "1", "--stop", "1", "--n", "100"});
  CHECK(r.out.find(",4242\n") != std::string::npos);
  ::setenv("IVEST_SEED", "not-a-number", 1);
  CHECK(call({"scatter", "--n", "5"}).code == 2);
  ::unsetenv("IVEST_SEED");
}

TEST_CASE("scatter output and file round trip") {
  const auto path = temp_file("scatter.csv");
  const auto r = call({"scatter", "--n", "500", "--a-max", "2", "--seed", "5", "--out", path.string()});
  REQUIRE(r.code == 0);
  const std::string text = slurp(path);
  CHECK(text.rfind("a,x\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 501);
  const auto v = call({"validate", path.string()});
  CHECK(v.code == 0);
  CHECK(v.out == "valid rows=500\n");
  std::filesystem::remove(path);
}

TEST_CASE("I/O and validation failures exit with 1") {
  CHECK(call({"scatter", "--n", "3", "--out", "/nonexistent-dir/x.csv"}).code == 1);
  CHECK(call({"validate", "/nonexistent-dir/x.csv"}).code == 1);
  const auto path = temp_file("bad.csv");
  std::ofstream(path) << "grid_value,rate,std_err,n_trials,analytic,seed\n1,1.5,0,10,,1\n";
  CHECK(call({"validate", path.string()}).code == 1);
  std::filesystem::remove(path);
}

TEST_CASE("validator rejects malformed content") {
  CHECK_FALSE(validate_output("").ok);
  CHECK_FALSE(validate_output("a,b\n1,2\n").ok);
  CHECK_FALSE(validate_output("a,x\n").ok);
  CHECK_FALSE(validate_output("a,x\n-1,2\n").ok);
  CHECK_FALSE(validate_output("a,x\n1,2,3\n").ok);
  CHECK_FALSE(validate_output("grid_value,rate,std_err,n_trials,analytic,seed\n1,0.5,0.1,0,,1\n").ok);
  CHECK(validate_output("grid_value,rate,std_err,n_trials,analytic,seed\n1,0.5,0.1,10,,1\n").ok);
  CHECK_FALSE(validate_output("{\"experiment\": \"fig5\"}").ok);
  CHECK_FALSE(validate_output("{not json").ok);
}
