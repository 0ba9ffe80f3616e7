#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fraclift/cli.hpp"
#include "fraclift/gamma.hpp"
#include "fraclift/io.hpp"

using namespace fraclift;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

std::string temp_path(const char* name) { return std::string("fraclift_test_") + name; }

} // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).status == cli::kUsage);
  CHECK(run({"frobnicate"}).status == cli::kUsage);
  CHECK(run({"deriv", "--expr", "x"}).status == cli::kUsage);                 // missing --k
  CHECK(run({"deriv", "--k", "0.5"}).status == cli::kUsage);                  // no input
  CHECK(run({"deriv", "--expr", "x", "--k", "abc"}).status == cli::kUsage);
  CHECK(run({"deriv", "--expr", "x", "--k", "1", "--format", "xml"}).status == cli::kUsage);
  const Outcome bad = run({"deriv", "--expr", "x +", "--k", "1"});
  CHECK(bad.status == cli::kUsage);
  CHECK(contains(bad.err, "column 4"));
  CHECK(run({"--help"}).status == cli::kOk);
}

TEST_CASE("deriv of x at order one half") {
  const Outcome o = run({"deriv", "--expr", "x", "--k", "0.5", "--at", "1"});
  CHECK(o.status == cli::kOk);
  CHECK(contains(o.out, "1.12837916709551"));
  CHECK(contains(o.out, "*x^0.5"));
  CHECK(contains(o.out, "value at x = 1: 1.12837916709551"));
}

TEST_CASE("deriv reports kernel-annihilated terms") {
  const Outcome o = run({"deriv", "--expr", "(x-0)^(-0.5)", "--k", "0.5"});
  CHECK(o.status == cli::kOk);
  CHECK(contains(o.out, "0 (kernel: α+1−k = 0)"));
  const Outcome lifted = run({"deriv", "--expr", "x^(-0.5)", "--k", "0.5", "--via", "lifted"});
  CHECK(contains(lifted.out, "0 (kernel: α+1−k = 0)"));
  const Outcome j = run({"deriv", "--expr", "x^(-0.5)", "--k", "0.5", "--format", "json"});
  const auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed.at("result").at("terms").empty());
  CHECK(parsed.at("annihilated").size() == 1);
}

TEST_CASE("compare-paths diff column") {
  const Outcome o = run({"deriv", "--expr", "exp(x)", "--k", "1.5", "--compare-paths", "--format", "csv"});
  CHECK(o.status == cli::kOk);
  std::istringstream lines(o.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "exp,rl,lifted,abs_diff");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(std::stod(line.substr(line.rfind(',') + 1)) <= 1e-12);
  }
  CHECK(rows == 17);
}

TEST_CASE("machine output is byte-identical across runs") {
  const std::vector<std::vector<std::string>> commands = {
      {"deriv", "--expr", "exp(x)*sin(x)", "--k", "0.7", "--format", "json"},
      {"lift", "--expr", "x^1.5 + x^2.5", "--format", "json"},
      {"oracle-compare", "--expr", "exp(x)", "--k", "0.5", "--xs", "0.5,1,1.5", "--order", "30"},
      {"verify", "--suite", "all", "--format", "csv"},
      {"kernel-check", "--expr", "x^(-0.5) + x^0.5", "--k", "1.5", "--format", "csv"},
  };
  for (const auto& c : commands) {
    const Outcome a = run(c), b = run(c);
    CHECK(a.status == cli::kOk);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("oracle-compare emits the EvalTable") {
  const Outcome o = run({"oracle-compare", "--expr", "x", "--k", "0.5", "--xs", "0.25,1,2.25"});
  CHECK(o.status == cli::kOk);
  std::istringstream rows(o.out);
  std::string line;
  std::getline(rows, line);
  CHECK(line == "x,termwise,oracle,abs_diff");
  for (double x : {0.25, 1.0, 2.25}) {
    REQUIRE(std::getline(rows, line));
    double cols[4];
    CHECK(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &cols[0], &cols[1], &cols[2], &cols[3]) == 4);
    CHECK(cols[0] == x);
    CHECK(std::abs(cols[1] - 2.0 * std::sqrt(x / M_PI)) <= 1e-14);
    CHECK(cols[3] <= 1e-6);
  }
  CHECK(run({"oracle-compare", "--expr", "x", "--k", "0.5", "--xs", "-1"}).status == cli::kUsage);
  // A truncated expansion far from the basepoint still compares, with a warning.
  const Outcome w = run({"oracle-compare", "--expr", "sin(x)", "--k", "0.5", "--xs", "3", "--order", "8"});
  CHECK(w.status == cli::kOk);
  CHECK(contains(w.err, "warning: truncation tail"));
}

TEST_CASE("kernel-check") {
  const Outcome o = run({"kernel-check", "--expr", "x^(-0.5) + x^0.5", "--k", "0.5", "--format", "csv"});
  CHECK(o.out == "exp,coef,alpha_plus_1_minus_k,kernel\n-0.5,1,0,true\n0.5,1,1,false\n");
}

TEST_CASE("lift then project through files") {
  const std::string lifted = temp_path("lifted.json");
  {
    const Outcome o = run({"lift", "--expr", "x^(-0.5) + 3*x^1.5"});
    REQUIRE(o.status == cli::kOk);
    std::ofstream(lifted) << o.out;
  }
  const Outcome back = run({"project", "--file", lifted, "--format", "json"});
  CHECK(back.status == cli::kOk);
  const GenSeries s = series_from_json(nlohmann::json::parse(back.out));
  CHECK(std::abs(s.coef_at(-0.5) - 1.0) <= 1e-15);
  CHECK(std::abs(s.coef_at(1.5) - 3.0) <= 1e-14);

  // Shifting the stored sequence twice by one half equals the direct first derivative.
  const Outcome half = run({"project", "--file", lifted, "--k", "1", "--format", "json"});
  const GenSeries d = series_from_json(nlohmann::json::parse(half.out));
  CHECK(std::abs(d.coef_at(-1.5) + 0.5) <= 1e-15);
  CHECK(std::abs(d.coef_at(0.5) - 4.5) <= 1e-14);
  std::remove(lifted.c_str());

  CHECK(run({"project", "--file", "/nonexistent.json"}).status == cli::kUsage);
}

TEST_CASE("series file input") {
  const std::string path = temp_path("series.json");
  std::ofstream(path) << R"({"basepoint": 0, "terms": [{"exp": 1, "coef": 1}]})";
  const Outcome o = run({"deriv", "--file", path, "--k", "0.5", "--format", "csv"});
  CHECK(o.out.rfind("exp,coef\n0.5,1.12837916709551", 0) == 0);
  std::remove(path.c_str());
}

TEST_CASE("verify suites") {
  const Outcome all = run({"verify", "--suite", "all", "--order", "16"});
  CHECK(all.status == cli::kOk);
  CHECK(contains(all.out, "all identities pass, max residual"));
  CHECK(run({"verify", "--suite", "D6p"}).status == cli::kOk);
  CHECK(run({"verify", "--suite", "bogus"}).status == cli::kUsage);
}

TEST_CASE("gamma perturbation makes verify fail and is undone afterwards") {
  const Outcome o = run({"--perturb-gamma-ratio", "1e-6", "verify", "--suite", "all"});
  CHECK(o.status == cli::kFailure);
  CHECK(contains(o.out, "FAIL"));
  CHECK(testing::ratio_perturbation() == 0.0);
  CHECK(run({"verify"}).status == cli::kOk);
}

TEST_CASE("integer tolerance from the environment") {
  // 0.5 + 0.5000000001 = 1 + 1e-10 is a pole only within the default tolerance.
  const std::vector<std::string> cmd = {"kernel-check", "--expr", "x^(-0.5)", "--k", "0.5000001", "--format", "csv"};
  CHECK(contains(run(cmd).out, "false"));
  ::setenv("FRACLIFT_TOL", "1e-6", 1);
  CHECK(contains(run(cmd).out, "true"));
  CHECK(integer_tolerance() == 1e-9);
  ::setenv("FRACLIFT_TOL", "nonsense", 1);
  CHECK(run(cmd).status == cli::kUsage);
  ::unsetenv("FRACLIFT_TOL");
  CHECK(contains(run({"--int-tol", "1e-6", "kernel-check", "--expr", "x^(-0.5)", "--k", "0.5000001"}).out,
                 "in kernel"));
}
