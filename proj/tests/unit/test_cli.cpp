#include "doctest.h"
#include "xxxlab/cli/jobs.hpp"

using namespace xxxlab;
using namespace xxxlab::cli;

namespace {

JobConfig job(const std::string& cmd, int n, int l) {
  JobConfig c;
  c.command = cmd;
  c.n = n;
  c.l = l;
  c.timings = false;
  return c;
}

}  // namespace

TEST_CASE("configuration") {
  CHECK(parse_z_list("0,1/2,-3") == std::vector<Rational>{0, make_rational(1, 2), -3});
  CHECK_THROWS_AS(parse_z_list("0,x"), UsageError);
  CHECK(parse_mode("numeric") == Mode::numeric);
  CHECK_THROWS_AS(parse_mode("fast"), UsageError);

  CHECK_THROWS_AS(validate(job("pairs", 3, 2)), UsageError);
  CHECK_THROWS_AS(validate(job("spectrum", 13, 6)), UsageError);
  CHECK_THROWS_AS(validate(job("sov-check", 7, 2)), UsageError);
  CHECK_THROWS_AS(validate(job("frobnicate", 4, 2)), UsageError);
  auto bad_z = job("pairs", 4, 2);
  bad_z.z = {0, 1};
  CHECK_THROWS_AS(validate(bad_z), UsageError);
  auto bad_method = job("pairs", 4, 2);
  bad_method.method = "guess";
  CHECK_THROWS_AS(validate(bad_method), UsageError);
  CHECK(validate(job("sov-check", 6, 3)).n == 6);
}

TEST_CASE("output path") {
  auto c = job("spectrum", 8, 4);
  CHECK_FALSE(output_path(c, nullptr).has_value());
  CHECK_FALSE(output_path(c, "").has_value());
  CHECK(*output_path(c, "/tmp/r") == "/tmp/r/spectrum-n8-l4.json");
  c.out = "x.json";
  CHECK(*output_path(c, "/tmp/r") == "x.json");
}

TEST_CASE("pairs report") {
  auto r = run_job(job("pairs", 4, 2));
  CHECK(r.exit_code == kExitOk);
  const auto& res = r.report["result"];
  CHECK(res["found"] == 2);
  CHECK(res["expected"] == 2);
  CHECK(res["pairs"][0]["f"] == nlohmann::json({"2", "3", "1"}));
  CHECK(res["pairs"][1]["f"] == nlohmann::json({"7/3", "3", "1"}));
  CHECK(res["pairs"][0]["certificate"]["status"] == "exact");
  CHECK(res["pairs"][1]["root_class"] == "admissible");
  CHECK(res["pairs"][0]["root_class"] == "non-admissible");
  CHECK(res["pairs"][1]["roots"][0].size() == 2);
  CHECK(r.report["version"].is_string());
  CHECK(r.report["config"]["z"] == nlohmann::json({"0", "0", "0", "0"}));
  CHECK(r.report["tolerances"]["match"] == 1e-8);
  CHECK_FALSE(r.report.contains("timings_ms"));

  auto t = job("pairs", 2, 1);
  t.timings = true;
  auto rt = run_job(t);
  CHECK(rt.report["timings_ms"].contains("total"));
}

TEST_CASE("reports are deterministic") {
  auto c = job("spectrum", 6, 3);
  c.seed = 7;
  CHECK(run_job(c).report.dump() == run_job(c).report.dump());
}

TEST_CASE("spectrum, match and sov-check") {
  auto s = run_job(job("spectrum", 8, 4));
  CHECK(s.exit_code == kExitOk);
  CHECK(s.report["result"]["tuples"].size() == 14);
  CHECK(s.report["result"]["certificate"]["simple"] == true);

  auto m = run_job(job("match", 4, 2));
  CHECK(m.exit_code == kExitOk);
  CHECK(m.report["result"]["perfect"] == true);
  int extracted = 0;
  for (const auto& e : m.report["result"]["matches"]) {
    const auto& ev = e["eigenvector"];
    CHECK(ev["overlap"].get<double>() > 1.0 - 1e-8);
    if (ev["source"] == "extracted") ++extracted;
  }
  CHECK(extracted == 1);

  auto v = run_job(job("sov-check", 4, 2));
  CHECK(v.exit_code == kExitOk);
  CHECK(v.report["failures"].empty());
  for (const auto& e : v.report["result"]["eigenchecks"]) CHECK(e["exact"] == true);
  CHECK(v.report["result"]["sh"]["consistent"] == true);
}

TEST_CASE("solver budget maps to exit code 1") {
  auto c = job("pairs", 6, 3);
  c.method = "newton_multistart";
  c.budget = 1;
  auto r = run_job(c);
  CHECK(r.exit_code == kExitSolver);
  CHECK(r.report["error"]["code"] == "SolverBudgetExceeded");
  CHECK(r.report["result"]["budget_exceeded"] == true);
}
