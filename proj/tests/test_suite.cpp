#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>

#include "takiff/errors.hpp"
#include "takiff/suite.hpp"

using namespace takiff;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = "/tmp/" + name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("Registry lists the fifteen checks in canonical order") {
  const auto& names = registered_checks();
  REQUIRE(names.size() == 15);
  CHECK(names.front() == "bracket_jacobi");
  CHECK(names[4] == "claim1");
  CHECK(names.back() == "parser_roundtrip");
  CHECK(default_manifest().checks.size() == 15);
}

TEST_CASE("Unknown checks fail their entry; empty manifests pass") {
  SuiteManifest m;
  m.checks = {{"no_such_check", {}}};
  const SuiteReport r = run_suite(m);
  REQUIRE(r.results.size() == 1);
  CHECK_FALSE(r.results[0].passed);
  CHECK(r.results[0].detail == "unknown check name");
  CHECK_FALSE(r.all_passed());

  const SuiteReport empty = run_suite(SuiteManifest{});
  CHECK(empty.results.empty());
  CHECK(empty.all_passed());
  CHECK(report_text(empty) == "summary: 0/0 checks passed\n");
}

TEST_CASE("Parameters override the check defaults") {
  SuiteManifest m;
  m.checks = {{"claim1", {{"max_index", Rational(0)}}}};
  const SuiteReport r = run_suite(m);
  REQUIRE(r.results.size() == 1);
  CHECK(r.results[0].passed);
  CHECK(r.results[0].detail.find("2 index tuples") != std::string::npos);

  SuiteManifest bad;
  bad.checks = {{"claim1", {{"max_index", rat(1, 2)}}}};
  const SuiteReport rb = run_suite(bad);
  CHECK_FALSE(rb.results[0].passed);
  CHECK(rb.results[0].detail.find("must be a small integer") != std::string::npos);
}

TEST_CASE("Manifest files: valid, malformed and ill-typed") {
  const std::string good = write_temp(
      "takiff_manifest_good.json",
      R"([{"name": "centrality"}, {"name": "claim1", "params": {"max_index": 1, "theta": "5/2", "chi": 1}}])");
  const SuiteManifest m = load_manifest(good);
  REQUIRE(m.checks.size() == 2);
  CHECK(m.checks[0].name == "centrality");
  CHECK(m.checks[0].params.empty());
  CHECK(m.checks[1].params.at("max_index") == Rational(1));
  CHECK(m.checks[1].params.at("theta") == rat(5, 2));
  CHECK(m.checks[1].params.at("chi") == Rational(1));
  CHECK(run_suite(m).all_passed());

  CHECK_THROWS_AS(load_manifest("/tmp/takiff_no_such_file.json"), InvalidParams);
  CHECK_THROWS_AS(load_manifest(write_temp("takiff_manifest_syntax.json", "not json")),
                  InvalidParams);
  CHECK_THROWS_AS(load_manifest(write_temp("takiff_manifest_obj.json", R"({"name": "x"})")),
                  InvalidParams);
  CHECK_THROWS_AS(load_manifest(write_temp("takiff_manifest_noname.json", R"([{"params": {}}])")),
                  InvalidParams);
  CHECK_THROWS_AS(
      load_manifest(write_temp("takiff_manifest_float.json", R"([{"name": "claim1", "params": {"theta": 1.5}}])")),
      InvalidParams);
  CHECK_THROWS_AS(
      load_manifest(write_temp("takiff_manifest_badrat.json", R"([{"name": "claim1", "params": {"theta": "x/y"}}])")),
      InvalidParams);
}

TEST_CASE("Reports render deterministically and without timing") {
  SuiteManifest m;
  m.checks = {{"centrality", {}}, {"verma_scalars", {}}};
  const std::string r1 = report_text(run_suite(m));
  const std::string r2 = report_text(run_suite(m));
  CHECK(r1 == r2);
  CHECK(r1.find("[PASS] centrality") != std::string::npos);
  CHECK(r1.find("summary: 2/2 checks passed") != std::string::npos);
  const bool no_timing = r1.find("seconds") == std::string::npos;
  CHECK(no_timing);
}

TEST_CASE("Seed comes from the environment when set") {
  const std::uint64_t fixed = suite_seed();
  CHECK(fixed == suite_seed());
  setenv("TAKIFF_SEED", "424242", 1);
  CHECK(suite_seed() == 424242);
  setenv("TAKIFF_SEED", "not-a-number", 1);
  CHECK_THROWS_AS(suite_seed(), InvalidParams);
  unsetenv("TAKIFF_SEED");
  CHECK(suite_seed() == fixed);
}
