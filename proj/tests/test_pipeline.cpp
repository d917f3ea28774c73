#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "stabring/error.hpp"
#include "stabring/pipeline.hpp"
#include "stabring/report.hpp"

using namespace stabring;

namespace {

PipelineConfig config(const char* group, int n_max, int p_max) {
  PipelineConfig c;
  c.group = group;
  c.n_max = n_max;
  c.p_max = p_max;
  c.random_pairs = 200;
  return c;
}

std::size_t lines(const std::string& s) {
  std::size_t n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("config validation") {
  CHECK_THROWS_AS(PipelineConfig::from_json({{"group", "Z2"}, {"n_max", 0}}), ConfigError);
  CHECK_THROWS_AS(PipelineConfig::from_json({{"group", "Z2"}, {"n_max", 2}, {"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(PipelineConfig::from_json({{"n_max", 2}}), ConfigError);
  CHECK_THROWS_AS(PipelineConfig::from_json({{"group", "Z2"}, {"n_max", "two"}}), ConfigError);
  CHECK_THROWS_AS(PipelineConfig::from_json({{"group", "Z2"}, {"state_cap", 0}}), ConfigError);
  const PipelineConfig c = PipelineConfig::from_json({{"group", "Z3"}, {"n_max", 3}, {"p_max", 2}, {"threads", 2}});
  CHECK(c.n_max == 3);
  CHECK(c.threads == 2);
  CHECK_FALSE(c.content_json().contains("threads"));
  const Report r = run_pipeline(config("Z2", 0, 0));
  CHECK(r.failed_stage == "config");
  CHECK(r.overall() == Verdict::fail);
}

TEST_CASE("trivial group passes everything") {
  const Report r = run_pipeline(config("trivial", 3, 2));
  REQUIRE_FALSE(r.failed_stage.has_value());
  CHECK(r.counts == std::vector<std::size_t>{1, 1, 1, 1});
  for (const auto& c : r.verdicts) {
    CAPTURE(c.name);
    CHECK(c.verdict == Verdict::pass);
  }
  CHECK(r.overall() == Verdict::pass);
}

TEST_CASE("Z2 report") {
  const Report r = run_pipeline(config("Z2", 4, 2));
  REQUIRE_FALSE(r.failed_stage.has_value());
  CHECK(r.counts == std::vector<std::size_t>{1, 2, 2, 2, 2});
  REQUIRE(r.profile.has_value());
  CHECK(r.profile->stable_within_window);
  for (const auto& c : r.verdicts) {
    CAPTURE(c.name);
    CHECK(c.verdict != Verdict::fail);
    CHECK_FALSE(c.anchor.empty());
    if (c.verdict == Verdict::inconclusive) CHECK_FALSE(c.witness.empty());
  }
  const nlohmann::json j = r.to_json();
  CHECK(j["schema_version"] == 1);
  CHECK(nlohmann::json::parse(report_json_text(r)) == j);
  CHECK_FALSE(report_json_text(r).find("seconds") != std::string::npos);
  const std::string csv = homology_csv(r);
  CHECK(csv.rfind("group,module,p,n,free_rank,torsion,certified_flag\n", 0) == 0);
  CHECK(lines(csv) == r.homology.size() + 1);
  CHECK(lines(counts_csv(r)) == 6);
  CHECK(text_summary(r).find("timings") != std::string::npos);
}

TEST_CASE("reports do not depend on the thread count") {
  PipelineConfig a = config("S3", 2, 2), b = a;
  a.threads = 1;
  b.threads = 3;
  CHECK(report_json_text(run_pipeline(a)) == report_json_text(run_pipeline(b)));
}

TEST_CASE("stage errors keep earlier results") {
  const Report bad = run_pipeline(config("nonsense", 2, 1));
  CHECK(bad.failed_stage == "load");
  CHECK_FALSE(bad.error->empty());
  PipelineConfig capped = config("S3", 3, 1);
  capped.state_cap = 2000;
  const Report r = run_pipeline(capped);
  CHECK(r.failed_stage == "orbits");
  CHECK(r.group["order"] == 6);
  CHECK(r.overall() == Verdict::fail);
  CHECK(r.to_json()["error"]["stage"] == "orbits");
}

TEST_CASE("cache directory and environment override") {
  const auto dir = std::filesystem::temp_directory_path() / "stabring_test_pipeline_cache";
  std::filesystem::remove_all(dir);
  PipelineConfig c = config("Z3", 2, 1);
  c.cache_dir = dir;
  const std::string first = report_json_text(run_pipeline(c));
  CHECK(std::filesystem::exists(dir));
  CHECK(report_json_text(run_pipeline(c)) == first);
  ::setenv("STABRING_CACHE", "/tmp/elsewhere", 1);
  CHECK(effective_cache_dir(c) == std::filesystem::path("/tmp/elsewhere"));
  ::unsetenv("STABRING_CACHE");
  CHECK(effective_cache_dir(c) == dir);
  std::filesystem::remove_all(dir);
}

TEST_CASE("emitted files") {
  const auto dir = std::filesystem::temp_directory_path() / "stabring_test_emit";
  std::filesystem::remove_all(dir);
  const Report r = run_pipeline(config("Z2", 2, 1));
  emit_report(r, dir);
  for (const char* f : {"report.json", "homology.csv", "counts.csv", "summary.txt"})
    CHECK(std::filesystem::exists(dir / f));
  std::filesystem::remove_all(dir);
}

}
