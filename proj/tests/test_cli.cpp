#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "scenarios.hpp"
#include "support.hpp"

using namespace rift;
using namespace rift::testing;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run rift_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(rift_cli({"--help"}).code, 0);
  EXPECT_EQ(rift_cli({"no-such-verb"}).code, 1);
  EXPECT_EQ(rift_cli({"report", "--kind", "bogus"}).code, 1);

  TempDir dir("cli");
  auto r = rift_cli({"taxonomy", "validate", (dir / "missing.json").string()});
  EXPECT_EQ(r.code, 2) << r.err;

  std::ofstream(dir / "bad.json") << R"({"version": 1, "failure_modes": [{"label": "Bad Label"}]})";
  EXPECT_EQ(rift_cli({"taxonomy", "validate", (dir / "bad.json").string()}).code, 2);

  auto def = rift_cli({"taxonomy", "default"});
  ASSERT_EQ(def.code, 0);
  std::ofstream(dir / "default.json") << def.out;
  EXPECT_EQ(rift_cli({"taxonomy", "validate", (dir / "default.json").string()}).code, 0);
}

TEST(Cli, ProviderExhaustionExitsThree) {
  TempDir dir("cli3");
  auto cfg = mock_provider("down", 0.0);
  cfg.fixtures.push_back({"", std::nullopt, {"!transport"}});
  write_json_file(dir / "providers.json", Json{{"providers", Json::array({Json(cfg)})}});
  write_jsonl(dir / "pool.jsonl", {Json(make_rubric("r1"))});
  auto r = rift_cli({"--providers", (dir / "providers.json").string(), "judge", "--dataset",
                     (dir / "pool.jsonl").string(), "--provider", "down", "--runs", "1", "--out",
                     (dir / "v.jsonl").string()});
  EXPECT_EQ(r.code, 3) << r.err;
  EXPECT_NE(r.err.find("down"), std::string::npos);
}

TEST(Cli, PipelineIsByteIdenticalAcrossRuns) {
  TempDir a("e2e_a"), b("e2e_b");
  auto first = run_pipeline(a.path());
  auto second = run_pipeline(b.path());
  ASSERT_EQ(first.size(), second.size());
  for (const auto& [path, bytes] : first) {
    auto it = second.find(path);
    ASSERT_NE(it, second.end()) << path;
    EXPECT_TRUE(bytes == it->second) << path << " differs";
  }
  EXPECT_TRUE(first.contains("reports/evaluator_alignment.csv"));
  EXPECT_TRUE(first.contains("signals/signal_scores.jsonl"));
  EXPECT_TRUE(first.contains("verdicts.jsonl"));
}
