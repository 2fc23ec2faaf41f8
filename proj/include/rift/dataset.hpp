#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rift/taxonomy.hpp"

namespace rift {

struct SourceSpec {
  std::string name;
  std::filesystem::path path;
  Origin origin = Origin::expert;
  RubricFormat format = RubricFormat::checklist;
};

struct LineError {
  std::string source;
  std::size_t line = 0;
  std::string message;
};

struct ParseResult {
  std::vector<Rubric> rubrics;
  std::vector<LineError> errors;  // only populated in lenient mode
};

enum class ParseMode { fail_fast, lenient };

/// One Rubric per non-blank JSONL line (`id`, `input_context`, `rubric`,
/// optional `domain_tags`). Source, origin, and format are stamped from the
/// spec. Fail-fast mode throws DataError naming the line; lenient mode skips
/// bad lines and reports them.
ParseResult parse_rubric_dataset(const SourceSpec& spec, ParseMode mode = ParseMode::fail_fast);

enum class Split { development, test };

struct RoundPlan {
  int round = 1;  // 0 for the held-out test split
  Split split = Split::development;
  int per_source_count = 1;
  std::uint64_t seed = 0;
  std::map<std::string, std::vector<std::string>> selected;  // source -> ids

  std::vector<std::string> all_ids() const;
  bool operator==(const RoundPlan&) const = default;
};

/// Stratified sample without replacement: for each source, the unconsumed
/// ids are sorted, shuffled with a generator derived from (seed, round,
/// source name), and the first `per_source_count` are taken. Throws
/// DataError("insufficient_pool") naming the deficient source and shortfall.
RoundPlan plan_round(const std::vector<Rubric>& pool, const std::set<std::string>& consumed,
                     int round, int per_source_count, std::uint64_t seed);

/// Same procedure, tagged as the held-out split.
RoundPlan plan_test_split(const std::vector<Rubric>& pool, const std::set<std::string>& consumed,
                          int per_source_count, std::uint64_t seed);

struct RoundConfig {
  int round = 1;
  int per_source_count = 5;
  std::uint64_t seed = 0;
};

struct DatasetConfig {
  std::vector<SourceSpec> sources;
  std::vector<RoundConfig> rounds;
  RoundConfig test{0, 10, 0};
};

/// Four development rounds of 5/5/5/2 per source plus a 10-per-source test
/// split. Sources are left empty for the caller to fill in.
DatasetConfig default_dataset_config();

/// Paths inside the config are resolved relative to the config file.
DatasetConfig load_dataset_config(const std::filesystem::path& path);

/// Tracks consumed ids across the plan calls of one session.
class SamplingSession {
 public:
  explicit SamplingSession(std::vector<Rubric> pool, std::set<std::string> consumed = {});

  RoundPlan next_round(int round, int per_source_count, std::uint64_t seed);
  RoundPlan test_split(int per_source_count, std::uint64_t seed);

  const std::set<std::string>& consumed() const { return consumed_; }
  const std::vector<Rubric>& pool() const { return pool_; }

 private:
  std::vector<Rubric> pool_;
  std::set<std::string> consumed_;
};

/// Every configured round followed by the test split.
std::vector<RoundPlan> plan_all(const DatasetConfig& config, const std::vector<Rubric>& pool);

/// Parses every configured source; ids must be unique across sources.
std::vector<Rubric> load_pool(const DatasetConfig& config, ParseMode mode = ParseMode::fail_fast,
                              std::vector<LineError>* errors = nullptr);

std::vector<Rubric> load_rubrics_jsonl(const std::filesystem::path& path);

void to_json(Json& j, const RoundPlan& p);
void from_json(const Json& j, RoundPlan& p);
void to_json(Json& j, const SourceSpec& s);

}  // namespace rift
