#include "rift/dataset.hpp"

#include <algorithm>
#include <fstream>

#include "rift/error.hpp"

namespace rift {

ParseResult parse_rubric_dataset(const SourceSpec& spec, ParseMode mode) {
  if (!std::filesystem::exists(spec.path)) {
    throw DataError("file_not_found",
                    "source '" + spec.name + "': cannot read " + spec.path.string());
  }
  ParseResult result;
  std::set<std::string> ids;
  std::ifstream in(spec.path, std::ios::binary);
  std::string line;
  std::size_t number = 0;
  auto fail = [&](std::size_t at, const std::string& msg) {
    std::string where = spec.path.string() + ":" + std::to_string(at) + ": ";
    if (mode == ParseMode::fail_fast) throw DataError("parse_error", where + msg);
    result.errors.push_back({spec.name, at, msg});
  };
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    auto j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      fail(number, "invalid JSON object");
      continue;
    }
    Rubric r;
    try {
      r.id = j.at("id").get<std::string>();
      r.input_context = j.at("input_context").get<std::string>();
      if (!j.contains("rubric")) throw DataError("missing_field", "missing field 'rubric'");
      r.rubric_text = j.at("rubric").get<std::string>();
      r.domain_tags = j.value("domain_tags", std::vector<std::string>{});
    } catch (const DataError& e) {
      fail(number, e.what());
      continue;
    } catch (const Json::exception& e) {
      fail(number, std::string("schema violation: ") + e.what());
      continue;
    }
    if (trim(r.id).empty()) {
      fail(number, "empty id");
      continue;
    }
    if (trim(r.rubric_text).empty() || trim(r.input_context).empty()) {
      fail(number, "rubric and input_context must be non-empty");
      continue;
    }
    if (!ids.insert(r.id).second) {
      fail(number, "duplicate id '" + r.id + "'");
      continue;
    }
    r.source = spec.name;
    r.origin = spec.origin;
    r.format = spec.format;
    r.line_number = number;
    r.word_count = split_whitespace(r.rubric_text).size();
    result.rubrics.push_back(std::move(r));
  }
  return result;
}

std::vector<std::string> RoundPlan::all_ids() const {
  std::vector<std::string> out;
  for (const auto& [source, ids] : selected) out.insert(out.end(), ids.begin(), ids.end());
  return out;
}

namespace {

RoundPlan plan_split(const std::vector<Rubric>& pool, const std::set<std::string>& consumed,
                     int round, Split split, int per_source_count, std::uint64_t seed) {
  if (per_source_count < 1) {
    throw UsageError("invalid_count", "per_source_count must be >= 1");
  }
  std::map<std::string, std::vector<std::string>> available;
  for (const auto& r : pool) {
    auto& ids = available[r.source];
    if (!consumed.contains(r.id)) ids.push_back(r.id);
  }

  RoundPlan plan;
  plan.round = round;
  plan.split = split;
  plan.per_source_count = per_source_count;
  plan.seed = seed;

  std::vector<std::string> deficits;
  for (auto& [source, ids] : available) {
    auto want = static_cast<std::size_t>(per_source_count);
    if (ids.size() < want) {
      deficits.push_back("source '" + source + "' has " + std::to_string(ids.size()) +
                         " unconsumed rubrics, short by " + std::to_string(want - ids.size()));
      continue;
    }
    std::sort(ids.begin(), ids.end());
    std::uint64_t stream = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(round) + 1) ^
                                      fnv1a64(source));
    Rng rng(stream);
    deterministic_shuffle(ids, rng);
    ids.resize(want);
    plan.selected[source] = std::move(ids);
  }
  if (!deficits.empty()) throw DataError("insufficient_pool", join(deficits, "; "));
  return plan;
}

}  // namespace

RoundPlan plan_round(const std::vector<Rubric>& pool, const std::set<std::string>& consumed,
                     int round, int per_source_count, std::uint64_t seed) {
  if (round < 1) throw UsageError("invalid_round", "round must be >= 1");
  return plan_split(pool, consumed, round, Split::development, per_source_count, seed);
}

RoundPlan plan_test_split(const std::vector<Rubric>& pool, const std::set<std::string>& consumed,
                          int per_source_count, std::uint64_t seed) {
  return plan_split(pool, consumed, 0, Split::test, per_source_count, seed);
}

DatasetConfig default_dataset_config() {
  DatasetConfig c;
  c.rounds = {{1, 5, 101}, {2, 5, 202}, {3, 5, 303}, {4, 2, 404}};
  c.test = {0, 10, 505};
  return c;
}

DatasetConfig load_dataset_config(const std::filesystem::path& path) {
  auto j = read_json_file(path);
  auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  DatasetConfig c = default_dataset_config();
  try {
    c.sources.clear();
    std::set<std::string> names;
    for (const auto& s : j.at("sources")) {
      SourceSpec spec;
      spec.name = s.at("name").get<std::string>();
      if (!names.insert(spec.name).second) {
        throw DataError("duplicate_source", "source name '" + spec.name + "' is not unique");
      }
      spec.path = s.at("path").get<std::string>();
      if (spec.path.is_relative()) spec.path = base / spec.path;
      spec.origin = parse_origin(s.at("origin").get<std::string>());
      spec.format = parse_format(s.at("format").get<std::string>());
      c.sources.push_back(std::move(spec));
    }
    if (j.contains("rounds")) {
      c.rounds.clear();
      for (const auto& r : j.at("rounds")) {
        c.rounds.push_back({r.at("round").get<int>(), r.at("per_source_count").get<int>(),
                            r.value("seed", std::uint64_t{0})});
      }
    }
    if (j.contains("test")) {
      c.test = {0, j.at("test").at("per_source_count").get<int>(),
                j.at("test").value("seed", std::uint64_t{0})};
    }
  } catch (const Json::exception& e) {
    throw DataError("malformed_config", path.string() + ": " + e.what());
  }
  return c;
}

SamplingSession::SamplingSession(std::vector<Rubric> pool, std::set<std::string> consumed)
    : pool_(std::move(pool)), consumed_(std::move(consumed)) {}

RoundPlan SamplingSession::next_round(int round, int per_source_count, std::uint64_t seed) {
  auto plan = plan_round(pool_, consumed_, round, per_source_count, seed);
  for (const auto& id : plan.all_ids()) consumed_.insert(id);
  return plan;
}

RoundPlan SamplingSession::test_split(int per_source_count, std::uint64_t seed) {
  auto plan = plan_test_split(pool_, consumed_, per_source_count, seed);
  for (const auto& id : plan.all_ids()) consumed_.insert(id);
  return plan;
}

std::vector<RoundPlan> plan_all(const DatasetConfig& config, const std::vector<Rubric>& pool) {
  SamplingSession session(pool);
  std::vector<RoundPlan> plans;
  for (const auto& r : config.rounds) {
    plans.push_back(session.next_round(r.round, r.per_source_count, r.seed));
  }
  plans.push_back(session.test_split(config.test.per_source_count, config.test.seed));
  return plans;
}

std::vector<Rubric> load_pool(const DatasetConfig& config, ParseMode mode,
                              std::vector<LineError>* errors) {
  std::vector<Rubric> pool;
  std::set<std::string> ids;
  for (const auto& spec : config.sources) {
    auto parsed = parse_rubric_dataset(spec, mode);
    if (errors) {
      for (auto e : parsed.errors) {
        e.source = spec.name;
        errors->push_back(std::move(e));
      }
    }
    for (auto& r : parsed.rubrics) {
      if (!ids.insert(r.id).second) {
        throw DataError("duplicate_id", "rubric id '" + r.id + "' appears in more than one source");
      }
      pool.push_back(std::move(r));
    }
  }
  return pool;
}

std::vector<Rubric> load_rubrics_jsonl(const std::filesystem::path& path) {
  std::vector<Rubric> out;
  std::set<std::string> ids;
  for_each_jsonl(path, [&](std::size_t line, const Json& j) {
    Rubric r;
    try {
      r = j.get<Rubric>();
    } catch (const Json::exception& e) {
      throw DataError("parse_error", path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
    if (!ids.insert(r.id).second) {
      throw DataError("duplicate_id", path.string() + ":" + std::to_string(line) +
                                          ": duplicate id '" + r.id + "'");
    }
    out.push_back(std::move(r));
  });
  return out;
}

void to_json(Json& j, const RoundPlan& p) {
  j = Json{{"round", p.round},
           {"split", p.split == Split::test ? "test" : "development"},
           {"per_source_count", p.per_source_count},
           {"seed", p.seed},
           {"selected", p.selected}};
}

void from_json(const Json& j, RoundPlan& p) {
  p.round = j.at("round").get<int>();
  p.split = j.value("split", std::string("development")) == "test" ? Split::test
                                                                   : Split::development;
  p.per_source_count = j.at("per_source_count").get<int>();
  p.seed = j.value("seed", std::uint64_t{0});
  p.selected = j.at("selected").get<std::map<std::string, std::vector<std::string>>>();
}

void to_json(Json& j, const SourceSpec& s) {
  j = Json{{"name", s.name},
           {"path", s.path.string()},
           {"origin", to_string(s.origin)},
           {"format", to_string(s.format)}};
}

}  // namespace rift
