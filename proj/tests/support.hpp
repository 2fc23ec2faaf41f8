#pragma once

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "rift/dataset.hpp"
#include "rift/provider.hpp"
#include "rift/taxonomy.hpp"
#include "rift/util.hpp"

namespace rift::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "rift") {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            (tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline const std::vector<std::string>& source_names() {
  static const std::vector<std::string> names{"expert_a", "expert_b", "synth_a", "synth_b", "synth_c"};
  return names;
}

/// Writes `per_source` rubrics for each of five sources (two expert, three
/// synthetic) and returns the dataset config pointing at them.
inline DatasetConfig write_synthetic_pool(const std::filesystem::path& dir, int per_source) {
  auto cfg = default_dataset_config();
  int s = 0;
  for (const auto& name : source_names()) {
    std::vector<Json> rows;
    for (int i = 0; i < per_source; ++i) {
      std::string id = name + "-" + std::to_string(i);
      rows.push_back({{"id", id},
                      {"input_context", "Task " + std::to_string(i) + " for " + name +
                                            ": explain the trade-offs of approach " +
                                            std::to_string(i % 7) + "."},
                      {"rubric", "1. Mentions at least " + std::to_string(2 + i % 4) +
                                     " trade-offs.\n2. Response is well written.\n3. Cites source " +
                                     std::to_string(i % 3) + "."},
                      {"domain_tags", Json::array({i % 2 ? "science" : "writing"})}});
    }
    auto path = dir / (name + ".jsonl");
    write_jsonl(path, rows);
    SourceSpec spec;
    spec.name = name;
    spec.path = path;
    spec.origin = s < 2 ? Origin::expert : Origin::synthetic;
    spec.format = s % 2 ? RubricFormat::checklist : RubricFormat::principles;
    cfg.sources.push_back(spec);
    ++s;
  }
  return cfg;
}

inline ProviderConfig mock_provider(const std::string& id, double temperature = 1.0) {
  ProviderConfig c;
  c.provider_id = id;
  c.kind = "mock";
  c.model_name = id + "-model";
  c.temperature = temperature;
  c.max_concurrent = 2;
  c.retry.backoff_base_ms = 0;
  return c;
}

inline Rubric make_rubric(const std::string& id, Origin origin = Origin::expert) {
  Rubric r;
  r.id = id;
  r.source = origin == Origin::expert ? "expert_a" : "synth_a";
  r.origin = origin;
  r.input_context = "Prompt for " + id;
  r.rubric_text = "1. Correct answer for " + id + ".\n2. Clear explanation.";
  r.word_count = split_whitespace(r.rubric_text).size();
  return r;
}

}  // namespace rift::testing
