#include "rift/judge.hpp"

#include <algorithm>
#include <mutex>

#include "rift/error.hpp"
#include "rift/prompts.hpp"

namespace rift {

ParsedVerdict parse_judge_response(std::string_view raw, const Taxonomy& taxonomy, bool strict) {
  auto doc = extract_json_object(raw);
  if (!doc) throw MalformedResponse("reply contains no JSON object");
  if (!doc->contains("suggested_labels") || !doc->at("suggested_labels").is_array()) {
    throw MalformedResponse("reply has no 'suggested_labels' array");
  }
  ParsedVerdict out;
  std::set<std::string> seen;
  for (const auto& item : doc->at("suggested_labels")) {
    if (!item.is_object() || !item.contains("label") || !item.at("label").is_string()) {
      throw MalformedResponse("suggested label entry without a string 'label'");
    }
    SuggestedLabel s;
    s.label = item.at("label").get<std::string>();
    s.justification = item.value("justification", std::string{});
    s.quote = item.value("quote", std::string{});
    if (!taxonomy.has_label(s.label)) {
      if (strict) {
        throw DataError("unknown_label", "unknown label '" + s.label + "'; allowed labels: " +
                                             join(taxonomy.labels(), ", "));
      }
      out.warnings.push_back("dropped unknown label '" + s.label + "'");
      continue;
    }
    if (!seen.insert(s.label).second) continue;
    out.suggested_labels.push_back(std::move(s));
  }
  return out;
}

std::set<std::string> JudgeVerdict::label_set() const {
  std::set<std::string> out;
  for (const auto& s : suggested_labels) out.insert(s.label);
  return out;
}

void to_json(Json& j, const SuggestedLabel& s) {
  j = Json{{"label", s.label}, {"justification", s.justification}, {"quote", s.quote}};
}

void from_json(const Json& j, SuggestedLabel& s) {
  s.label = j.at("label").get<std::string>();
  s.justification = j.value("justification", std::string{});
  s.quote = j.value("quote", std::string{});
}

void to_json(Json& j, const JudgeVerdict& v) {
  j = Json{{"rubric_id", v.rubric_id},
           {"provider_id", v.provider_id},
           {"run_index", v.run_index},
           {"suggested_labels", v.suggested_labels},
           {"raw_response", v.raw_response},
           {"cache_hit", v.cache_hit},
           {"attempts", v.attempts},
           {"timestamp", v.timestamp}};
  if (v.probe) j["probe"] = *v.probe;
  if (!v.warnings.empty()) j["warnings"] = v.warnings;
}

void from_json(const Json& j, JudgeVerdict& v) {
  v.rubric_id = j.at("rubric_id").get<std::string>();
  v.provider_id = j.at("provider_id").get<std::string>();
  v.run_index = j.at("run_index").get<int>();
  v.suggested_labels = j.value("suggested_labels", std::vector<SuggestedLabel>{});
  v.raw_response = j.value("raw_response", std::string{});
  v.cache_hit = j.value("cache_hit", false);
  v.attempts = j.value("attempts", 1);
  v.timestamp = j.value("timestamp", std::string{});
  v.probe.reset();
  if (j.contains("probe")) v.probe = j.at("probe").get<std::string>();
  v.warnings = j.value("warnings", std::vector<std::string>{});
}

std::vector<JudgeVerdict> load_verdicts(const std::filesystem::path& path) {
  std::vector<JudgeVerdict> out;
  for_each_jsonl(path, [&](std::size_t line, const Json& j) {
    try {
      out.push_back(j.get<JudgeVerdict>());
    } catch (const Json::exception& e) {
      throw DataError("malformed_verdict",
                      path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return out;
}

std::vector<JudgeVerdict> run_judge_panel(const std::vector<Rubric>& rubrics,
                                          const Taxonomy& taxonomy, Provider& provider,
                                          int n_runs, const JudgeOptions& options) {
  if (n_runs < 1) throw UsageError("invalid_runs", "n_runs must be >= 1");

  // Probe replies are parsed against the target mode alone.
  Taxonomy parse_taxonomy = taxonomy;
  if (options.probe_mode) {
    const FailureMode* target = taxonomy.find(*options.probe_mode);
    if (!target) {
      throw DataError("unknown_label", "probe target '" + *options.probe_mode +
                                           "' is not in the taxonomy; allowed: " +
                                           join(taxonomy.labels(), ", "));
    }
    parse_taxonomy.failure_modes = {*target};
  }

  std::vector<std::string> prompts;
  prompts.reserve(rubrics.size());
  for (const auto& r : rubrics) {
    prompts.push_back(options.probe_mode
                          ? build_adversarial_probe_prompt(taxonomy, r, *options.probe_mode)
                          : build_annotation_prompt(taxonomy, r));
  }

  const std::size_t total = rubrics.size() * static_cast<std::size_t>(n_runs);
  std::vector<std::optional<JudgeVerdict>> slots(total);
  std::vector<std::string> failures(total);
  std::vector<bool> provider_failure(total, false);

  const auto& cfg = provider.config();
  parallel_for(total, static_cast<std::size_t>(cfg.max_concurrent), [&](std::size_t i) {
    std::size_t r = i / static_cast<std::size_t>(n_runs);
    int run = static_cast<int>(i % static_cast<std::size_t>(n_runs));
    try {
      auto outcome = cached_completion(provider, options.cache, prompts[r], run,
                                       [&](const std::string& raw) {
                                         parse_judge_response(raw, parse_taxonomy, options.strict);
                                       });
      auto parsed = parse_judge_response(outcome.raw, parse_taxonomy, options.strict);
      JudgeVerdict v;
      v.rubric_id = rubrics[r].id;
      v.provider_id = cfg.provider_id;
      v.run_index = run;
      v.suggested_labels = std::move(parsed.suggested_labels);
      v.warnings = std::move(parsed.warnings);
      v.raw_response = std::move(outcome.raw);
      v.cache_hit = outcome.cache_hit;
      v.attempts = outcome.attempts;
      v.timestamp = options.clock();
      v.probe = options.probe_mode;
      slots[i] = std::move(v);
    } catch (const ProviderError& e) {
      failures[i] = e.what();
      provider_failure[i] = true;
    } catch (const Error& e) {
      failures[i] = e.what();
    }
  });

  std::vector<JudgeVerdict> verdicts;
  std::vector<std::string> missing;
  bool any_provider_failure = false;
  for (std::size_t i = 0; i < total; ++i) {
    if (slots[i]) {
      verdicts.push_back(std::move(*slots[i]));
    } else {
      std::size_t r = i / static_cast<std::size_t>(n_runs);
      missing.push_back("(" + rubrics[r].id + ", run " + std::to_string(i % n_runs) + "): " +
                        failures[i]);
      any_provider_failure = any_provider_failure || provider_failure[i];
    }
  }

  if (!options.store.empty() && !verdicts.empty()) {
    std::vector<Json> rows;
    rows.reserve(verdicts.size());
    for (const auto& v : verdicts) rows.emplace_back(v);
    append_jsonl(options.store, rows);
  }
  if (!missing.empty()) {
    std::string msg = std::to_string(missing.size()) + " judge call(s) failed; missing " +
                      join(missing, "; ");
    if (any_provider_failure) throw ProviderError("provider_exhausted", msg);
    throw DataError("judge_failed", msg);
  }
  return verdicts;
}

MajorityVoteResult majority_vote_with_evidence(const std::vector<JudgeVerdict>& verdicts,
                                               int n_runs) {
  if (n_runs < 1) throw UsageError("invalid_runs", "n_runs must be >= 1");
  if (verdicts.size() != static_cast<std::size_t>(n_runs)) {
    throw DataError("count_mismatch", "majority vote expects " + std::to_string(n_runs) +
                                          " runs, got " + std::to_string(verdicts.size()));
  }
  std::set<int> runs;
  for (const auto& v : verdicts) {
    if (v.rubric_id != verdicts.front().rubric_id ||
        v.provider_id != verdicts.front().provider_id) {
      throw DataError("count_mismatch", "majority vote mixes rubrics or providers");
    }
    if (!runs.insert(v.run_index).second) {
      throw DataError("count_mismatch",
                      "duplicate run index " + std::to_string(v.run_index) + " for " + v.rubric_id);
    }
  }

  std::vector<const JudgeVerdict*> ordered;
  for (const auto& v : verdicts) ordered.push_back(&v);
  std::sort(ordered.begin(), ordered.end(),
            [](auto* a, auto* b) { return a->run_index < b->run_index; });

  std::map<std::string, int> support;
  for (const auto* v : ordered) {
    for (const auto& label : v->label_set()) ++support[label];
  }
  MajorityVoteResult out;
  for (const auto& [label, count] : support) {
    if (count >= majority_threshold(n_runs)) out.labels.insert(label);
  }
  for (const auto* v : ordered) {
    for (const auto& s : v->suggested_labels) {
      if (out.labels.contains(s.label)) out.evidence[s.label].push_back(s);
    }
  }
  return out;
}

std::set<std::string> majority_vote(const std::vector<JudgeVerdict>& verdicts, int n_runs) {
  return majority_vote_with_evidence(verdicts, n_runs).labels;
}

std::map<std::string, std::set<std::string>> majority_vote_by_rubric(
    const std::vector<JudgeVerdict>& verdicts, const std::string& provider_id, int n_runs) {
  std::map<std::string, std::vector<JudgeVerdict>> grouped;
  for (const auto& v : verdicts) {
    if (v.provider_id == provider_id) grouped[v.rubric_id].push_back(v);
  }
  std::map<std::string, std::set<std::string>> out;
  for (const auto& [rubric_id, runs] : grouped) out[rubric_id] = majority_vote(runs, n_runs);
  return out;
}

std::map<std::string, std::set<std::string>> single_run_labels(
    const std::vector<JudgeVerdict>& verdicts, const std::string& provider_id, int run_index) {
  std::map<std::string, std::set<std::string>> out;
  for (const auto& v : verdicts) {
    if (v.provider_id == provider_id && v.run_index == run_index) out[v.rubric_id] = v.label_set();
  }
  return out;
}

}  // namespace rift
