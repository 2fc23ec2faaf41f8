#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rift/provider.hpp"
#include "rift/taxonomy.hpp"

namespace rift {

struct SuggestedLabel {
  std::string label;
  std::string justification;
  std::string quote;

  bool operator==(const SuggestedLabel&) const = default;
};

struct ParsedVerdict {
  std::vector<SuggestedLabel> suggested_labels;
  std::vector<std::string> warnings;
};

/// Parses `{"suggested_labels": [...]}` (prose or code fences around the
/// object are tolerated). Repeated labels keep their first occurrence.
/// Strict mode throws DataError("unknown_label") listing the allowed labels;
/// lenient mode drops unknown labels with a warning. Unparseable replies
/// throw MalformedResponse, which the retry policy acts on.
ParsedVerdict parse_judge_response(std::string_view raw, const Taxonomy& taxonomy, bool strict);

struct JudgeVerdict {
  std::string rubric_id;
  std::string provider_id;
  int run_index = 0;
  std::vector<SuggestedLabel> suggested_labels;
  std::string raw_response;
  bool cache_hit = false;
  int attempts = 1;
  std::string timestamp;
  std::optional<std::string> probe;
  std::vector<std::string> warnings;

  std::set<std::string> label_set() const;
  bool operator==(const JudgeVerdict&) const = default;
};

void to_json(Json& j, const SuggestedLabel& s);
void from_json(const Json& j, SuggestedLabel& s);
void to_json(Json& j, const JudgeVerdict& v);
void from_json(const Json& j, JudgeVerdict& v);
std::vector<JudgeVerdict> load_verdicts(const std::filesystem::path& path);

inline constexpr int kDefaultRuns = 5;

struct JudgeOptions {
  bool strict = false;
  /// Run the single-mode adversarial prompt for this label instead.
  std::optional<std::string> probe_mode;
  ResponseCache* cache = nullptr;
  /// Verdict store (JSONL, append-only). Empty path disables persistence.
  std::filesystem::path store;
  Clock clock = default_clock();
};

/// n_runs verdicts per rubric, ordered by (rubric, run). Cached calls are
/// served without touching the provider. All successful verdicts are
/// appended to the store before returning or throwing; on failure the
/// error lists the missing (rubric, run) pairs.
std::vector<JudgeVerdict> run_judge_panel(const std::vector<Rubric>& rubrics,
                                          const Taxonomy& taxonomy, Provider& provider,
                                          int n_runs, const JudgeOptions& options = {});

/// ceil(n / 2).
constexpr int majority_threshold(int n_runs) { return (n_runs + 1) / 2; }

/// Labels predicted by at least ceil(n_runs / 2) of the runs. `verdicts`
/// must be exactly the n_runs verdicts of one (rubric, provider) pair with
/// distinct run indices; otherwise DataError("count_mismatch").
std::set<std::string> majority_vote(const std::vector<JudgeVerdict>& verdicts, int n_runs);

struct MajorityVoteResult {
  std::set<std::string> labels;
  /// Every run's evidence for each retained label, in run order.
  std::map<std::string, std::vector<SuggestedLabel>> evidence;
};
MajorityVoteResult majority_vote_with_evidence(const std::vector<JudgeVerdict>& verdicts,
                                               int n_runs);

/// rubric_id -> MV labels for every rubric of one provider in `verdicts`.
std::map<std::string, std::set<std::string>> majority_vote_by_rubric(
    const std::vector<JudgeVerdict>& verdicts, const std::string& provider_id, int n_runs);

/// rubric_id -> labels of a single run (the single-run evaluator).
std::map<std::string, std::set<std::string>> single_run_labels(
    const std::vector<JudgeVerdict>& verdicts, const std::string& provider_id, int run_index = 0);

}  // namespace rift
