#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rift/dataset.hpp"
#include "rift/prompts.hpp"
#include "rift/provider.hpp"
#include "rift/taxonomy.hpp"

namespace rift {

struct CritiqueBatch {
  int round = 1;
  std::vector<CritiqueItem> items;
  int original_version = 1;
  std::optional<int> running_version;
};

/// Persisted refinement session. `taxonomy_versions` is a chain ordered by
/// version.
struct SessionState {
  int rounds_completed = 0;
  std::set<std::string> consumed_rubric_ids;
  std::vector<Taxonomy> taxonomy_versions;
  std::map<int, std::map<std::string, bool>> saturation_votes;  // round -> expert -> vote
  std::vector<std::string> experts;
  std::vector<RoundPlan> plans;
  std::vector<AnnotationRecord> annotations;

  const Taxonomy* version(int v) const;
  const Taxonomy& latest() const;
  bool operator==(const SessionState&) const = default;
};

void to_json(Json& j, const SessionState& s);
void from_json(const Json& j, SessionState& s);
SessionState load_session(const std::filesystem::path& path);
void save_session(const std::filesystem::path& path, const SessionState& s);

/// Errors: consumed ids differ from the union of plan ids, versions not a
/// chain, annotations for unknown rubrics/rounds.
void validate_session(const SessionState& s);

std::string build_refinement_prompt(const CritiqueBatch& batch, const SessionState& session);

struct RefinementDraft {
  Taxonomy taxonomy;  // version previous+1, parent previous, not finalized
  bool unchanged = false;
  TaxonomyDiff diff;
  std::vector<Finding> findings;
};

/// Parses a refinement reply. Modes without a category inherit the category
/// of the same label in `previous`. Validation findings are attached, not
/// thrown. Throws MalformedResponse if the reply has no usable document.
RefinementDraft parse_refined_taxonomy(std::string_view raw, const Taxonomy& previous);

/// Critique batches for one round, in annotation order. `batch_size` 0
/// means the whole round is one batch.
std::vector<std::vector<CritiqueItem>> round_critiques(const SessionState& session,
                                                       const std::map<std::string, Rubric>& rubrics,
                                                       int round, std::size_t batch_size = 0);

struct RefineOptions {
  std::size_t batch_size = 0;
  ResponseCache* cache = nullptr;
};

/// Runs the refinement prompt over a round's critiques and appends each
/// resulting draft to the session's version chain. The original taxonomy is
/// the latest finalized version.
std::vector<RefinementDraft> refine_round(SessionState& session,
                                          const std::map<std::string, Rubric>& rubrics, int round,
                                          Provider& provider, const RefineOptions& options = {});

/// Bootstrap from free-text critiques: renders the refinement prompt with an
/// empty original taxonomy and returns a version 1 draft with no parent.
/// Throws UsageError("no_critiques") for an empty list.
RefinementDraft bootstrap_taxonomy(const std::vector<CritiqueItem>& critiques, Provider& provider,
                                   ResponseCache* cache = nullptr);

/// Critique file: JSONL of objects with rubric_critique / taxonomy_critique
/// (and optionally input_context, rubric) or of bare strings.
std::vector<CritiqueItem> load_critiques(const std::filesystem::path& path);

struct SaturationReport {
  int round = 0;
  bool has_previous_version = false;
  bool diff_empty = false;
  TaxonomyDiff diff;
  int out_of_taxonomy_labels = 0;
  int votes_in_favour = 0;
  int experts = 0;
  bool unanimous = false;
  bool convergence_candidate = false;
};

/// Reads but never modifies the session. Throws UsageError when no round
/// has completed.
SaturationReport saturation_status(const SessionState& session);
void to_json(Json& j, const SaturationReport& r);

}  // namespace rift
