#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rift/taxonomy.hpp"

namespace rift {

/// Character budgets for example excerpts in the annotation prompt.
inline constexpr std::size_t kExampleInputChars = 150;
inline constexpr std::size_t kExampleRubricChars = 200;

/// Full-taxonomy failure-mode classification prompt. Pure: identical inputs
/// give byte-identical output.
std::string build_annotation_prompt(const Taxonomy& taxonomy, const Rubric& rubric);

/// Single-mode adversarial variant: the judge plays a responder trying to
/// game the rubric, assesses quality gates, then gives a verdict for
/// `target_mode` only. Throws DataError("unknown_label").
std::string build_adversarial_probe_prompt(const Taxonomy& taxonomy, const Rubric& rubric,
                                           std::string_view target_mode);

struct CritiqueItem {
  std::string input_context;
  std::string rubric_text;
  std::optional<std::string> rubric_critique;
  std::optional<std::string> taxonomy_critique;
};

/// Refinement prompt. `running` is null for the first batch of a session.
std::string render_refinement_prompt(const Taxonomy& original, const Taxonomy* running,
                                     const std::vector<CritiqueItem>& items);

/// The JSON document a refinement reply is expected to contain.
std::string render_refinement_output(const Taxonomy& taxonomy,
                                     const std::vector<std::string>& changes_summary);

/// Simple `{{name}}` substitution; unknown placeholders are left as-is.
std::string fill_template(const std::string& tmpl, const std::map<std::string, std::string>& vars);

/// Default pairwise preference prompt. Placeholders: input_context, rubric,
/// response_a, response_b.
extern const char* const kDefaultPreferencePrompt;
/// Default holistic scoring prompt (0-10). Placeholders: input_context,
/// rubric, response.
extern const char* const kDefaultScorePrompt;

/// Opening sentences the mock provider uses to recognise each prompt family.
inline constexpr std::string_view kAnnotationPreamble =
    "You are an expert at evaluating rubric quality. Analyze the following rubric";
inline constexpr std::string_view kProbePreamble =
    "You are an expert at evaluating rubric quality. Focus on exactly one failure mode";
inline constexpr std::string_view kRefinementPreamble =
    "You are an expert at analyzing rubric quality feedback and refining failure mode taxonomies.";
inline constexpr std::string_view kPreferencePreamble =
    "You are comparing two responses to the same prompt using a rubric.";
inline constexpr std::string_view kScorePreamble =
    "You are grading a single response against a rubric.";

}  // namespace rift
