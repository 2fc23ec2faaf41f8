#pragma once

// Prompt fidelity checks shared by the unit tests and the acceptance binary.

#include <string>
#include <vector>

#include "rift/prompts.hpp"
#include "rift/refinement.hpp"
#include "support.hpp"

namespace rift::testing {

inline bool contains(const std::string& haystack, std::string_view needle) {
  return haystack.find(needle) != std::string::npos;
}

/// 400 code points, some of them multi-byte.
inline std::string long_text(char32_t tag) {
  std::string out;
  for (int i = 0; i < 400; ++i) {
    if (i % 10 == 9) {
      out += "\xc3\xa9";  // e-acute
    } else {
      out += static_cast<char>('a' + (i + static_cast<int>(tag)) % 26);
    }
  }
  return out;
}

/// Taxonomy whose first mode carries one example pair with 400-character
/// fields.
inline Taxonomy truncation_taxonomy() {
  auto t = load_default_taxonomy();
  t.failure_modes[0].pass_examples = {{long_text(1), long_text(2)}};
  return t;
}

inline std::vector<std::string> prompt_fidelity_failures() {
  std::vector<std::string> failures;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };
  auto rubric = make_rubric("fid");

  auto annotation = build_annotation_prompt(load_default_taxonomy(), rubric);
  expect(contains(annotation, "## Rubric to Evaluate"), "annotation prompt lacks rubric heading");
  Taxonomy empty;
  empty.failure_modes.clear();
  expect(contains(build_annotation_prompt(empty, rubric), "No failure modes defined yet"),
         "empty taxonomy prompt lacks the no-modes notice");

  auto t = truncation_taxonomy();
  auto truncated = build_annotation_prompt(t, rubric);
  auto input = long_text(1), text = long_text(2);
  expect(contains(truncated, "- Input: " + utf8_prefix(input, 150) + "...\n"),
         "input excerpt is not 150 characters plus ellipsis");
  expect(contains(truncated, "  Rubric: " + utf8_prefix(text, 200) + "...\n"),
         "rubric excerpt is not 200 characters plus ellipsis");
  expect(!contains(truncated, utf8_prefix(input, 151)), "input excerpt longer than 150 characters");
  expect(!contains(truncated, utf8_prefix(text, 201)), "rubric excerpt longer than 200 characters");
  expect(utf8_length(utf8_prefix(input, 150)) == 150, "excerpt length is not 150 code points");

  SessionState session;
  session.taxonomy_versions.push_back(load_default_taxonomy());
  CritiqueBatch batch;
  batch.items = {{"ctx", "rubric", std::string("too vague"), std::nullopt}};
  auto refinement = build_refinement_prompt(batch, session);
  expect(contains(refinement, "MERGE rather than add"), "refinement prompt lacks merge guidance");
  expect(contains(refinement, "None provided"), "missing taxonomy critique not rendered");
  expect(contains(refinement, "No refinements have been made yet"),
         "first batch lacks the no-refinements notice");
  return failures;
}

/// Renders a refinement reply for `t` and parses it back against `previous`.
inline bool refinement_round_trip(const Taxonomy& t, const std::vector<std::string>& summary,
                                  const Taxonomy& previous, std::string* why = nullptr) {
  auto draft = parse_refined_taxonomy(render_refinement_output(t, summary), previous);
  Taxonomy expected = t;
  expected.version = previous.version + 1;
  expected.parent_version = previous.version;
  expected.finalized = false;
  expected.changes_summary = summary;
  if (draft.taxonomy == expected) return true;
  if (why) *why = "round trip differs: " + Json(draft.taxonomy).dump();
  return false;
}

}  // namespace rift::testing
