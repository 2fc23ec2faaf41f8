#include <gtest/gtest.h>

#include "prompt_checks.hpp"
#include "rift/error.hpp"

using namespace rift;
using namespace rift::testing;

TEST(Prompts, FidelityAnchorsAndTruncation) {
  for (const auto& f : prompt_fidelity_failures()) ADD_FAILURE() << f;
}

TEST(Prompts, AnnotationPromptIsPure) {
  auto t = load_default_taxonomy();
  auto r = make_rubric("x");
  EXPECT_EQ(build_annotation_prompt(t, r), build_annotation_prompt(t, r));
}

TEST(Prompts, AnnotationPromptListsEveryMode) {
  auto t = load_default_taxonomy();
  auto p = build_annotation_prompt(t, make_rubric("x"));
  for (const auto& l : t.labels()) EXPECT_TRUE(contains(p, "### " + l + "\n")) << l;
  EXPECT_TRUE(contains(p, "Prompt for x"));
  EXPECT_TRUE(contains(p, "\"suggested_labels\""));
}

TEST(Prompts, ShortExamplesAreNotPadded) {
  auto t = load_default_taxonomy();
  t.failure_modes[0].pass_examples = {{"short input", "short rubric"}};
  auto p = build_annotation_prompt(t, make_rubric("x"));
  EXPECT_TRUE(contains(p, "- Input: short input...\n"));
}

TEST(Prompts, ProbeNamesOnlyTheTarget) {
  auto t = load_default_taxonomy();
  auto p = build_adversarial_probe_prompt(t, make_rubric("x"), "hackable");
  EXPECT_TRUE(contains(p, "### hackable"));
  EXPECT_TRUE(contains(p, "Gaming strategy"));
  for (const auto& l : t.labels()) {
    if (l != "hackable") EXPECT_FALSE(contains(p, "### " + l)) << l;
  }
  EXPECT_THROW(build_adversarial_probe_prompt(t, make_rubric("x"), "unknown_label"), DataError);
}

TEST(Prompts, RefinementRendersRunningTaxonomy) {
  auto t = load_default_taxonomy();
  auto p = render_refinement_prompt(t, &t, {{"c", "r", std::nullopt, std::string("overlaps")}});
  EXPECT_FALSE(contains(p, "No refinements have been made yet"));
  EXPECT_TRUE(contains(p, "Rationale: "));
  EXPECT_TRUE(contains(p, "overlaps"));
  EXPECT_TRUE(contains(p, "Rubric Critique: (issues not captured by original taxonomy)\nNone provided"));
}

TEST(Prompts, RefinementRoundTrip) {
  std::string why;
  auto t = load_default_taxonomy();
  EXPECT_TRUE(refinement_round_trip(t, {}, t, &why)) << why;
  auto changed = t;
  changed.failure_modes.pop_back();
  changed.failure_modes[0].rationale = "Unicode \xe2\x80\x9cquotes\xe2\x80\x9d and \"escapes\"\n";
  EXPECT_TRUE(refinement_round_trip(changed, {"Removed one", "Clarified another"}, t, &why)) << why;
}

TEST(FillTemplate, SubstitutesKnownAndKeepsUnknown) {
  EXPECT_EQ(fill_template("{{a}} and {{ b }} and {{c}}", {{"a", "1"}, {"b", "2"}}),
            "1 and 2 and {{c}}");
  EXPECT_EQ(fill_template("no close {{a", {{"a", "1"}}), "no close {{a");
}

TEST(Utf8, PrefixCountsCodePoints) {
  EXPECT_EQ(utf8_prefix("h\xc3\xa9llo", 2), "h\xc3\xa9");
  EXPECT_EQ(utf8_length("h\xc3\xa9llo"), 5u);
  EXPECT_EQ(utf8_prefix("abc", 10), "abc");
}
