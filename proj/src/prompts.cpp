#include "rift/prompts.hpp"

#include "rift/error.hpp"

namespace rift {

namespace {

void render_examples(std::string& out, const std::vector<ExamplePair>& examples) {
  for (const auto& e : examples) {
    out += "- Input: " + utf8_prefix(e.input_context, kExampleInputChars) + "...\n";
    out += "  Rubric: " + utf8_prefix(e.rubric_text, kExampleRubricChars) + "...\n";
  }
}

void render_mode_for_annotation(std::string& out, const FailureMode& m) {
  out += "### " + m.label + "\n";
  out += "Description: " + m.description + "\n\n";
  out += "**Pass Examples** (rubric does NOT exhibit this failure mode):\n";
  render_examples(out, m.pass_examples);
  out += "\n**Fail Examples** (rubric DOES exhibit this failure mode):\n";
  render_examples(out, m.fail_examples);
  out += "\n";
}

void render_rubric_sections(std::string& out, const Rubric& rubric) {
  out += "## Input Context\n" + rubric.input_context + "\n\n";
  out += "## Rubric to Evaluate\n" + rubric.rubric_text + "\n\n";
}

constexpr const char* kAnnotationOutputSchema =
    "Respond with a single JSON object and nothing else, using this schema:\n"
    "{\n"
    "  \"suggested_labels\": [\n"
    "    {\n"
    "      \"label\": \"<failure mode label from taxonomy>\",\n"
    "      \"justification\": \"<why this failure mode applies>\",\n"
    "      \"quote\": \"<specific rubric quote exhibiting the issue>\"\n"
    "    }\n"
    "  ]\n"
    "}\n"
    "Return an empty suggested_labels list if no failure mode applies.\n";

constexpr const char* kRefinementFeedbackHeader =
    "## Annotator Feedback to Analyze\n\n"
    "Below are annotations with two types of critiques:\n"
    "- Rubric Critique: Issues the annotator observed in the rubric that were NOT captured by the "
    "original taxonomy labels (may suggest new failure modes)\n"
    "- Taxonomy Critique: Critique of the ORIGINAL taxonomy (unclear definitions, overlapping "
    "categories, missing categories, etc.). Note: these critiques were written against the "
    "original taxonomy, not the running refinement.\n\n";

constexpr const char* kRefinementInstructions =
    "## Taxonomy Philosophy\n\n"
    "CRITICAL: This taxonomy will be used by human annotators. The primary goal is to create a "
    "taxonomy that is:\n"
    "- Compact: Aim for 7-10 total failure modes. Fewer distinct categories is ALWAYS better than "
    "many granular ones.\n"
    "- Easily distinguishable: A human should be able to distinguish between any two failure modes "
    "in under 30 seconds. If two categories require careful reading to tell apart, they should be "
    "merged or their distinction should be clarified by refining the label names and or the "
    "description.\n"
    "- Actionable: Each category must be clearly applicable without ambiguity.\n\n"
    "Consolidation over proliferation: When in doubt, MERGE rather than add. Two failure modes that "
    "are 80% similar should become one category, not two. The cost of a slightly imperfect merge is "
    "far lower than the cost of a bloated, hard-to-use taxonomy.\n\n"
    "## Guidelines\n\n"
    "- Clear descriptions: Each failure mode description must be clear, specific, and actionable. "
    "The description should explicitly specify HOW to determine if a rubric exhibits this failure "
    "mode. An annotator should be able to read the description and confidently apply it to any "
    "rubric.\n"
    "- No overlapping failure modes: The taxonomy should not contain failure modes with overlapping "
    "meanings. If two labels capture the same concept, merge them or refine them to make them "
    "distinct. Do NOT add a new failure mode if its meaning already exists under a different "
    "label.\n"
    "- Self-contained rationales: Each rationale must be a self-contained justification that will "
    "be used for manual review. It should explain WHY this failure mode exists, what evidence from "
    "critiques supports it, and how it differs from other failure modes. A reviewer should "
    "understand the rationale without needing to see the original critiques.\n"
    "- Cumulative applicability: The refined taxonomy must be applicable to ALL critiques that have "
    "been seen in this session (including previous batches), not just the current batch. Do not "
    "remove or change failure modes in ways that would make them inapplicable to earlier critiques "
    "that supported them.\n\n"
    "## Task\n\n"
    "Analyze BOTH the rubric critiques and taxonomy critiques above. Before adding any new failure "
    "modes, first consider whether existing categories should be merged.\n\n"
    "FIRST: Consider merging existing failure modes when:\n"
    "- Two or more categories have similar descriptions or capture closely related issues\n"
    "- Categories are difficult to distinguish without careful reading\n"
    "- A broader category could capture multiple narrower ones without losing important "
    "distinctions\n"
    "- The taxonomy has grown beyond 12 failure modes\n\n"
    "PREFERRED action - merge: Combine overlapping, redundant, or closely related labels into one. "
    "This is the most important refinement action. If you're unsure whether two categories are "
    "distinct enough, merge them.\n\n"
    "Add new failure modes ONLY when ALL of the following are true:\n"
    "- The issue is clearly NOT capturable by ANY existing failure mode (even with minor rewording)\n"
    "- The issue appears in MULTIPLE critiques (not just one annotation)\n"
    "- The new category is easily distinguishable from ALL existing categories\n"
    "- Adding it would NOT push the taxonomy beyond 12 failure modes\n\n"
    "Other refinement actions:\n"
    "- clarify: Make a label's description clearer, more specific, or more actionable (especially "
    "clarifying HOW to identify the failure mode)\n"
    "- split: Divide an overly broad label into more specific ones (use sparingly - only when a "
    "category is genuinely too broad to apply consistently)\n"
    "- remove: Eliminate labels that are not useful, are duplicates, or are too similar to other "
    "categories\n"
    "- rename: Change a label name to be more descriptive\n\n"
    "Output:\n"
    "1. failure_modes: The complete list of failure modes after applying changes. Each failure "
    "mode should have:\n"
    "- label: concise identifier (e.g., contradictory_criteria, missing_edge_cases)\n"
    "- description: clear, specific, and actionable description that explains HOW to determine if "
    "a rubric has this failure mode (what to look for, what conditions must be met)\n"
    "- rationale: a self-contained justification for this failure mode that can be understood "
    "without seeing the original critiques. Explain why it exists, what patterns it captures, and "
    "how it differs from related failure modes. If this is a NEW category, explicitly explain why "
    "it cannot be captured by any existing category.\n"
    "- examples: REQUIRED: 3-5 pass_examples AND 3-5 fail_examples for each failure mode. Multiple "
    "diverse examples are essential for annotator training. You may use real examples from the "
    "annotations or synthesize clear illustrative examples. Each example should illustrate a "
    "distinct scenario or nuance.\n"
    "2. changes_summary: A list of strings describing what changes you made (e.g., \"Added "
    "'contradictory_criteria' based on rubric critiques\", \"Clarified description of "
    "'ambiguous_criterion'\", \"Merged 'x' and 'y' into 'z'\")\n\n"
    "If no changes are needed based on these critiques, return the current running refinement "
    "unchanged with an empty changes_summary.\n\n"
    "Respond with a single JSON object and nothing else:\n"
    "{\"failure_modes\": [{\"label\": \"...\", \"description\": \"...\", \"rationale\": \"...\", "
    "\"pass_examples\": [{\"input_context\": \"...\", \"rubric_text\": \"...\"}], "
    "\"fail_examples\": [{\"input_context\": \"...\", \"rubric_text\": \"...\"}]}], "
    "\"changes_summary\": [\"...\"]}\n";

}  // namespace

std::string build_annotation_prompt(const Taxonomy& taxonomy, const Rubric& rubric) {
  std::string out;
  out += std::string(kAnnotationPreamble) +
         " against the failure mode taxonomy and identify any issues. The rubric is designed to "
         "evaluate the quality of an AI model's response to a given prompt.\n\n";
  out += "## Failure Mode Taxonomy\n\n";
  if (taxonomy.failure_modes.empty()) {
    out += "No failure modes defined yet - suggest any issues you observe.\n\n";
  }
  for (const auto& m : taxonomy.failure_modes) render_mode_for_annotation(out, m);
  render_rubric_sections(out, rubric);
  out += "## Task\n";
  out += "Identify which failure modes from the taxonomy apply to this rubric (if any).\n\n";
  out += kAnnotationOutputSchema;
  return out;
}

std::string build_adversarial_probe_prompt(const Taxonomy& taxonomy, const Rubric& rubric,
                                           std::string_view target_mode) {
  const FailureMode* mode = taxonomy.find(target_mode);
  if (!mode) {
    throw DataError("unknown_label", "probe target '" + std::string(target_mode) +
                                         "' is not in the taxonomy; allowed: " +
                                         join(taxonomy.labels(), ", "));
  }
  std::string out;
  out += std::string(kProbePreamble) +
         " and reason adversarially about whether the rubric below exhibits it.\n\n";
  out += "## Target Failure Mode\n\n";
  render_mode_for_annotation(out, *mode);
  render_rubric_sections(out, rubric);
  out += "## Task\n";
  out += "Put yourself in the position of a responder whose only goal is to obtain the highest "
         "possible score under this rubric with as little real effort as possible.\n"
         "1. Gaming strategy: describe concretely how such a responder would try to earn top "
         "marks without actually satisfying the prompt.\n"
         "2. Quality gates assessment: list which rubric criteria, if any, would stop that "
         "strategy, and which safeguards are missing.\n"
         "3. Final verdict: decide whether the rubric exhibits '" +
         mode->label + "'.\n\n";
  out += "Respond with a single JSON object and nothing else, using this schema:\n"
         "{\n"
         "  \"gaming_strategy\": \"<strategy>\",\n"
         "  \"quality_gates_assessment\": \"<assessment>\",\n"
         "  \"final_verdict\": \"<one or two sentences>\",\n"
         "  \"suggested_labels\": [\n"
         "    {\"label\": \"" +
         mode->label +
         "\", \"justification\": \"<why>\", \"quote\": \"<rubric quote>\"}\n"
         "  ]\n"
         "}\n"
         "Leave suggested_labels empty if the rubric does not exhibit '" +
         mode->label + "'.\n";
  return out;
}

std::string render_refinement_prompt(const Taxonomy& original, const Taxonomy* running,
                                     const std::vector<CritiqueItem>& items) {
  std::string out;
  out += std::string(kRefinementPreamble) +
         " Your task is to output a complete refined failure mode taxonomy.\n\n";

  out += "## Original Failure Mode Taxonomy\n\n";
  out += "This is the original taxonomy before any refinements in this session:\n";
  if (original.failure_modes.empty()) {
    out += "No failure modes have been defined yet.\n";
  }
  for (const auto& m : original.failure_modes) {
    out += "### " + m.label + "\nDescription: " + m.description + "\n";
  }
  out += "\n## Current Running Refinement\n\n";
  out += "This is the taxonomy as refined so far in this session (may be identical to original if "
         "this is the first batch):\n";
  if (running == nullptr) {
    out += "No refinements have been made yet.\n";
  } else {
    if (running->failure_modes.empty()) out += "No failure modes have been defined yet.\n";
    for (const auto& m : running->failure_modes) {
      out += "### " + m.label + "\nDescription: " + m.description + "\nRationale: " + m.rationale +
             "\nExamples: " + std::to_string(m.pass_examples.size()) + " pass, " +
             std::to_string(m.fail_examples.size()) + " fail\n";
    }
  }
  out += "\n";
  out += kRefinementFeedbackHeader;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    out += "Annotation " + std::to_string(i + 1) + "\n";
    out += "Input Context: " + item.input_context + "\n";
    out += "Rubric: " + item.rubric_text + "\n";
    out += "Rubric Critique: (issues not captured by original taxonomy)\n";
    out += (item.rubric_critique && !trim(*item.rubric_critique).empty() ? *item.rubric_critique
                                                                           : "None provided");
    out += "\nTaxonomy Critique: (critique of the original taxonomy)\n";
    out += (item.taxonomy_critique && !trim(*item.taxonomy_critique).empty()
                ? *item.taxonomy_critique
                : "None provided");
    out += "\n\n";
  }
  out += kRefinementInstructions;
  return out;
}

std::string render_refinement_output(const Taxonomy& taxonomy,
                                     const std::vector<std::string>& changes_summary) {
  Json modes = Json::array();
  for (const auto& m : taxonomy.failure_modes) {
    Json jm = m;
    modes.push_back(std::move(jm));
  }
  Json out{{"failure_modes", modes}, {"changes_summary", changes_summary}};
  return out.dump(2);
}

std::string fill_template(const std::string& tmpl, const std::map<std::string, std::string>& vars) {
  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    auto open = tmpl.find("{{", i);
    if (open == std::string::npos) {
      out.append(tmpl, i, std::string::npos);
      break;
    }
    auto close = tmpl.find("}}", open + 2);
    if (close == std::string::npos) {
      out.append(tmpl, i, std::string::npos);
      break;
    }
    out.append(tmpl, i, open - i);
    auto key = trim(std::string_view(tmpl).substr(open + 2, close - open - 2));
    if (auto it = vars.find(key); it != vars.end()) {
      out += it->second;
    } else {
      out.append(tmpl, open, close + 2 - open);
    }
    i = close + 2;
  }
  return out;
}

const char* const kDefaultPreferencePrompt =
    "You are comparing two responses to the same prompt using a rubric. Judge them only by how "
    "well each satisfies the rubric.\n\n"
    "## Input Context\n{{input_context}}\n\n"
    "## Rubric\n{{rubric}}\n\n"
    "## Response A\n{{response_a}}\n\n"
    "## Response B\n{{response_b}}\n\n"
    "## Task\n"
    "Which response scores higher under the rubric? Answer with exactly one token: A, B, or TIE.\n";

const char* const kDefaultScorePrompt =
    "You are grading a single response against a rubric. Apply every rubric criterion and then "
    "summarize the result as one overall score.\n\n"
    "## Input Context\n{{input_context}}\n\n"
    "## Rubric\n{{rubric}}\n\n"
    "## Response\n{{response}}\n\n"
    "## Task\n"
    "Give one overall score from 0 to 10 for how well the response satisfies the rubric as a "
    "whole. Respond with a single JSON object: {\"score\": <number from 0 to 10>}\n";

}  // namespace rift
