#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rift/util.hpp"

namespace rift {

enum class Origin { expert, synthetic };
enum class RubricFormat { checklist, principles, narrative };
enum class Category { reliability, content_validity, consequential_validity };

std::string to_string(Origin o);
std::string to_string(RubricFormat f);
std::string to_string(Category c);
Origin parse_origin(std::string_view s);
RubricFormat parse_format(std::string_view s);
Category parse_category(std::string_view s);
/// "Reliability", "Content Validity", "Consequential Validity".
std::string category_display_name(Category c);

struct Rubric {
  std::string id;
  std::string source;
  Origin origin = Origin::expert;
  RubricFormat format = RubricFormat::checklist;
  std::vector<std::string> domain_tags;
  std::string input_context;
  std::string rubric_text;
  // Ingestion metadata.
  std::size_t line_number = 0;
  std::size_t word_count = 0;

  bool operator==(const Rubric&) const = default;
};

struct ExamplePair {
  std::string input_context;
  std::string rubric_text;

  bool operator==(const ExamplePair&) const = default;
};

struct FailureMode {
  std::string label;
  std::string display_name;
  // Refinement output may introduce a mode before the panel assigns it a
  // category, so this is optional.
  std::optional<Category> category;
  std::string description;
  std::string rationale;
  std::vector<ExamplePair> pass_examples;
  std::vector<ExamplePair> fail_examples;

  bool operator==(const FailureMode&) const = default;
};

struct Taxonomy {
  int version = 1;
  std::optional<int> parent_version;
  bool finalized = false;
  std::vector<FailureMode> failure_modes;
  std::vector<std::string> changes_summary;

  const FailureMode* find(std::string_view label) const;
  bool has_label(std::string_view label) const { return find(label) != nullptr; }
  std::vector<std::string> labels() const;

  bool operator==(const Taxonomy&) const = default;
};

struct AnnotationRecord {
  std::string rubric_id;
  std::string annotator_id;
  int round = 1;
  std::set<std::string> labels;
  std::optional<std::string> rubric_critique;
  std::optional<std::string> taxonomy_critique;
  int taxonomy_version = 1;

  bool operator==(const AnnotationRecord&) const = default;
};

struct TaxonomyDiff {
  std::vector<std::string> added;
  std::vector<std::string> removed;
  std::vector<std::pair<std::string, std::string>> renamed;
  std::vector<std::string> description_changed;

  bool empty() const {
    return added.empty() && removed.empty() && renamed.empty() && description_changed.empty();
  }
  bool operator==(const TaxonomyDiff&) const = default;
};

enum class Severity { error, warning };

struct Finding {
  Severity severity;
  std::string code;
  std::string message;
  std::optional<std::string> label;

  bool operator==(const Finding&) const = default;
};

/// Compact-taxonomy bounds and per-polarity example bounds for finalized
/// versions.
inline constexpr std::size_t kMinModes = 7;
inline constexpr std::size_t kMaxModes = 10;
inline constexpr std::size_t kMinExamples = 3;
inline constexpr std::size_t kMaxExamples = 5;

/// Structural checks. Errors: empty/duplicate/non-snake-case labels, empty
/// descriptions, incomplete example pairs. Warnings: mode count outside
/// [7, 10]; in finalized versions, a mode with pass or fail example counts
/// outside [3, 5] or without a category.
std::vector<Finding> validate_taxonomy(const Taxonomy& t);
bool has_errors(const std::vector<Finding>& findings);

/// Renames are only detected for byte-identical descriptions.
TaxonomyDiff diff_taxonomies(const Taxonomy& old_t, const Taxonomy& new_t);

/// Version 1 of the built-in eight-mode taxonomy. Throws DataError
/// ("asset_corrupt") if the embedded asset does not validate.
Taxonomy load_default_taxonomy();

/// Throws DataError("invalid_label") naming the first label the taxonomy
/// does not define.
void check_annotation_labels(const AnnotationRecord& record, const Taxonomy& t);

std::string default_display_name(std::string_view label);

// JSON mapping. Field names follow the documented file formats.
void to_json(Json& j, const Rubric& r);
void from_json(const Json& j, Rubric& r);
void to_json(Json& j, const ExamplePair& e);
void from_json(const Json& j, ExamplePair& e);
void to_json(Json& j, const FailureMode& m);
void from_json(const Json& j, FailureMode& m);
void to_json(Json& j, const Taxonomy& t);
void from_json(const Json& j, Taxonomy& t);
void to_json(Json& j, const AnnotationRecord& a);
void from_json(const Json& j, AnnotationRecord& a);
void to_json(Json& j, const TaxonomyDiff& d);
void to_json(Json& j, const Finding& f);

Taxonomy load_taxonomy_file(const std::filesystem::path& path);
std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path);

}  // namespace rift
