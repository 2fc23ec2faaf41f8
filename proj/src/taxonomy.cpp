#include "rift/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "rift/error.hpp"

namespace rift {

namespace detail {
extern const std::string_view kDefaultTaxonomyJson;
}

std::string to_string(Origin o) { return o == Origin::expert ? "expert" : "synthetic"; }

std::string to_string(RubricFormat f) {
  switch (f) {
    case RubricFormat::checklist:
      return "checklist";
    case RubricFormat::principles:
      return "principles";
    case RubricFormat::narrative:
      return "narrative";
  }
  return "checklist";
}

std::string to_string(Category c) {
  switch (c) {
    case Category::reliability:
      return "reliability";
    case Category::content_validity:
      return "content_validity";
    case Category::consequential_validity:
      return "consequential_validity";
  }
  return "reliability";
}

Origin parse_origin(std::string_view s) {
  if (s == "expert") return Origin::expert;
  if (s == "synthetic") return Origin::synthetic;
  throw DataError("invalid_enum", "unknown origin '" + std::string(s) + "'");
}

RubricFormat parse_format(std::string_view s) {
  if (s == "checklist") return RubricFormat::checklist;
  if (s == "principles") return RubricFormat::principles;
  if (s == "narrative") return RubricFormat::narrative;
  throw DataError("invalid_enum", "unknown rubric format '" + std::string(s) + "'");
}

Category parse_category(std::string_view s) {
  if (s == "reliability") return Category::reliability;
  if (s == "content_validity") return Category::content_validity;
  if (s == "consequential_validity") return Category::consequential_validity;
  throw DataError("invalid_enum", "unknown category '" + std::string(s) + "'");
}

std::string category_display_name(Category c) {
  switch (c) {
    case Category::reliability:
      return "Reliability";
    case Category::content_validity:
      return "Content Validity";
    case Category::consequential_validity:
      return "Consequential Validity";
  }
  return "";
}

const FailureMode* Taxonomy::find(std::string_view label) const {
  for (const auto& m : failure_modes) {
    if (m.label == label) return &m;
  }
  return nullptr;
}

std::vector<std::string> Taxonomy::labels() const {
  std::vector<std::string> out;
  out.reserve(failure_modes.size());
  for (const auto& m : failure_modes) out.push_back(m.label);
  return out;
}

std::string default_display_name(std::string_view label) {
  std::string out;
  bool start = true;
  for (char c : label) {
    if (c == '_') {
      out += ' ';
      start = true;
    } else {
      out += start ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
      start = false;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Finding> validate_taxonomy(const Taxonomy& t) {
  std::vector<Finding> findings;
  auto error = [&](std::string code, std::string msg, std::optional<std::string> label) {
    findings.push_back({Severity::error, std::move(code), std::move(msg), std::move(label)});
  };
  auto warn = [&](std::string code, std::string msg, std::optional<std::string> label) {
    findings.push_back({Severity::warning, std::move(code), std::move(msg), std::move(label)});
  };

  std::map<std::string, int> seen;
  for (const auto& m : t.failure_modes) {
    if (m.label.empty()) {
      error("empty_label", "failure mode with an empty label", std::nullopt);
      continue;
    }
    if (++seen[m.label] == 2) {
      error("duplicate_label", "label '" + m.label + "' is defined more than once", m.label);
    }
    if (!is_snake_case(m.label)) {
      error("invalid_label", "label '" + m.label + "' is not a snake_case identifier", m.label);
    }
    if (trim(m.description).empty()) {
      error("empty_description", "failure mode '" + m.label + "' has an empty description",
            m.label);
    }
    auto check_examples = [&](const std::vector<ExamplePair>& examples, const char* kind) {
      for (std::size_t i = 0; i < examples.size(); ++i) {
        if (trim(examples[i].input_context).empty() || trim(examples[i].rubric_text).empty()) {
          error("incomplete_example",
                std::string(kind) + " example " + std::to_string(i + 1) + " of '" + m.label +
                    "' is missing input_context or rubric_text",
                m.label);
        }
      }
      if (t.finalized && (examples.size() < kMinExamples || examples.size() > kMaxExamples)) {
        warn("example_count",
             "'" + m.label + "' has " + std::to_string(examples.size()) + " " + kind +
                 " examples; finalized versions need 3-5",
             m.label);
      }
    };
    check_examples(m.pass_examples, "pass");
    check_examples(m.fail_examples, "fail");
    if (t.finalized && !m.category) {
      warn("missing_category", "'" + m.label + "' has no category", m.label);
    }
  }

  auto n = t.failure_modes.size();
  if (n < kMinModes || n > kMaxModes) {
    warn("mode_count",
         "taxonomy has " + std::to_string(n) + " failure modes; compact taxonomies have 7-10",
         std::nullopt);
  }
  return findings;
}

bool has_errors(const std::vector<Finding>& findings) {
  return std::any_of(findings.begin(), findings.end(),
                     [](const Finding& f) { return f.severity == Severity::error; });
}

TaxonomyDiff diff_taxonomies(const Taxonomy& old_t, const Taxonomy& new_t) {
  TaxonomyDiff diff;
  std::vector<const FailureMode*> removed;
  std::vector<const FailureMode*> added;
  for (const auto& m : old_t.failure_modes) {
    const FailureMode* counterpart = new_t.find(m.label);
    if (!counterpart) {
      removed.push_back(&m);
    } else if (counterpart->description != m.description) {
      diff.description_changed.push_back(m.label);
    }
  }
  for (const auto& m : new_t.failure_modes) {
    if (!old_t.has_label(m.label)) added.push_back(&m);
  }

  std::vector<bool> added_used(added.size(), false);
  for (const auto* r : removed) {
    bool paired = false;
    for (std::size_t i = 0; i < added.size(); ++i) {
      if (!added_used[i] && added[i]->description == r->description) {
        added_used[i] = true;
        diff.renamed.emplace_back(r->label, added[i]->label);
        paired = true;
        break;
      }
    }
    if (!paired) diff.removed.push_back(r->label);
  }
  for (std::size_t i = 0; i < added.size(); ++i) {
    if (!added_used[i]) diff.added.push_back(added[i]->label);
  }
  return diff;
}

Taxonomy load_default_taxonomy() {
  auto j = Json::parse(detail::kDefaultTaxonomyJson, nullptr, false);
  if (j.is_discarded()) throw DataError("asset_corrupt", "embedded taxonomy is not valid JSON");
  Taxonomy t;
  try {
    t = j.get<Taxonomy>();
  } catch (const Json::exception& e) {
    throw DataError("asset_corrupt", std::string("embedded taxonomy: ") + e.what());
  }
  auto findings = validate_taxonomy(t);
  if (has_errors(findings)) {
    std::string msg = "embedded taxonomy fails validation:";
    for (const auto& f : findings) {
      if (f.severity == Severity::error) msg += " " + f.message + ";";
    }
    throw DataError("asset_corrupt", msg);
  }
  return t;
}

void check_annotation_labels(const AnnotationRecord& record, const Taxonomy& t) {
  for (const auto& label : record.labels) {
    if (!t.has_label(label)) {
      throw DataError("invalid_label", "label '" + label + "' is not defined in taxonomy version " +
                                           std::to_string(t.version));
    }
  }
}

// ---------------------------------------------------------------------------
// JSON

namespace {

template <class T>
T required(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) {
    throw DataError("missing_field", std::string("missing field '") + key + "'");
  }
  return j.at(key).get<T>();
}

std::optional<std::string> optional_string(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

Json optional_to_json(const std::optional<std::string>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

void to_json(Json& j, const Rubric& r) {
  j = Json{{"id", r.id},
           {"source", r.source},
           {"origin", to_string(r.origin)},
           {"format", to_string(r.format)},
           {"domain_tags", r.domain_tags},
           {"input_context", r.input_context},
           {"rubric", r.rubric_text},
           {"word_count", r.word_count},
           {"line_number", r.line_number}};
}

void from_json(const Json& j, Rubric& r) {
  r.id = required<std::string>(j, "id");
  r.source = j.value("source", std::string{});
  if (j.contains("origin")) r.origin = parse_origin(j.at("origin").get<std::string>());
  if (j.contains("format")) r.format = parse_format(j.at("format").get<std::string>());
  r.domain_tags = j.value("domain_tags", std::vector<std::string>{});
  r.input_context = required<std::string>(j, "input_context");
  if (j.contains("rubric")) {
    r.rubric_text = required<std::string>(j, "rubric");
  } else {
    r.rubric_text = required<std::string>(j, "rubric_text");
  }
  r.word_count = j.value("word_count", split_whitespace(r.rubric_text).size());
  r.line_number = j.value("line_number", std::size_t{0});
}

void to_json(Json& j, const ExamplePair& e) {
  j = Json{{"input_context", e.input_context}, {"rubric_text", e.rubric_text}};
}

void from_json(const Json& j, ExamplePair& e) {
  e.input_context = j.value("input_context", std::string{});
  e.rubric_text = j.contains("rubric_text") ? j.at("rubric_text").get<std::string>()
                                            : j.value("rubric", std::string{});
}

void to_json(Json& j, const FailureMode& m) {
  j = Json{{"label", m.label},
           {"display_name", m.display_name},
           {"category", m.category ? Json(to_string(*m.category)) : Json(nullptr)},
           {"description", m.description},
           {"rationale", m.rationale},
           {"pass_examples", m.pass_examples},
           {"fail_examples", m.fail_examples}};
}

void from_json(const Json& j, FailureMode& m) {
  m.label = required<std::string>(j, "label");
  m.display_name = j.value("display_name", std::string{});
  if (m.display_name.empty()) m.display_name = default_display_name(m.label);
  m.category.reset();
  if (j.contains("category") && !j.at("category").is_null()) {
    m.category = parse_category(j.at("category").get<std::string>());
  }
  m.description = j.value("description", std::string{});
  m.rationale = j.value("rationale", std::string{});
  const Json* examples = j.contains("examples") && j.at("examples").is_object() ? &j.at("examples")
                                                                                 : &j;
  m.pass_examples = examples->value("pass_examples", std::vector<ExamplePair>{});
  m.fail_examples = examples->value("fail_examples", std::vector<ExamplePair>{});
}

void to_json(Json& j, const Taxonomy& t) {
  j = Json{{"version", t.version},
           {"parent_version", t.parent_version ? Json(*t.parent_version) : Json(nullptr)},
           {"finalized", t.finalized},
           {"failure_modes", t.failure_modes},
           {"changes_summary", t.changes_summary}};
}

void from_json(const Json& j, Taxonomy& t) {
  t.version = j.value("version", 1);
  t.parent_version.reset();
  if (j.contains("parent_version") && !j.at("parent_version").is_null()) {
    t.parent_version = j.at("parent_version").get<int>();
  }
  t.finalized = j.value("finalized", false);
  t.failure_modes = j.value("failure_modes", std::vector<FailureMode>{});
  t.changes_summary = j.value("changes_summary", std::vector<std::string>{});
}

void to_json(Json& j, const AnnotationRecord& a) {
  j = Json{{"rubric_id", a.rubric_id},
           {"annotator_id", a.annotator_id},
           {"round", a.round},
           {"labels", a.labels},
           {"rubric_critique", optional_to_json(a.rubric_critique)},
           {"taxonomy_critique", optional_to_json(a.taxonomy_critique)},
           {"taxonomy_version", a.taxonomy_version}};
}

void from_json(const Json& j, AnnotationRecord& a) {
  a.rubric_id = required<std::string>(j, "rubric_id");
  a.annotator_id = required<std::string>(j, "annotator_id");
  a.round = required<int>(j, "round");
  if (a.round < 1) throw DataError("invalid_round", "annotation round must be >= 1");
  a.labels = j.value("labels", std::set<std::string>{});
  a.rubric_critique = optional_string(j, "rubric_critique");
  a.taxonomy_critique = optional_string(j, "taxonomy_critique");
  a.taxonomy_version = j.value("taxonomy_version", 1);
}

void to_json(Json& j, const TaxonomyDiff& d) {
  Json renamed = Json::array();
  for (const auto& [from, to] : d.renamed) renamed.push_back({{"from", from}, {"to", to}});
  j = Json{{"added", d.added},
           {"removed", d.removed},
           {"renamed", renamed},
           {"description_changed", d.description_changed}};
}

void to_json(Json& j, const Finding& f) {
  j = Json{{"severity", f.severity == Severity::error ? "error" : "warning"},
           {"code", f.code},
           {"message", f.message},
           {"label", optional_to_json(f.label)}};
}

Taxonomy load_taxonomy_file(const std::filesystem::path& path) {
  auto j = read_json_file(path);
  try {
    return j.get<Taxonomy>();
  } catch (const Json::exception& e) {
    throw DataError("malformed_taxonomy", path.string() + ": " + e.what());
  }
}

std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path) {
  std::vector<AnnotationRecord> out;
  for_each_jsonl(path, [&](std::size_t line, const Json& j) {
    try {
      out.push_back(j.get<AnnotationRecord>());
    } catch (const Json::exception& e) {
      throw DataError("malformed_annotation",
                      path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return out;
}

}  // namespace rift
