#include "rift/refinement.hpp"

#include <algorithm>

#include "rift/error.hpp"

namespace rift {

const Taxonomy* SessionState::version(int v) const {
  for (const auto& t : taxonomy_versions) {
    if (t.version == v) return &t;
  }
  return nullptr;
}

const Taxonomy& SessionState::latest() const {
  if (taxonomy_versions.empty()) throw DataError("empty_session", "session has no taxonomy versions");
  return taxonomy_versions.back();
}

void to_json(Json& j, const SessionState& s) {
  Json votes = Json::object();
  for (const auto& [round, by_expert] : s.saturation_votes) votes[std::to_string(round)] = by_expert;
  j = Json{{"rounds_completed", s.rounds_completed},
           {"consumed_rubric_ids", s.consumed_rubric_ids},
           {"taxonomy_versions", s.taxonomy_versions},
           {"saturation_votes", votes},
           {"experts", s.experts},
           {"plans", s.plans},
           {"annotations", s.annotations}};
}

void from_json(const Json& j, SessionState& s) {
  s.rounds_completed = j.value("rounds_completed", 0);
  s.consumed_rubric_ids = j.value("consumed_rubric_ids", std::set<std::string>{});
  s.taxonomy_versions = j.value("taxonomy_versions", std::vector<Taxonomy>{});
  s.saturation_votes.clear();
  if (j.contains("saturation_votes")) {
    for (const auto& [round, by_expert] : j.at("saturation_votes").items()) {
      s.saturation_votes[std::stoi(round)] = by_expert.get<std::map<std::string, bool>>();
    }
  }
  s.experts = j.value("experts", std::vector<std::string>{});
  s.plans = j.value("plans", std::vector<RoundPlan>{});
  s.annotations = j.value("annotations", std::vector<AnnotationRecord>{});
}

SessionState load_session(const std::filesystem::path& path) {
  SessionState s;
  try {
    s = read_json_file(path).get<SessionState>();
  } catch (const Json::exception& e) {
    throw DataError("invalid_session", path.string() + ": " + e.what());
  }
  validate_session(s);
  return s;
}

void save_session(const std::filesystem::path& path, const SessionState& s) {
  validate_session(s);
  write_json_file(path, Json(s));
}

void validate_session(const SessionState& s) {
  std::set<std::string> planned;
  for (const auto& p : s.plans) {
    if (p.split != Split::development) continue;
    for (const auto& id : p.all_ids()) planned.insert(id);
  }
  if (planned != s.consumed_rubric_ids) {
    throw DataError("session_inconsistent",
                    "consumed rubric ids do not match the union of the round plans");
  }
  for (std::size_t i = 0; i < s.taxonomy_versions.size(); ++i) {
    const auto& t = s.taxonomy_versions[i];
    if (i == 0) {
      if (t.parent_version) throw DataError("session_inconsistent", "first version has a parent");
      continue;
    }
    const auto& prev = s.taxonomy_versions[i - 1];
    if (t.version != prev.version + 1 || t.parent_version != prev.version) {
      throw DataError("session_inconsistent",
                      "taxonomy version " + std::to_string(t.version) + " does not extend the chain");
    }
  }
}

std::string build_refinement_prompt(const CritiqueBatch& batch, const SessionState& session) {
  if (batch.items.empty()) throw UsageError("empty_batch", "critique batch has no items");
  const Taxonomy* original = session.version(batch.original_version);
  if (!original) {
    throw DataError("unknown_version", "no taxonomy version " + std::to_string(batch.original_version));
  }
  const Taxonomy* running = nullptr;
  if (batch.running_version) {
    running = session.version(*batch.running_version);
    if (!running) {
      throw DataError("unknown_version", "no taxonomy version " + std::to_string(*batch.running_version));
    }
  }
  return render_refinement_prompt(*original, running, batch.items);
}

RefinementDraft parse_refined_taxonomy(std::string_view raw, const Taxonomy& previous) {
  auto doc = extract_json_object(raw);
  if (!doc || !doc->contains("failure_modes") || !doc->at("failure_modes").is_array()) {
    throw MalformedResponse("refinement reply has no 'failure_modes' array");
  }
  RefinementDraft draft;
  auto& t = draft.taxonomy;
  try {
    t.failure_modes = doc->at("failure_modes").get<std::vector<FailureMode>>();
    t.changes_summary = doc->value("changes_summary", std::vector<std::string>{});
  } catch (const Error&) {
    throw;
  } catch (const Json::exception& e) {
    throw MalformedResponse(std::string("refinement reply does not match the schema: ") + e.what());
  }
  for (auto& m : t.failure_modes) {
    if (m.category) continue;
    if (const auto* before = previous.find(m.label)) m.category = before->category;
  }
  t.version = previous.version + 1;
  t.parent_version = previous.version;
  t.finalized = false;
  draft.diff = diff_taxonomies(previous, t);
  draft.unchanged = draft.diff.empty() && t.changes_summary.empty();
  draft.findings = validate_taxonomy(t);
  return draft;
}

std::vector<std::vector<CritiqueItem>> round_critiques(const SessionState& session,
                                                       const std::map<std::string, Rubric>& rubrics,
                                                       int round, std::size_t batch_size) {
  std::vector<CritiqueItem> items;
  for (const auto& a : session.annotations) {
    if (a.round != round) continue;
    auto it = rubrics.find(a.rubric_id);
    if (it == rubrics.end()) {
      throw DataError("unknown_rubric", "annotation references unknown rubric '" + a.rubric_id + "'");
    }
    items.push_back({it->second.input_context, it->second.rubric_text, a.rubric_critique,
                     a.taxonomy_critique});
  }
  if (items.empty()) {
    throw DataError("empty_round", "round " + std::to_string(round) + " has no annotations");
  }
  std::vector<std::vector<CritiqueItem>> batches;
  std::size_t step = batch_size == 0 ? items.size() : batch_size;
  for (std::size_t i = 0; i < items.size(); i += step) {
    batches.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(i),
                         items.begin() + static_cast<std::ptrdiff_t>(std::min(items.size(), i + step)));
  }
  return batches;
}

namespace {

std::string complete_refinement(Provider& provider, ResponseCache* cache, const std::string& prompt,
                                const Taxonomy& previous) {
  return cached_completion(provider, cache, prompt, 0, [&](const std::string& raw) {
           (void)parse_refined_taxonomy(raw, previous);
         })
      .raw;
}

}  // namespace

std::vector<RefinementDraft> refine_round(SessionState& session,
                                          const std::map<std::string, Rubric>& rubrics, int round,
                                          Provider& provider, const RefineOptions& options) {
  const Taxonomy* original = nullptr;
  for (auto it = session.taxonomy_versions.rbegin(); it != session.taxonomy_versions.rend(); ++it) {
    if (it->finalized) {
      original = &*it;
      break;
    }
  }
  if (!original) throw DataError("no_finalized_version", "session has no finalized taxonomy");
  const int original_version = original->version;

  std::vector<RefinementDraft> drafts;
  std::optional<int> running;
  for (auto& items : round_critiques(session, rubrics, round, options.batch_size)) {
    CritiqueBatch batch{round, std::move(items), original_version, running};
    auto prompt = build_refinement_prompt(batch, session);
    const Taxonomy previous = session.latest();
    auto raw = complete_refinement(provider, options.cache, prompt, previous);
    auto draft = parse_refined_taxonomy(raw, previous);
    session.taxonomy_versions.push_back(draft.taxonomy);
    running = draft.taxonomy.version;
    drafts.push_back(std::move(draft));
  }
  return drafts;
}

RefinementDraft bootstrap_taxonomy(const std::vector<CritiqueItem>& critiques, Provider& provider,
                                   ResponseCache* cache) {
  if (critiques.empty()) throw UsageError("no_critiques", "bootstrap needs at least one critique");
  Taxonomy empty;
  empty.version = 0;
  auto prompt = render_refinement_prompt(empty, nullptr, critiques);
  auto raw = complete_refinement(provider, cache, prompt, empty);
  auto draft = parse_refined_taxonomy(raw, empty);
  draft.taxonomy.version = 1;
  draft.taxonomy.parent_version.reset();
  return draft;
}

std::vector<CritiqueItem> load_critiques(const std::filesystem::path& path) {
  std::vector<CritiqueItem> out;
  for_each_jsonl(path, [&](std::size_t line, const Json& j) {
    CritiqueItem item;
    if (j.is_string()) {
      item.rubric_critique = j.get<std::string>();
    } else if (j.is_object()) {
      item.input_context = j.value("input_context", std::string{});
      item.rubric_text = j.value("rubric", j.value("rubric_text", std::string{}));
      if (j.contains("rubric_critique") && j.at("rubric_critique").is_string()) {
        item.rubric_critique = j.at("rubric_critique").get<std::string>();
      }
      if (j.contains("taxonomy_critique") && j.at("taxonomy_critique").is_string()) {
        item.taxonomy_critique = j.at("taxonomy_critique").get<std::string>();
      }
    } else {
      throw DataError("invalid_record", path.string() + ":" + std::to_string(line) +
                                            ": expected a string or object");
    }
    out.push_back(std::move(item));
  });
  return out;
}

SaturationReport saturation_status(const SessionState& session) {
  if (session.rounds_completed < 1) {
    throw UsageError("no_rounds", "saturation needs at least one completed round");
  }
  SaturationReport r;
  r.round = session.rounds_completed;
  const auto& latest = session.latest();
  if (latest.parent_version) {
    if (const auto* parent = session.version(*latest.parent_version)) {
      r.has_previous_version = true;
      r.diff = diff_taxonomies(*parent, latest);
      r.diff_empty = r.diff.empty();
    }
  }
  for (const auto& a : session.annotations) {
    if (a.round != r.round) continue;
    const Taxonomy* t = session.version(a.taxonomy_version);
    for (const auto& label : a.labels) {
      if (!t || !t->has_label(label)) ++r.out_of_taxonomy_labels;
    }
  }
  r.experts = static_cast<int>(session.experts.size());
  if (auto it = session.saturation_votes.find(r.round); it != session.saturation_votes.end()) {
    for (const auto& e : session.experts) {
      auto v = it->second.find(e);
      if (v != it->second.end() && v->second) ++r.votes_in_favour;
    }
  }
  r.unanimous = r.experts > 0 && r.votes_in_favour == r.experts;
  r.convergence_candidate = r.diff_empty && r.out_of_taxonomy_labels == 0 && r.unanimous;
  return r;
}

void to_json(Json& j, const SaturationReport& r) {
  j = Json{{"round", r.round},
           {"has_previous_version", r.has_previous_version},
           {"diff_empty", r.diff_empty},
           {"diff", r.diff},
           {"out_of_taxonomy_labels", r.out_of_taxonomy_labels},
           {"votes_in_favour", r.votes_in_favour},
           {"experts", r.experts},
           {"unanimous", r.unanimous},
           {"convergence_candidate", r.convergence_candidate}};
}

}  // namespace rift
