#include "rift/review_store.hpp"

#include <algorithm>

#include "rift/error.hpp"

namespace rift {

std::string to_string(QueueStatus s) { return s == QueueStatus::pending ? "pending" : "submitted"; }

std::string to_string(FlagDecision d) { return d == FlagDecision::confirmed ? "confirmed" : "dismissed"; }

FlagDecision parse_flag_decision(std::string_view s) {
  if (s == "confirmed" || s == "confirm") return FlagDecision::confirmed;
  if (s == "dismissed" || s == "dismiss") return FlagDecision::dismissed;
  throw UsageError("invalid_request", "decision must be 'confirmed' or 'dismissed'");
}

void to_json(Json& j, const QueueItem& q) {
  j = Json{{"rubric_id", q.rubric_id},
           {"round", q.round},
           {"assigned_to", q.assigned_to},
           {"status", to_string(q.status)}};
}

void to_json(Json& j, const Flag& f) {
  j = Json{{"rubric_id", f.rubric_id},
           {"failure_mode", f.failure_mode},
           {"source", f.source},
           {"justification", f.justification},
           {"quote", f.quote}};
}

void from_json(const Json& j, Flag& f) {
  f.rubric_id = j.at("rubric_id").get<std::string>();
  f.failure_mode = j.at("failure_mode").get<std::string>();
  f.source = j.at("source").get<std::string>();
  f.justification = j.value("justification", std::string{});
  f.quote = j.value("quote", std::string{});
}

void to_json(Json& j, const FlagVerdict& v) {
  j = Json{{"rubric_id", v.rubric_id},
           {"failure_mode", v.failure_mode},
           {"source", v.source},
           {"reviewer_id", v.reviewer_id},
           {"decision", to_string(v.decision)},
           {"note", v.note ? Json(*v.note) : Json(nullptr)},
           {"timestamp", v.timestamp}};
}

void from_json(const Json& j, FlagVerdict& v) {
  v.rubric_id = j.at("rubric_id").get<std::string>();
  v.failure_mode = j.at("failure_mode").get<std::string>();
  v.source = j.at("source").get<std::string>();
  v.reviewer_id = j.value("reviewer_id", std::string{});
  v.decision = parse_flag_decision(j.at("decision").get<std::string>());
  v.note.reset();
  if (j.contains("note") && j.at("note").is_string()) v.note = j.at("note").get<std::string>();
  v.timestamp = j.value("timestamp", std::string{});
}

const Taxonomy* ReviewState::version(int v) const {
  for (const auto& t : taxonomy_versions) {
    if (t.version == v) return &t;
  }
  return nullptr;
}

const Taxonomy* ReviewState::active() const {
  return active_version ? version(*active_version) : nullptr;
}

std::vector<FlagVerdict> ReviewState::current_verdicts() const {
  std::vector<FlagVerdict> out;
  std::map<std::tuple<std::string, std::string, std::string, std::string>, std::size_t> slot;
  for (const auto& v : flag_verdicts) {
    auto key = std::make_tuple(v.rubric_id, v.failure_mode, v.source, v.reviewer_id);
    auto [it, inserted] = slot.emplace(key, out.size());
    if (inserted) {
      out.push_back(v);
    } else {
      out[it->second] = v;
    }
  }
  return out;
}

Json state_to_json(const ReviewState& s) {
  Json rounds = Json::array();
  for (const auto& [k, r] : s.rounds) {
    rounds.push_back({{"round", k},
                      {"plan", r.plan},
                      {"annotators", r.annotators},
                      {"queue", r.queue},
                      {"opened_at", r.opened_at}});
  }
  Json flags = Json::array();
  for (const auto& [_, f] : s.flags) flags.push_back(f);
  Json rubrics = Json::array();
  for (const auto& [_, r] : s.rubrics) rubrics.push_back(r);
  return Json{{"last_seq", s.last_seq},
              {"rubrics", rubrics},
              {"rounds", rounds},
              {"annotations", s.annotations},
              {"flags", flags},
              {"flag_verdicts", s.flag_verdicts},
              {"taxonomy_versions", s.taxonomy_versions},
              {"active_version", s.active_version ? Json(*s.active_version) : Json(nullptr)}};
}

// ---------------------------------------------------------------------------

void apply_event(ReviewState& state, const Json& event) {
  auto seq = event.at("seq").get<std::uint64_t>();
  if (seq != state.last_seq + 1) {
    throw DataError("corrupt_log", "event sequence " + std::to_string(seq) + " follows " +
                                       std::to_string(state.last_seq));
  }
  const auto type = event.at("type").get<std::string>();
  const auto& data = event.at("data");
  const auto timestamp = event.value("timestamp", std::string{});

  if (type == "rubrics_registered") {
    for (const auto& j : data.at("rubrics")) {
      auto r = j.get<Rubric>();
      state.rubrics[r.id] = r;
    }
  } else if (type == "taxonomy_version_added") {
    state.taxonomy_versions.push_back(data.at("taxonomy").get<Taxonomy>());
  } else if (type == "taxonomy_finalized") {
    int v = data.at("version").get<int>();
    for (auto& t : state.taxonomy_versions) {
      if (t.version == v) t.finalized = true;
    }
    state.active_version = v;
  } else if (type == "round_opened") {
    RoundInfo info;
    info.plan = data.at("plan").get<RoundPlan>();
    info.round = info.plan.round;
    info.annotators = data.at("annotators").get<std::vector<std::string>>();
    info.opened_at = timestamp;
    for (const auto& id : info.plan.all_ids()) {
      for (const auto& a : info.annotators) {
        info.queue.push_back({id, info.round, a, QueueStatus::pending});
      }
    }
    state.rounds[info.round] = std::move(info);
  } else if (type == "annotation_submitted") {
    auto record = data.at("record").get<AnnotationRecord>();
    for (auto& q : state.rounds.at(record.round).queue) {
      if (q.rubric_id == record.rubric_id && q.assigned_to == record.annotator_id) {
        q.status = QueueStatus::submitted;
      }
    }
    state.annotations.push_back(std::move(record));
  } else if (type == "flag_raised") {
    auto f = data.at("flag").get<Flag>();
    state.flags[{f.rubric_id, f.failure_mode, f.source}] = f;
  } else if (type == "flag_verdict") {
    auto v = data.at("verdict").get<FlagVerdict>();
    state.flag_verdicts.push_back(std::move(v));
  } else {
    throw DataError("corrupt_log", "unknown event type '" + type + "'");
  }
  state.last_seq = seq;
}

ReviewState replay_log(const std::filesystem::path& log_path) {
  ReviewState state;
  if (!std::filesystem::exists(log_path)) return state;
  for_each_jsonl(log_path, [&](std::size_t line, const Json& event) {
    try {
      apply_event(state, event);
    } catch (const Json::exception& e) {
      throw DataError("corrupt_log", log_path.string() + ":" + std::to_string(line) + ": " + e.what());
    } catch (const std::out_of_range& e) {
      throw DataError("corrupt_log", log_path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return state;
}

ReviewStore::ReviewStore(std::filesystem::path log_path, Clock clock)
    : log_path_(std::move(log_path)),
      clock_(std::move(clock)),
      state_(std::make_shared<const ReviewState>(replay_log(log_path_))) {}

std::shared_ptr<const ReviewState> ReviewStore::snapshot() const { return current(); }

std::shared_ptr<const ReviewState> ReviewStore::current() const {
  std::lock_guard lock(snapshot_mutex_);
  return state_;
}

void ReviewStore::commit(const std::string& type, Json data) {
  auto next = std::make_shared<ReviewState>(*current());
  Json event{{"seq", next->last_seq + 1}, {"type", type}, {"timestamp", clock_()}, {"data", std::move(data)}};
  apply_event(*next, event);
  append_jsonl(log_path_, {event});
  std::lock_guard lock(snapshot_mutex_);
  state_ = std::move(next);
}

std::size_t ReviewStore::register_rubrics(const std::vector<Rubric>& rubrics) {
  std::lock_guard lock(write_mutex_);
  auto s = current();
  Json fresh = Json::array();
  std::set<std::string> batch;
  for (const auto& r : rubrics) {
    auto it = s->rubrics.find(r.id);
    if (it != s->rubrics.end()) {
      if (!(it->second == r)) {
        throw DataError("rubric_conflict", "rubric '" + r.id + "' is already registered with other content");
      }
      continue;
    }
    if (!batch.insert(r.id).second) throw DataError("duplicate_id", "rubric '" + r.id + "' repeats");
    fresh.push_back(r);
  }
  if (fresh.empty()) return 0;
  commit("rubrics_registered", Json{{"rubrics", fresh}});
  return fresh.size();
}

void ReviewStore::add_taxonomy_version(const Taxonomy& t, std::optional<int> expected_latest) {
  std::lock_guard lock(write_mutex_);
  auto s = current();
  int latest = s->taxonomy_versions.empty() ? 0 : s->taxonomy_versions.back().version;
  if (expected_latest && *expected_latest != latest) {
    throw DataError("version_conflict", "expected latest version " + std::to_string(*expected_latest) +
                                            " but it is " + std::to_string(latest));
  }
  if (t.version != latest + 1) {
    throw DataError("version_conflict", "new version must be " + std::to_string(latest + 1));
  }
  std::optional<int> expected_parent;
  if (latest > 0) expected_parent = latest;
  if (t.parent_version != expected_parent) {
    throw DataError("version_conflict", "version " + std::to_string(t.version) +
                                            " must have parent " +
                                            (expected_parent ? std::to_string(*expected_parent) : "none"));
  }
  auto findings = validate_taxonomy(t);
  if (has_errors(findings)) {
    for (const auto& f : findings) {
      if (f.severity == Severity::error) throw DataError("invalid_taxonomy", f.message);
    }
  }
  // Versions always enter as drafts; only finalize_taxonomy activates one.
  Taxonomy draft = t;
  draft.finalized = false;
  commit("taxonomy_version_added", Json{{"taxonomy", draft}});
}

void ReviewStore::finalize_taxonomy(int version, std::optional<int> expected_active) {
  std::lock_guard lock(write_mutex_);
  auto s = current();
  int active = s->active_version.value_or(0);
  if (expected_active && *expected_active != active) {
    throw DataError("version_conflict", "expected active version " + std::to_string(*expected_active) +
                                            " but it is " + std::to_string(active));
  }
  const Taxonomy* t = s->version(version);
  if (!t) throw DataError("unknown_version", "no taxonomy version " + std::to_string(version));
  if (t->finalized) {
    throw DataError("already_finalized", "version " + std::to_string(version) + " is already finalized");
  }
  if (version < active) {
    throw DataError("version_conflict", "version " + std::to_string(version) +
                                            " is older than the active version");
  }
  commit("taxonomy_finalized", Json{{"version", version}});
}

const RoundInfo& ReviewStore::open_round(const RoundPlan& plan, const std::vector<std::string>& annotators) {
  std::lock_guard lock(write_mutex_);
  auto s = current();
  if (annotators.empty()) throw UsageError("invalid_request", "a round needs at least one annotator");
  std::set<std::string> unique(annotators.begin(), annotators.end());
  if (unique.size() != annotators.size()) throw UsageError("invalid_request", "annotators repeat");
  if (s->rounds.contains(plan.round)) {
    throw DataError("duplicate_round", "round " + std::to_string(plan.round) + " is already open");
  }
  auto ids = plan.all_ids();
  if (ids.empty()) throw UsageError("invalid_request", "round plan selects no rubrics");
  for (const auto& id : ids) {
    if (!s->rubrics.contains(id)) throw DataError("unknown_rubric", "rubric '" + id + "' is not registered");
  }
  commit("round_opened", Json{{"plan", plan}, {"annotators", annotators}});
  return current()->rounds.at(plan.round);
}

AnnotationRecord ReviewStore::submit_annotation(AnnotationRecord record) {
  std::lock_guard lock(write_mutex_);
  auto s = current();
  auto round = s->rounds.find(record.round);
  if (round == s->rounds.end()) {
    throw DataError("no_queue_item", "round " + std::to_string(record.round) + " is not open");
  }
  const QueueItem* item = nullptr;
  for (const auto& q : round->second.queue) {
    if (q.rubric_id == record.rubric_id && q.assigned_to == record.annotator_id) item = &q;
  }
  if (!item) {
    throw DataError("no_queue_item", "no queue item for rubric '" + record.rubric_id + "' and annotator '" +
                                         record.annotator_id + "' in round " + std::to_string(record.round));
  }
  if (item->status == QueueStatus::submitted) {
    throw DataError("already_submitted", "rubric '" + record.rubric_id + "' was already submitted by '" +
                                             record.annotator_id + "'");
  }
  const Taxonomy* active = s->active();
  if (!active) throw DataError("no_active_taxonomy", "no finalized taxonomy to label with");
  check_annotation_labels(record, *active);
  record.taxonomy_version = active->version;
  commit("annotation_submitted", Json{{"record", record}});
  return record;
}

bool ReviewStore::raise_flag(const Flag& flag) {
  std::lock_guard lock(write_mutex_);
  auto s = current();
  if (!s->rubrics.contains(flag.rubric_id)) {
    throw DataError("unknown_rubric", "rubric '" + flag.rubric_id + "' is not registered");
  }
  if (flag.source.empty()) throw UsageError("invalid_request", "flag source is required");
  auto it = s->flags.find({flag.rubric_id, flag.failure_mode, flag.source});
  if (it != s->flags.end()) return false;
  commit("flag_raised", Json{{"flag", flag}});
  return true;
}

std::size_t ReviewStore::import_flags(const std::vector<JudgeVerdict>& verdicts) {
  std::map<std::string, std::map<std::string, std::vector<JudgeVerdict>>> grouped;  // provider -> rubric
  std::vector<std::string> provider_order;
  for (const auto& v : verdicts) {
    if (!grouped.contains(v.provider_id)) provider_order.push_back(v.provider_id);
    grouped[v.provider_id][v.rubric_id].push_back(v);
  }
  std::size_t added = 0;
  for (const auto& provider : provider_order) {
    for (const auto& [rubric, runs] : grouped[provider]) {
      auto mv = majority_vote_with_evidence(runs, static_cast<int>(runs.size()));
      for (const auto& label : mv.labels) {
        const auto& evidence = mv.evidence.at(label);
        Flag f{rubric, label, provider + "/mv", evidence.empty() ? "" : evidence.front().justification,
               evidence.empty() ? "" : evidence.front().quote};
        if (raise_flag(f)) ++added;
      }
    }
  }
  return added;
}

FlagVerdict ReviewStore::record_flag_verdict(FlagVerdict v) {
  std::lock_guard lock(write_mutex_);
  auto s = current();
  if (!s->flags.contains({v.rubric_id, v.failure_mode, v.source})) {
    throw DataError("unknown_flag", "no flag '" + v.failure_mode + "' from '" + v.source +
                                        "' on rubric '" + v.rubric_id + "'");
  }
  if (v.reviewer_id.empty()) throw UsageError("invalid_request", "reviewer_id is required");
  v.timestamp = clock_();
  commit("flag_verdict", Json{{"verdict", v}});
  return v;
}

std::map<std::string, std::set<std::string>> gold_from_state(const ReviewState& s,
                                                             const std::set<int>& rounds) {
  std::map<std::string, std::vector<const AnnotationRecord*>> by_rubric;
  for (const auto& a : s.annotations) {
    if (!rounds.empty() && !rounds.contains(a.round)) continue;
    by_rubric[a.rubric_id].push_back(&a);
  }
  std::map<std::string, std::set<std::string>> gold;
  for (const auto& [id, records] : by_rubric) {
    std::map<std::string, std::size_t> support;
    for (const auto* r : records) {
      for (const auto& l : r->labels) ++support[l];
    }
    auto& labels = gold[id];
    for (const auto& [label, n] : support) {
      if (2 * n > records.size()) labels.insert(label);
    }
  }
  return gold;
}

}  // namespace rift
