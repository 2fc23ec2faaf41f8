#include "rift/review_server.hpp"

#include <httplib.h>

#include <iostream>

#include "rift/error.hpp"
#include "rift/prompts.hpp"
#include "rift/refinement.hpp"
#include "rift/reports.hpp"

namespace rift {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

ServerConfig load_server_config(const std::filesystem::path& path,
                                const std::map<std::string, ProviderConfig>& registry) {
  auto doc = read_json_file(path);
  auto base = path.parent_path();
  ServerConfig c;
  try {
    c.host = doc.value("host", c.host);
    c.port = doc.value("port", c.port);
    c.threads = doc.value("threads", c.threads);
    if (doc.contains("log_path")) c.log_path = resolve(base, doc.at("log_path").get<std::string>());
    else c.log_path = base / c.log_path;
    c.tokens = doc.value("tokens", std::map<std::string, std::string>{});
    if (doc.contains("static_dir")) c.static_dir = resolve(base, doc.at("static_dir").get<std::string>());
    if (doc.contains("cache_dir")) c.cache_dir = resolve(base, doc.at("cache_dir").get<std::string>());
    for (const auto& f : doc.value("rubric_files", std::vector<std::string>{})) {
      c.rubric_files.push_back(resolve(base, f));
    }
    for (const auto& f : doc.value("verdict_files", std::vector<std::string>{})) {
      c.verdict_files.push_back(resolve(base, f));
    }
    if (doc.contains("taxonomy_file")) {
      c.taxonomy_file = resolve(base, doc.at("taxonomy_file").get<std::string>());
    }
    if (doc.contains("refinement_provider")) {
      const auto& p = doc.at("refinement_provider");
      if (p.is_string()) {
        auto it = registry.find(p.get<std::string>());
        if (it == registry.end()) {
          throw UsageError("unknown_provider", "unknown refinement provider '" + p.get<std::string>() + "'");
        }
        c.refinement_provider = it->second;
      } else {
        c.refinement_provider = p.get<ProviderConfig>();
      }
    }
  } catch (const Json::exception& e) {
    throw DataError("invalid_config", path.string() + ": " + e.what());
  }
  return c;
}

int http_status_for(const std::string& code) {
  static const std::map<std::string, int> table{
      {"unauthorized", 401},       {"forbidden", 403},
      {"not_found", 404},          {"no_queue_item", 404},
      {"unknown_flag", 404},       {"unknown_rubric", 404},
      {"unknown_round", 404},      {"unknown_version", 404},
      {"unknown_report", 404},     {"already_submitted", 409},
      {"duplicate_round", 409},    {"version_conflict", 409},
      {"already_finalized", 409},  {"rubric_conflict", 409},
      {"invalid_label", 422},      {"invalid_taxonomy", 422},
      {"no_active_taxonomy", 409}, {"provider_exhausted", 502},
      {"not_configured", 501}};
  if (auto it = table.find(code); it != table.end()) return it->second;
  return 400;
}

struct ReviewServer::Impl {
  httplib::Server http;
  int bound_port = -1;
};

namespace {

void send_json(httplib::Response& res, const Json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const std::string& code, const std::string& message) {
  send_json(res, Json{{"code", code}, {"message", message}}, http_status_for(code));
}

Json parse_body(const httplib::Request& req) {
  try {
    auto body = Json::parse(req.body);
    if (!body.is_object()) throw UsageError("invalid_request", "request body must be a JSON object");
    return body;
  } catch (const Json::parse_error& e) {
    throw UsageError("invalid_json", std::string("request body is not JSON: ") + e.what());
  }
}

int int_param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) throw UsageError("invalid_request", std::string("missing parameter '") + name + "'");
  try {
    return std::stoi(req.get_param_value(name));
  } catch (const std::exception&) {
    throw UsageError("invalid_request", std::string("parameter '") + name + "' must be an integer");
  }
}

Json round_summary(const RoundInfo& r) {
  std::size_t submitted = 0;
  for (const auto& q : r.queue) {
    if (q.status == QueueStatus::submitted) ++submitted;
  }
  return Json{{"round", r.round},
              {"split", r.plan.split == Split::test ? "test" : "development"},
              {"rubric_ids", r.plan.all_ids()},
              {"annotators", r.annotators},
              {"items", r.queue.size()},
              {"submitted", submitted},
              {"pending", r.queue.size() - submitted},
              {"opened_at", r.opened_at}};
}

Json flags_for(const ReviewState& s, const std::string& rubric_id) {
  auto current = s.current_verdicts();
  Json out = Json::array();
  for (const auto& [key, flag] : s.flags) {
    if (!rubric_id.empty() && flag.rubric_id != rubric_id) continue;
    Json j = flag;
    Json verdicts = Json::array();
    for (const auto& v : current) {
      if (v.rubric_id == flag.rubric_id && v.failure_mode == flag.failure_mode && v.source == flag.source) {
        verdicts.push_back(v);
      }
    }
    Json history = Json::array();
    const FlagVerdict* latest = nullptr;
    for (const auto& v : s.flag_verdicts) {
      if (v.rubric_id == flag.rubric_id && v.failure_mode == flag.failure_mode && v.source == flag.source) {
        history.push_back(v);
        latest = &v;
      }
    }
    j["verdicts"] = verdicts;
    j["history"] = history;
    j["current_decision"] = latest ? Json(to_string(latest->decision)) : Json(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace

ReviewServer::ReviewServer(ServerConfig config, Clock clock)
    : config_(std::move(config)),
      store_(std::make_unique<ReviewStore>(config_.log_path, std::move(clock))),
      impl_(std::make_unique<Impl>()) {
  auto& http = impl_->http;
  const int threads = std::max(1, config_.threads);
  http.new_task_queue = [threads] { return new httplib::ThreadPool(static_cast<std::size_t>(threads)); };

  // Wraps a handler with authentication and error mapping. The handler gets
  // the caller's annotator id.
  using Handler = std::function<void(const httplib::Request&, httplib::Response&, const std::string&)>;
  auto guarded = [this](Handler h) {
    return [this, h](const httplib::Request& req, httplib::Response& res) {
      try {
        std::string who = "anonymous";
        if (!config_.tokens.empty()) {
          auto auth = req.get_header_value("Authorization");
          const std::string prefix = "Bearer ";
          if (auth.rfind(prefix, 0) != 0) throw UsageError("unauthorized", "missing bearer token");
          auto it = config_.tokens.find(auth.substr(prefix.size()));
          if (it == config_.tokens.end()) throw UsageError("unauthorized", "unknown bearer token");
          who = it->second;
        }
        h(req, res, who);
      } catch (const Error& e) {
        send_error(res, e.code(), e.what());
      } catch (const Json::exception& e) {
        send_error(res, "invalid_request", e.what());
      } catch (const std::exception& e) {
        send_json(res, Json{{"code", "internal"}, {"message", e.what()}}, 500);
      }
    };
  };

  http.Get("/api/meta", guarded([this](const httplib::Request&, httplib::Response& res, const std::string& who) {
    auto s = store_->snapshot();
    Json versions = Json::array();
    for (const auto& t : s->taxonomy_versions) versions.push_back(t.version);
    Json rounds = Json::array();
    for (const auto& [k, _] : s->rounds) rounds.push_back(k);
    send_json(res, Json{{"annotator", who},
                        {"active_taxonomy_version", s->active_version ? Json(*s->active_version) : Json(nullptr)},
                        {"taxonomy_versions", versions},
                        {"rounds", rounds},
                        {"refinement_enabled", config_.refinement_provider.has_value()}});
  }));

  http.Get("/api/rounds", guarded([this](const httplib::Request&, httplib::Response& res, const std::string&) {
    auto s = store_->snapshot();
    Json out = Json::array();
    for (const auto& [_, r] : s->rounds) out.push_back(round_summary(r));
    send_json(res, out);
  }));

  http.Post("/api/rounds", guarded([this](const httplib::Request& req, httplib::Response& res, const std::string&) {
    auto body = parse_body(req);
    RoundPlan plan;
    if (body.contains("plan")) {
      plan = body.at("plan").get<RoundPlan>();
    } else {
      plan.round = body.at("round").get<int>();
      plan.selected["manual"] = body.at("rubric_ids").get<std::vector<std::string>>();
      plan.per_source_count = static_cast<int>(plan.selected["manual"].size());
    }
    auto annotators = body.at("annotators").get<std::vector<std::string>>();
    const auto& info = store_->open_round(plan, annotators);
    send_json(res, round_summary(info), 201);
  }));

  http.Get(R"(/api/rounds/(\d+)/queue)", guarded([this](const httplib::Request& req, httplib::Response& res, const std::string&) {
    int k = std::stoi(req.matches[1].str());
    auto s = store_->snapshot();
    auto it = s->rounds.find(k);
    if (it == s->rounds.end()) throw DataError("unknown_round", "round " + std::to_string(k) + " is not open");
    std::string annotator = req.has_param("annotator") ? req.get_param_value("annotator") : "";
    Json out = Json::array();
    for (const auto& q : it->second.queue) {
      if (annotator.empty() || q.assigned_to == annotator) out.push_back(q);
    }
    send_json(res, out);
  }));

  http.Post(R"(/api/rounds/(\d+)/refine)", guarded([this](const httplib::Request& req, httplib::Response& res, const std::string&) {
    int k = std::stoi(req.matches[1].str());
    if (!config_.refinement_provider) {
      throw UsageError("not_configured", "no refinement provider is configured");
    }
    auto s = store_->snapshot();
    if (!s->rounds.contains(k)) throw DataError("unknown_round", "round " + std::to_string(k) + " is not open");
    const Taxonomy* original = s->active();
    if (!original) throw DataError("no_active_taxonomy", "no finalized taxonomy");
    std::vector<CritiqueItem> items;
    for (const auto& a : s->annotations) {
      if (a.round != k) continue;
      const auto& r = s->rubrics.at(a.rubric_id);
      items.push_back({r.input_context, r.rubric_text, a.rubric_critique, a.taxonomy_critique});
    }
    if (items.empty()) throw DataError("empty_round", "round " + std::to_string(k) + " has no annotations");
    auto prompt = render_refinement_prompt(*original, nullptr, items);
    const Taxonomy previous = s->taxonomy_versions.back();
    auto provider = make_provider(*config_.refinement_provider);
    std::unique_ptr<ResponseCache> cache;
    if (!config_.cache_dir.empty()) cache = std::make_unique<ResponseCache>(config_.cache_dir);
    auto outcome = cached_completion(*provider, cache.get(), prompt, 0, [&](const std::string& raw) {
      (void)parse_refined_taxonomy(raw, previous);
    });
    auto draft = parse_refined_taxonomy(outcome.raw, previous);
    store_->add_taxonomy_version(draft.taxonomy, previous.version);
    send_json(res,
              Json{{"taxonomy", draft.taxonomy},
                   {"unchanged", draft.unchanged},
                   {"diff", draft.diff},
                   {"findings", draft.findings}},
              201);
  }));

  http.Get(R"(/api/rubrics/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res, const std::string&) {
    auto id = req.matches[1].str();
    auto s = store_->snapshot();
    auto it = s->rubrics.find(id);
    if (it == s->rubrics.end()) throw DataError("unknown_rubric", "rubric '" + id + "' is not registered");
    const Taxonomy* active = s->active();
    send_json(res, Json{{"rubric", it->second},
                        {"taxonomy", active ? Json(*active) : Json(nullptr)},
                        {"flags", flags_for(*s, id)}});
  }));

  http.Post("/api/annotations", guarded([this](const httplib::Request& req, httplib::Response& res, const std::string& who) {
    auto body = parse_body(req);
    if (!body.contains("annotator_id")) body["annotator_id"] = who;
    if (!config_.tokens.empty() && body.at("annotator_id").get<std::string>() != who) {
      throw UsageError("forbidden", "annotators may only submit their own annotations");
    }
    if (!body.contains("taxonomy_version")) body["taxonomy_version"] = 0;
    auto record = store_->submit_annotation(body.get<AnnotationRecord>());
    send_json(res, Json{{"status", "submitted"}, {"record", record}}, 201);
  }));

  http.Get("/api/annotations", guarded([this](const httplib::Request& req, httplib::Response& res, const std::string&) {
    auto s = store_->snapshot();
    Json out = Json::array();
    for (const auto& a : s->annotations) {
      if (req.has_param("round") && a.round != int_param(req, "round")) continue;
      if (req.has_param("rubric") && a.rubric_id != req.get_param_value("rubric")) continue;
      if (req.has_param("annotator") && a.annotator_id != req.get_param_value("annotator")) continue;
      out.push_back(a);
    }
    send_json(res, out);
  }));

  http.Get("/api/flags", guarded([this](const httplib::Request& req, httplib::Response& res, const std::string&) {
    auto s = store_->snapshot();
    send_json(res, flags_for(*s, req.has_param("rubric") ? req.get_param_value("rubric") : ""));
  }));

  http.Post("/api/flags", guarded([this](const httplib::Request& req, httplib::Response& res, const std::string&) {
    auto flag = parse_body(req).get<Flag>();
    auto s = store_->snapshot();
    const Taxonomy* active = s->active();
    if (active && !active->has_label(flag.failure_mode)) {
      throw DataError("invalid_label", "label '" + flag.failure_mode + "' is not in the active taxonomy");
    }
    bool created = store_->raise_flag(flag);
    send_json(res, Json{{"created", created}, {"flag", flag}}, created ? 201 : 200);
  }));

  http.Post("/api/flags/verdict", guarded([this](const httplib::Request& req, httplib::Response& res, const std::string& who) {
    auto body = parse_body(req);
    if (!body.contains("reviewer_id")) body["reviewer_id"] = who;
    if (!config_.tokens.empty() && body.at("reviewer_id").get<std::string>() != who) {
      throw UsageError("forbidden", "reviewers may only record their own verdicts");
    }
    auto v = store_->record_flag_verdict(body.get<FlagVerdict>());
    send_json(res, Json{{"status", "recorded"}, {"verdict", v}}, 201);
  }));

  http.Get("/api/taxonomy/versions", guarded([this](const httplib::Request&, httplib::Response& res, const std::string&) {
    auto s = store_->snapshot();
    send_json(res, Json{{"active_version", s->active_version ? Json(*s->active_version) : Json(nullptr)},
                        {"versions", s->taxonomy_versions}});
  }));

  http.Post("/api/taxonomy/versions", guarded([this](const httplib::Request& req, httplib::Response& res, const std::string&) {
    auto body = parse_body(req);
    std::optional<int> expected;
    if (body.contains("expected_latest")) expected = body.at("expected_latest").get<int>();
    auto t = body.at("taxonomy").get<Taxonomy>();
    store_->add_taxonomy_version(t, expected);
    send_json(res, Json{{"status", "added"}, {"version", t.version}}, 201);
  }));

  http.Post("/api/taxonomy/finalize", guarded([this](const httplib::Request& req, httplib::Response& res, const std::string&) {
    auto body = parse_body(req);
    std::optional<int> expected;
    if (body.contains("expected_active")) expected = body.at("expected_active").get<int>();
    int v = body.at("version").get<int>();
    store_->finalize_taxonomy(v, expected);
    send_json(res, Json{{"status", "finalized"}, {"active_version", v}});
  }));

  http.Get("/api/taxonomy/diff", guarded([this](const httplib::Request& req, httplib::Response& res, const std::string&) {
    int from = int_param(req, "from"), to = int_param(req, "to");
    auto s = store_->snapshot();
    const Taxonomy* a = s->version(from);
    const Taxonomy* b = s->version(to);
    if (!a) throw DataError("unknown_version", "no taxonomy version " + std::to_string(from));
    if (!b) throw DataError("unknown_version", "no taxonomy version " + std::to_string(to));
    auto diff = diff_taxonomies(*a, *b);
    send_json(res, Json{{"from", from},
                        {"to", to},
                        {"diff", diff},
                        {"empty", diff.empty()},
                        {"changes_summary", b->changes_summary}});
  }));

  http.Get(R"(/api/reports/([a-z_]+))", guarded([this](const httplib::Request& req, httplib::Response& res, const std::string&) {
    auto kind = req.matches[1].str();
    auto format = parse_report_format(req.has_param("format") ? req.get_param_value("format") : "json");
    auto s = store_->snapshot();
    std::set<int> rounds;
    if (req.has_param("round")) rounds.insert(int_param(req, "round"));
    Report report;
    if (kind == "annotation_agreement") {
      std::vector<AnnotationRecord> records;
      for (const auto& a : s->annotations) {
        if (rounds.empty() || rounds.contains(a.round)) records.push_back(a);
      }
      const Taxonomy* active = s->active();
      if (!active) throw DataError("no_active_taxonomy", "no finalized taxonomy");
      report = report_annotation_agreement(records, *active);
    } else if (kind == "prevalence") {
      const Taxonomy* active = s->active();
      if (!active) throw DataError("no_active_taxonomy", "no finalized taxonomy");
      std::vector<Rubric> rubrics;
      for (const auto& [_, r] : s->rubrics) rubrics.push_back(r);
      report = report_prevalence(gold_from_state(*s, rounds), rubrics, *active);
    } else if (kind == "confirmed_flags") {
      report.kind = kind;
      report.table.columns = {"rubric_id", "failure_mode", "source", "reviewer_id", "decision"};
      for (const auto& v : s->current_verdicts()) {
        if (v.decision != FlagDecision::confirmed) continue;
        report.table.rows.push_back({ReportCell::str(v.rubric_id), ReportCell::str(v.failure_mode),
                                     ReportCell::str(v.source), ReportCell::str(v.reviewer_id),
                                     ReportCell::str(to_string(v.decision))});
      }
    } else {
      throw DataError("unknown_report", "unknown report kind '" + kind + "'");
    }
    const char* mime = format == ReportFormat::json ? "application/json"
                       : format == ReportFormat::csv ? "text/csv; charset=utf-8"
                                                     : "text/plain; charset=utf-8";
    res.set_content(render_report(report, format), mime);
  }));

  if (!config_.static_dir.empty() && std::filesystem::is_directory(config_.static_dir)) {
    http.set_mount_point("/", config_.static_dir.string());
  }
}

ReviewServer::~ReviewServer() { stop(); }

void ReviewServer::bootstrap() {
  for (const auto& f : config_.rubric_files) store_->register_rubrics(load_rubrics_jsonl(f));
  if (store_->snapshot()->taxonomy_versions.empty()) {
    Taxonomy t = config_.taxonomy_file ? load_taxonomy_file(*config_.taxonomy_file) : load_default_taxonomy();
    bool finalize = t.finalized;
    t.version = 1;
    t.parent_version.reset();
    t.finalized = false;
    store_->add_taxonomy_version(t, 0);
    if (finalize) store_->finalize_taxonomy(1, 0);
  }
  for (const auto& f : config_.verdict_files) store_->import_flags(load_verdicts(f));
}

int ReviewServer::bind() {
  if (config_.port == 0) {
    impl_->bound_port = impl_->http.bind_to_any_port(config_.host);
  } else if (impl_->http.bind_to_port(config_.host, config_.port)) {
    impl_->bound_port = config_.port;
  }
  if (impl_->bound_port <= 0) {
    throw UsageError("bind_failed", "cannot bind " + config_.host + ":" + std::to_string(config_.port));
  }
  return impl_->bound_port;
}

void ReviewServer::serve() { impl_->http.listen_after_bind(); }

void ReviewServer::stop() {
  if (impl_ && impl_->http.is_running()) impl_->http.stop();
}

}  // namespace rift
