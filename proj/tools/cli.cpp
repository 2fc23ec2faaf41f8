#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>

#include "rift/dataset.hpp"
#include "rift/error.hpp"
#include "rift/judge.hpp"
#include "rift/refinement.hpp"
#include "rift/reports.hpp"
#include "rift/review_server.hpp"
#include "rift/signals.hpp"

namespace rift {

namespace {

namespace fs = std::filesystem;

struct Globals {
  std::string config;
  std::string cache_dir;
  std::string providers;
  std::optional<std::uint64_t> seed;
  bool strict = false;
};

std::unique_ptr<ResponseCache> open_cache(const Globals& g) {
  if (g.cache_dir.empty()) return nullptr;
  return std::make_unique<ResponseCache>(g.cache_dir);
}

/// A provider argument is either an id in the --providers registry or a path
/// to a single ProviderConfig JSON file.
ProviderConfig resolve_provider(const Globals& g, const std::string& ref) {
  if (!g.providers.empty()) {
    auto registry = load_provider_registry(g.providers);
    if (auto it = registry.find(ref); it != registry.end()) return it->second;
  }
  if (fs::exists(ref)) {
    auto c = read_json_file(ref).get<ProviderConfig>();
    validate_provider_config(c);
    return c;
  }
  throw UsageError("unknown_provider", "provider '" + ref + "' is neither in the registry nor a file");
}

std::map<std::string, ProviderConfig> registry_or_empty(const Globals& g) {
  if (g.providers.empty()) return {};
  return load_provider_registry(g.providers);
}

Taxonomy taxonomy_or_default(const std::string& path) {
  return path.empty() ? load_default_taxonomy() : load_taxonomy_file(path);
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

std::vector<Json> to_rows(const auto& items) {
  std::vector<Json> rows;
  for (const auto& i : items) rows.push_back(Json(i));
  return rows;
}

/// Restricts `pool` to the ids of round `round` in a plans file.
std::vector<Rubric> select_rubrics(const std::vector<Rubric>& pool, const std::string& plans_path,
                                   std::optional<int> round) {
  if (plans_path.empty()) return pool;
  if (!round) throw UsageError("missing_option", "--plans requires --round (0 selects the test split)");
  auto plans = read_json_file(plans_path).get<std::vector<RoundPlan>>();
  for (const auto& p : plans) {
    if (p.round != *round) continue;
    auto ids = p.all_ids();
    std::set<std::string> wanted(ids.begin(), ids.end());
    std::vector<Rubric> out;
    for (const auto& r : pool) {
      if (wanted.contains(r.id)) out.push_back(r);
    }
    if (out.size() != wanted.size()) {
      throw DataError("missing_rubric", "plan for round " + std::to_string(*round) +
                                            " references rubrics missing from the dataset");
    }
    return out;
  }
  throw DataError("unknown_round", "no plan for round " + std::to_string(*round));
}

std::vector<Rubric> load_dataset(const std::string& path) {
  if (path.empty()) throw UsageError("missing_option", "--dataset is required");
  return load_rubrics_jsonl(path);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rubric failure-mode annotation, judging and agreement analysis", "rift"};
  app.require_subcommand(1);
  Globals g;
  std::uint64_t seed_value = 0;
  app.add_option("--config", g.config, "Configuration file for the command");
  app.add_option("--cache-dir", g.cache_dir, "Response cache directory");
  app.add_option("--providers", g.providers, "Provider registry JSON");
  auto* seed_opt = app.add_option("--seed", seed_value, "Override configured seeds");
  app.add_flag("--strict", g.strict, "Reject unknown labels instead of dropping them");

  std::function<void()> action;

  // ingest ------------------------------------------------------------------
  auto* ingest = app.add_subcommand("ingest", "Parse configured sources into one pool file");
  std::string ingest_out;
  bool lenient = false;
  ingest->add_option("--out", ingest_out, "Pool JSONL output")->required();
  ingest->add_flag("--lenient", lenient, "Skip bad lines instead of failing");
  ingest->callback([&] {
    action = [&] {
      if (g.config.empty()) throw UsageError("missing_option", "ingest needs --config");
      auto cfg = load_dataset_config(g.config);
      std::vector<LineError> errors;
      auto pool = load_pool(cfg, lenient ? ParseMode::lenient : ParseMode::fail_fast, &errors);
      write_jsonl(ingest_out, to_rows(pool));
      for (const auto& e : errors) {
        err << "warning: " << e.source << ":" << e.line << ": " << e.message << "\n";
      }
      std::map<std::string, int> per_source;
      for (const auto& r : pool) ++per_source[r.source];
      out << "ingested " << pool.size() << " rubrics";
      for (const auto& [s, n] : per_source) out << " " << s << "=" << n;
      out << "\n";
    };
  });

  // sample ------------------------------------------------------------------
  auto* sample = app.add_subcommand("sample", "Plan development rounds and the test split");
  std::string sample_dataset, sample_out, sample_session;
  sample->add_option("--dataset", sample_dataset, "Pool JSONL (default: configured sources)");
  sample->add_option("--out", sample_out, "Plans JSON output")->required();
  sample->add_option("--session", sample_session, "Session file to create or update");
  sample->callback([&] {
    action = [&] {
      if (g.config.empty()) throw UsageError("missing_option", "sample needs --config");
      auto cfg = load_dataset_config(g.config);
      if (g.seed) {
        for (auto& r : cfg.rounds) r.seed = *g.seed + static_cast<std::uint64_t>(r.round);
        cfg.test.seed = *g.seed + 1000;
      }
      auto pool = sample_dataset.empty() ? load_pool(cfg) : load_rubrics_jsonl(sample_dataset);
      auto plans = plan_all(cfg, pool);
      write_json_file(sample_out, Json(plans));
      if (!sample_session.empty()) {
        SessionState s;
        if (fs::exists(sample_session)) s = load_session(sample_session);
        if (s.taxonomy_versions.empty()) s.taxonomy_versions.push_back(load_default_taxonomy());
        for (const auto& p : plans) {
          bool known = std::any_of(s.plans.begin(), s.plans.end(), [&](const RoundPlan& q) {
            return q.round == p.round && q.split == p.split;
          });
          if (known) continue;
          s.plans.push_back(p);
          if (p.split == Split::development) {
            for (const auto& id : p.all_ids()) s.consumed_rubric_ids.insert(id);
          }
        }
        save_session(sample_session, s);
      }
      for (const auto& p : plans) {
        out << (p.split == Split::test ? "test" : "round " + std::to_string(p.round)) << ": "
            << p.all_ids().size() << " rubrics\n";
      }
    };
  });

  // judge -------------------------------------------------------------------
  auto* judge = app.add_subcommand("judge", "Run the LLM judge panel");
  std::string judge_dataset, judge_provider, judge_out, judge_plans, judge_taxonomy, judge_probe,
      judge_mv_out;
  std::optional<int> judge_round;
  int judge_runs = kDefaultRuns;
  judge->add_option("--dataset", judge_dataset, "Pool JSONL")->required();
  judge->add_option("--provider", judge_provider, "Provider id or config file")->required();
  judge->add_option("--out", judge_out, "Verdict store (JSONL, appended)")->required();
  judge->add_option("--runs", judge_runs, "Independent runs per rubric");
  judge->add_option("--plans", judge_plans, "Plans JSON restricting the rubrics");
  judge->add_option("--round", judge_round, "Round to select from --plans (0 = test)");
  judge->add_option("--taxonomy", judge_taxonomy, "Taxonomy JSON (default: built-in)");
  judge->add_option("--probe", judge_probe, "Adversarial single-mode probe for this label");
  judge->add_option("--mv-out", judge_mv_out, "Majority-vote labels JSONL");
  judge->callback([&] {
    action = [&] {
      auto rubrics = select_rubrics(load_dataset(judge_dataset), judge_plans, judge_round);
      auto taxonomy = taxonomy_or_default(judge_taxonomy);
      auto provider = make_provider(resolve_provider(g, judge_provider));
      auto cache = open_cache(g);
      JudgeOptions opts;
      opts.strict = g.strict;
      if (!judge_probe.empty()) opts.probe_mode = judge_probe;
      opts.cache = cache.get();
      opts.store = judge_out;
      auto verdicts = run_judge_panel(rubrics, taxonomy, *provider, judge_runs, opts);
      if (!judge_mv_out.empty()) {
        std::vector<Json> rows;
        std::map<std::string, std::vector<JudgeVerdict>> by_rubric;
        for (const auto& v : verdicts) by_rubric[v.rubric_id].push_back(v);
        for (const auto& r : rubrics) {
          auto mv = majority_vote_with_evidence(by_rubric[r.id], judge_runs);
          rows.push_back({{"rubric_id", r.id},
                          {"provider_id", provider->config().provider_id},
                          {"labels", mv.labels},
                          {"evidence", mv.evidence}});
        }
        write_jsonl(judge_mv_out, rows);
      }
      out << "judged " << rubrics.size() << " rubrics x " << judge_runs << " runs with "
          << provider->config().provider_id << "\n";
    };
  });

  // signals -----------------------------------------------------------------
  auto* signals = app.add_subcommand("signals", "Compute IRR, alignment and reward-variance signals");
  std::string sig_dataset, sig_panel, sig_list = "irr,alignment,reward_variance", sig_judge, sig_out,
                                      sig_plans;
  std::optional<int> sig_round;
  signals->add_option("--dataset", sig_dataset, "Pool JSONL")->required();
  signals->add_option("--panel", sig_panel, "Panel config JSON")->required();
  signals->add_option("--signals", sig_list, "Comma-separated signal names");
  signals->add_option("--variance-judge", sig_judge, "Override the variance judge");
  signals->add_option("--out-dir", sig_out, "Store directory")->required();
  signals->add_option("--plans", sig_plans, "Plans JSON restricting the rubrics");
  signals->add_option("--round", sig_round, "Round to select from --plans (0 = test)");
  signals->callback([&] {
    action = [&] {
      auto rubrics = select_rubrics(load_dataset(sig_dataset), sig_plans, sig_round);
      auto panel = load_panel_config(sig_panel, registry_or_empty(g));
      if (!sig_judge.empty()) panel.variance_judge = resolve_provider(g, sig_judge);
      if (g.seed) panel.seed = *g.seed;
      auto cache = open_cache(g);
      SignalRunOptions opts;
      opts.signals.clear();
      for (const auto& s : split_csv(sig_list)) opts.signals.push_back(parse_signal_kind(s));
      opts.cache = cache.get();
      opts.out_dir = sig_out;
      auto result = run_signal_panel(rubrics, panel, opts);
      out << "signals: " << result.scores.size() << " scores, " << result.preferences.size()
          << " preference labels, " << result.judge_scores.size() << " judge scores\n";
    };
  });

  // calibrate ---------------------------------------------------------------
  auto* calibrate = app.add_subcommand("calibrate", "Best-threshold F1 and AUC of each signal");
  std::string cal_gold, cal_scores, cal_taxonomy, cal_out, cal_format = "csv";
  calibrate->add_option("--gold", cal_gold, "Annotation records JSONL")->required();
  calibrate->add_option("--scores", cal_scores, "Signal scores JSONL")->required();
  calibrate->add_option("--taxonomy", cal_taxonomy, "Taxonomy JSON (default: built-in)");
  calibrate->add_option("--out", cal_out, "Output path (default: stdout)");
  calibrate->add_option("--format", cal_format, "csv, json or text");
  calibrate->callback([&] {
    action = [&] {
      auto taxonomy = taxonomy_or_default(cal_taxonomy);
      auto gold = consolidate_gold_labels(load_annotations(cal_gold), taxonomy);
      auto report = report_calibration(calibrate_signals(gold, taxonomy, load_signal_scores(cal_scores)));
      report.metadata["inputs"] = input_hashes({cal_gold, cal_scores});
      write_output(cal_out, render_report(report, parse_report_format(cal_format)), out);
    };
  });

  // report ------------------------------------------------------------------
  auto* report_cmd = app.add_subcommand("report", "Render a report from persisted stores");
  std::string rep_kind, rep_gold, rep_scores, rep_dataset, rep_taxonomy, rep_out, rep_format = "text",
                                                                                 rep_misalignment,
                                                                                 rep_counts_from = "gold";
  std::vector<std::string> rep_verdicts;
  int rep_permutations = 10000;
  report_cmd
      ->add_option("--kind", rep_kind,
                   "evaluator_alignment, model_pairwise, prevalence, correlation, signal_summary, "
                   "annotation_agreement")
      ->required();
  report_cmd->add_option("--gold", rep_gold, "Annotation records JSONL");
  report_cmd->add_option("--verdicts", rep_verdicts, "Verdict stores");
  report_cmd->add_option("--scores", rep_scores, "Signal scores JSONL");
  report_cmd->add_option("--dataset", rep_dataset, "Pool JSONL (prevalence)");
  report_cmd->add_option("--misalignment", rep_misalignment, "Misalignment indicators JSONL");
  report_cmd->add_option("--counts-from", rep_counts_from, "gold or a provider id (MV labels)");
  report_cmd->add_option("--permutations", rep_permutations, "Permutation resamples");
  report_cmd->add_option("--taxonomy", rep_taxonomy, "Taxonomy JSON (default: built-in)");
  report_cmd->add_option("--out", rep_out, "Output path (default: stdout)");
  report_cmd->add_option("--format", rep_format, "csv, json or text");
  report_cmd->callback([&] {
    action = [&] {
      auto taxonomy = taxonomy_or_default(rep_taxonomy);
      auto format = parse_report_format(rep_format);
      std::vector<fs::path> inputs;
      auto need = [&](const std::string& value, const char* flag) {
        if (value.empty()) throw UsageError("missing_option", rep_kind + " needs " + flag);
        inputs.push_back(value);
        return value;
      };
      std::vector<JudgeVerdict> verdicts;
      for (const auto& v : rep_verdicts) {
        inputs.push_back(v);
        auto part = load_verdicts(v);
        verdicts.insert(verdicts.end(), part.begin(), part.end());
      }
      Report report;
      if (rep_kind == "evaluator_alignment") {
        auto gold = consolidate_gold_labels(load_annotations(need(rep_gold, "--gold")), taxonomy);
        std::vector<SignalScore> scores;
        if (!rep_scores.empty()) {
          inputs.push_back(rep_scores);
          scores = load_signal_scores(rep_scores);
        }
        report = report_evaluator_alignment(gold, taxonomy, evaluators_from_verdicts(verdicts), scores);
      } else if (rep_kind == "model_pairwise") {
        std::vector<std::pair<std::string, LabelMap>> mv;
        for (auto& e : evaluators_from_verdicts(verdicts)) mv.emplace_back(e.name, *e.majority_vote);
        report = report_model_pairwise(mv, taxonomy);
      } else if (rep_kind == "prevalence") {
        auto gold = consolidate_gold_labels(load_annotations(need(rep_gold, "--gold")), taxonomy);
        report = report_prevalence(gold, load_rubrics_jsonl(need(rep_dataset, "--dataset")), taxonomy);
      } else if (rep_kind == "correlation") {
        auto misaligned = load_misalignment(need(rep_misalignment, "--misalignment"));
        LabelMap labels;
        if (rep_counts_from == "gold") {
          labels = consolidate_gold_labels(load_annotations(need(rep_gold, "--gold")), taxonomy);
        } else {
          bool found = false;
          for (auto& e : evaluators_from_verdicts(verdicts)) {
            if (e.name == rep_counts_from) {
              labels = *e.majority_vote;
              found = true;
            }
          }
          if (!found) throw UsageError("unknown_provider", "no verdicts for '" + rep_counts_from + "'");
        }
        std::map<std::string, double> counts;
        for (const auto& [id, l] : labels) counts[id] = static_cast<double>(l.size());
        report = report_correlation(counts, misaligned, rep_permutations, g.seed.value_or(0));
      } else if (rep_kind == "signal_summary") {
        report = report_signal_summary(load_signal_scores(need(rep_scores, "--scores")));
      } else if (rep_kind == "annotation_agreement") {
        report = report_annotation_agreement(load_annotations(need(rep_gold, "--gold")), taxonomy);
      } else {
        throw UsageError("unknown_report", "unknown report kind '" + rep_kind + "'");
      }
      report.metadata["inputs"] = input_hashes(inputs);
      write_output(rep_out, render_report(report, format), out);
    };
  });

  // refine ------------------------------------------------------------------
  auto* refine = app.add_subcommand("refine", "Refine the taxonomy from a round's critiques");
  std::string ref_session, ref_provider, ref_dataset, ref_annotations;
  int ref_round = 1;
  std::size_t ref_batch = 0;
  refine->add_option("--session", ref_session, "Session JSON")->required();
  refine->add_option("--round", ref_round, "Round number")->required();
  refine->add_option("--provider", ref_provider, "Provider id or config file")->required();
  refine->add_option("--dataset", ref_dataset, "Pool JSONL (rubric texts)")->required();
  refine->add_option("--annotations", ref_annotations, "Annotation records to add to the session");
  refine->add_option("--batch-size", ref_batch, "Critiques per batch (0 = whole round)");
  refine->callback([&] {
    action = [&] {
      auto session = load_session(ref_session);
      if (!ref_annotations.empty()) {
        for (auto& a : load_annotations(ref_annotations)) {
          bool dup = std::any_of(session.annotations.begin(), session.annotations.end(), [&](const auto& b) {
            return b.rubric_id == a.rubric_id && b.annotator_id == a.annotator_id && b.round == a.round;
          });
          if (!dup) session.annotations.push_back(a);
          if (std::find(session.experts.begin(), session.experts.end(), a.annotator_id) ==
              session.experts.end()) {
            session.experts.push_back(a.annotator_id);
          }
        }
      }
      std::map<std::string, Rubric> rubrics;
      for (auto& r : load_rubrics_jsonl(ref_dataset)) rubrics.emplace(r.id, r);
      auto provider = make_provider(resolve_provider(g, ref_provider));
      auto cache = open_cache(g);
      auto drafts = refine_round(session, rubrics, ref_round, *provider, {ref_batch, cache.get()});
      session.rounds_completed = std::max(session.rounds_completed, ref_round);
      save_session(ref_session, session);
      for (const auto& d : drafts) {
        out << "draft v" << d.taxonomy.version << (d.unchanged ? " (unchanged)" : "") << ": "
            << d.taxonomy.failure_modes.size() << " modes, " << d.findings.size() << " findings\n";
        for (const auto& f : d.findings) {
          out << "  " << (f.severity == Severity::error ? "error" : "warning") << " [" << f.code
              << "] " << f.message << "\n";
        }
      }
    };
  });

  // bootstrap ---------------------------------------------------------------
  auto* boot = app.add_subcommand("bootstrap", "Propose an initial taxonomy from critiques");
  std::string boot_critiques, boot_provider, boot_out;
  boot->add_option("--critiques", boot_critiques, "Critiques JSONL")->required();
  boot->add_option("--provider", boot_provider, "Provider id or config file")->required();
  boot->add_option("--out", boot_out, "Draft taxonomy JSON (default: stdout)");
  boot->callback([&] {
    action = [&] {
      auto provider = make_provider(resolve_provider(g, boot_provider));
      auto cache = open_cache(g);
      auto draft = bootstrap_taxonomy(load_critiques(boot_critiques), *provider, cache.get());
      write_output(boot_out, Json(draft.taxonomy).dump(2) + "\n", out);
      for (const auto& f : draft.findings) err << "finding [" << f.code << "] " << f.message << "\n";
    };
  });

  // saturation --------------------------------------------------------------
  auto* sat = app.add_subcommand("saturation", "Report convergence status for the latest round");
  std::string sat_session, sat_experts;
  std::vector<std::string> sat_votes;
  sat->add_option("--session", sat_session, "Session JSON")->required();
  sat->add_option("--experts", sat_experts, "Comma-separated registered experts (replaces the list)");
  sat->add_option("--vote", sat_votes, "EXPERT=yes|no for the latest round");
  sat->callback([&] {
    action = [&] {
      auto session = load_session(sat_session);
      bool changed = false;
      if (!sat_experts.empty()) {
        session.experts = split_csv(sat_experts);
        changed = true;
      }
      for (const auto& v : sat_votes) {
        auto eq = v.find('=');
        if (eq == std::string::npos) throw UsageError("invalid_vote", "expected EXPERT=yes|no, got '" + v + "'");
        auto value = to_lower(v.substr(eq + 1));
        if (value != "yes" && value != "no") throw UsageError("invalid_vote", "vote must be yes or no");
        session.saturation_votes[session.rounds_completed][v.substr(0, eq)] = value == "yes";
        changed = true;
      }
      if (changed) save_session(sat_session, session);
      out << Json(saturation_status(session)).dump(2) << "\n";
    };
  });

  // serve -------------------------------------------------------------------
  auto* serve = app.add_subcommand("serve", "Run the review service");
  std::optional<int> serve_port;
  serve->add_option("--port", serve_port, "Listen port");
  serve->callback([&] {
    action = [&] {
      if (g.config.empty()) throw UsageError("missing_option", "serve needs --config");
      auto cfg = load_server_config(g.config, registry_or_empty(g));
      if (serve_port) cfg.port = *serve_port;
      ReviewServer server(cfg);
      server.bootstrap();
      int port = server.bind();
      out << "listening on http://" << cfg.host << ":" << port << "\n" << std::flush;
      server.serve();
    };
  });

  // taxonomy ----------------------------------------------------------------
  auto* tax = app.add_subcommand("taxonomy", "Taxonomy utilities");
  tax->require_subcommand(1);
  auto* tax_validate = tax->add_subcommand("validate", "Validate a taxonomy file");
  std::string tv_file;
  tax_validate->add_option("file", tv_file, "Taxonomy JSON")->required();
  tax_validate->callback([&] {
    action = [&] {
      auto findings = validate_taxonomy(load_taxonomy_file(tv_file));
      for (const auto& f : findings) {
        out << (f.severity == Severity::error ? "error" : "warning") << " [" << f.code << "] " << f.message
            << "\n";
      }
      if (has_errors(findings)) throw DataError("invalid_taxonomy", "taxonomy has validation errors");
      if (findings.empty()) out << "ok\n";
    };
  });
  auto* tax_diff = tax->add_subcommand("diff", "Diff two taxonomy files");
  std::string td_a, td_b;
  tax_diff->add_option("old", td_a)->required();
  tax_diff->add_option("new", td_b)->required();
  tax_diff->callback([&] {
    action = [&] {
      out << Json(diff_taxonomies(load_taxonomy_file(td_a), load_taxonomy_file(td_b))).dump(2) << "\n";
    };
  });
  auto* tax_default = tax->add_subcommand("default", "Print the built-in taxonomy");
  std::string tdef_out;
  tax_default->add_option("--out", tdef_out, "Output path (default: stdout)");
  tax_default->callback([&] {
    action = [&] { write_output(tdef_out, Json(load_default_taxonomy()).dump(2) + "\n", out); };
  });
  auto* tax_finalize = tax->add_subcommand("finalize", "Finalize a draft version in a session");
  std::string tf_session;
  int tf_version = 0;
  tax_finalize->add_option("--session", tf_session)->required();
  tax_finalize->add_option("--version", tf_version)->required();
  tax_finalize->callback([&] {
    action = [&] {
      auto session = load_session(tf_session);
      Taxonomy* target = nullptr;
      for (auto& t : session.taxonomy_versions) {
        if (t.version == tf_version) target = &t;
      }
      if (!target) throw DataError("unknown_version", "no version " + std::to_string(tf_version));
      auto findings = validate_taxonomy(*target);
      if (has_errors(findings)) throw DataError("invalid_taxonomy", "draft has validation errors");
      target->finalized = true;
      save_session(tf_session, session);
      out << "finalized v" << tf_version << "\n";
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }
  if (*seed_opt) g.seed = seed_value;

  try {
    if (action) action();
    return 0;
  } catch (const Error& e) {
    err << "error [" << e.code() << "]: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const Json::exception& e) {
    err << "error [invalid_json]: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error [io]: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace rift
