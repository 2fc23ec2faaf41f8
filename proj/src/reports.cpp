#include "rift/reports.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rift/error.hpp"

namespace rift {

ReportFormat parse_report_format(std::string_view s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  if (s == "text") return ReportFormat::text;
  throw UsageError("unknown_format", "unknown report format '" + std::string(s) + "'");
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::string infinite_text(double v) { return v > 0 ? "inf" : "-inf"; }

std::string cell_csv(const ReportCell& c) {
  if (!c.text.empty() || !c.value) return c.text;
  if (std::isinf(*c.value)) return infinite_text(*c.value);
  if (c.format == CellFormat::integer) return std::to_string(std::llround(*c.value));
  return Json(*c.value).dump();
}

Json cell_json(const ReportCell& c) {
  if (!c.text.empty()) return c.text;
  if (!c.value) return nullptr;
  if (std::isinf(*c.value)) return infinite_text(*c.value);
  if (c.format == CellFormat::integer) return std::llround(*c.value);
  return *c.value;
}

std::string cell_text(const ReportCell& c) {
  if (!c.text.empty()) return c.text;
  if (!c.value) return c.format == CellFormat::text ? "" : "n/a";
  double v = *c.value;
  if (std::isinf(v)) return infinite_text(v);
  switch (c.format) {
    case CellFormat::percent1:
      return format_fixed(v * 100.0, 1) + "%";
    case CellFormat::ratio3:
      return format_fixed(v, 3);
    case CellFormat::mean2:
      return format_fixed(v, 2);
    case CellFormat::integer:
      return std::to_string(static_cast<long long>(std::llround(v)));
    case CellFormat::real6:
    case CellFormat::text:
      return format_fixed(v, 6);
  }
  return format_fixed(v, 6);
}

}  // namespace

std::string render_report(const Report& report, ReportFormat format) {
  const auto& t = report.table;
  switch (format) {
    case ReportFormat::csv: {
      std::string out;
      auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
          if (i) out += ',';
          out += csv_escape(fields[i]);
        }
        out += "\r\n";
      };
      line(t.columns);
      for (const auto& row : t.rows) {
        std::vector<std::string> fields;
        for (const auto& c : row) fields.push_back(cell_csv(c));
        line(fields);
      }
      return out;
    }
    case ReportFormat::json: {
      Json rows = Json::array();
      for (const auto& row : t.rows) {
        Json r = Json::object();
        for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) {
          r[t.columns[i]] = cell_json(row[i]);
        }
        rows.push_back(std::move(r));
      }
      Json doc{{"kind", report.kind},
               {"metadata", report.metadata},
               {"columns", t.columns},
               {"rows", rows}};
      if (!report.extra.empty()) doc["results"] = report.extra;
      return doc.dump(2) + "\n";
    }
    case ReportFormat::text: {
      std::vector<std::vector<std::string>> grid;
      grid.push_back(t.columns);
      for (const auto& row : t.rows) {
        std::vector<std::string> r;
        for (const auto& c : row) r.push_back(cell_text(c));
        grid.push_back(std::move(r));
      }
      std::vector<std::size_t> width(t.columns.size(), 0);
      for (const auto& r : grid) {
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) {
          width[i] = std::max(width[i], utf8_length(r[i]));
        }
      }
      std::string out;
      for (std::size_t k = 0; k < grid.size(); ++k) {
        std::string line;
        for (std::size_t i = 0; i < grid[k].size() && i < width.size(); ++i) {
          if (i) line += "  ";
          line += grid[k][i];
          if (i + 1 < grid[k].size()) line += std::string(width[i] - utf8_length(grid[k][i]), ' ');
        }
        out += line + "\n";
        if (k == 0) {
          std::size_t total = 0;
          for (auto w : width) total += w;
          total += width.empty() ? 0 : 2 * (width.size() - 1);
          out += std::string(total, '-') + "\n";
        }
      }
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------

LabelMap consolidate_gold_labels(const std::vector<AnnotationRecord>& annotations,
                                 const Taxonomy& taxonomy,
                                 const std::optional<std::set<std::string>>& rubric_ids) {
  std::map<std::string, std::vector<const AnnotationRecord*>> by_rubric;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& a : annotations) {
    if (rubric_ids && !rubric_ids->contains(a.rubric_id)) continue;
    check_annotation_labels(a, taxonomy);
    if (!seen.insert({a.rubric_id, a.annotator_id}).second) {
      throw DataError("duplicate_annotation", "annotator '" + a.annotator_id +
                                                  "' labelled rubric '" + a.rubric_id + "' twice");
    }
    by_rubric[a.rubric_id].push_back(&a);
  }
  LabelMap gold;
  for (const auto& [id, records] : by_rubric) {
    auto& labels = gold[id];
    for (const auto& m : taxonomy.failure_modes) {
      std::vector<Cell> votes;
      for (const auto* r : records) votes.push_back(r->labels.contains(m.label));
      if (consolidate_gold(votes)) labels.insert(m.label);
    }
  }
  return gold;
}

std::vector<EvaluatorOutputs> evaluators_from_verdicts(const std::vector<JudgeVerdict>& verdicts) {
  std::vector<std::string> providers;
  std::map<std::string, int> runs;
  for (const auto& v : verdicts) {
    if (!runs.contains(v.provider_id)) providers.push_back(v.provider_id);
    runs[v.provider_id] = std::max(runs[v.provider_id], v.run_index + 1);
  }
  std::vector<EvaluatorOutputs> out;
  for (const auto& p : providers) {
    EvaluatorOutputs e;
    e.name = p;
    e.single_run = single_run_labels(verdicts, p, 0);
    e.majority_vote = majority_vote_by_rubric(verdicts, p, runs[p]);
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

Json standard_metadata(std::string_view kind) {
  return Json{{"kind", kind},
              {"gold_rule", kGoldRule},
              {"kappa_method", "mean_pairwise_cohen_kappa_skipping_undefined_pairs"},
              {"alpha_metric", "nominal"},
              {"auc", "max(auc, 1 - auc)"}};
}

std::vector<std::string> gold_order(const LabelMap& gold) {
  std::vector<std::string> ids;
  for (const auto& [id, _] : gold) ids.push_back(id);
  return ids;
}

std::vector<bool> gold_column(const LabelMap& gold, const std::vector<std::string>& ids,
                              const std::string& label) {
  std::vector<bool> out;
  for (const auto& id : ids) out.push_back(gold.at(id).contains(label));
  return out;
}

std::vector<bool> prediction_column(const LabelMap& preds, const std::vector<std::string>& ids,
                                    const std::string& label, const std::string& evaluator) {
  std::vector<bool> out;
  for (const auto& id : ids) {
    auto it = preds.find(id);
    if (it == preds.end()) {
      throw DataError("rubric_set_mismatch",
                      "evaluator '" + evaluator + "' has no output for rubric '" + id + "'");
    }
    out.push_back(it->second.contains(label));
  }
  return out;
}

std::vector<SignalKind> signals_present(const std::vector<SignalScore>& scores) {
  std::vector<SignalKind> out;
  for (auto k : {SignalKind::irr, SignalKind::alignment, SignalKind::reward_variance}) {
    if (std::any_of(scores.begin(), scores.end(), [&](const auto& s) { return s.signal == k; })) {
      out.push_back(k);
    }
  }
  return out;
}

std::vector<double> signal_column(const std::vector<SignalScore>& scores, SignalKind kind,
                                  const std::vector<std::string>& ids) {
  std::map<std::string, double> by_rubric;
  for (const auto& s : scores) {
    if (s.signal != kind) continue;
    if (!by_rubric.emplace(s.rubric_id, s.value).second) {
      throw DataError("duplicate_score", to_string(kind) + " scored twice for '" + s.rubric_id + "'");
    }
  }
  std::vector<double> out;
  for (const auto& id : ids) {
    auto it = by_rubric.find(id);
    if (it == by_rubric.end()) {
      throw DataError("missing_signal", "no " + to_string(kind) + " score for rubric '" + id + "'");
    }
    out.push_back(it->second);
  }
  return out;
}

std::string category_text(const FailureMode& m) { return m.category ? to_string(*m.category) : ""; }

}  // namespace

Report report_evaluator_alignment(const LabelMap& gold, const Taxonomy& taxonomy,
                                  const std::vector<EvaluatorOutputs>& evaluators,
                                  const std::vector<SignalScore>& signal_scores) {
  if (gold.empty()) throw DataError("missing_store", "no gold labels");
  auto kinds = signals_present(signal_scores);
  if (evaluators.empty() && kinds.empty()) {
    throw DataError("missing_store", "no evaluator outputs or signal scores");
  }
  auto ids = gold_order(gold);

  Report report;
  report.kind = "evaluator_alignment";
  report.metadata = standard_metadata(report.kind);
  report.metadata["n_rubrics"] = ids.size();
  auto& cols = report.table.columns;
  cols = {"failure_mode", "category", "n_positive"};
  for (const auto& e : evaluators) {
    if (e.single_run) cols.push_back(e.name + " single-run F1");
    if (e.majority_vote) cols.push_back(e.name + " MV F1");
  }
  std::map<SignalKind, std::vector<double>> columns_by_signal;
  for (auto k : kinds) {
    cols.push_back(to_string(k) + " F1");
    cols.push_back(to_string(k) + " AUC");
    columns_by_signal[k] = signal_column(signal_scores, k, ids);
  }

  for (const auto* m : modes_by_category(taxonomy)) {
    auto g = gold_column(gold, ids, m->label);
    auto n_pos = std::count(g.begin(), g.end(), true);
    std::vector<ReportCell> row{ReportCell::str(m->label), ReportCell::str(category_text(*m)),
                                ReportCell::num(static_cast<double>(n_pos), CellFormat::integer)};
    for (const auto& e : evaluators) {
      for (const auto* preds : {e.single_run ? &*e.single_run : nullptr,
                                e.majority_vote ? &*e.majority_vote : nullptr}) {
        if (!preds) continue;
        auto p = prediction_column(*preds, ids, m->label, e.name);
        row.push_back(ReportCell::num(confusion_from_predictions(p, g).f1(), CellFormat::ratio3));
      }
    }
    for (auto k : kinds) {
      if (n_pos == 0) {
        row.push_back(ReportCell::num(std::nullopt, CellFormat::ratio3));
        row.push_back(ReportCell::num(std::nullopt, CellFormat::ratio3));
        continue;
      }
      auto r = f1_threshold_sweep(columns_by_signal[k], g);
      row.push_back(ReportCell::num(r.f1, CellFormat::ratio3));
      row.push_back(ReportCell::num(r.auc, CellFormat::ratio3));
    }
    report.table.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<CalibrationResult> calibrate_signals(const LabelMap& gold, const Taxonomy& taxonomy,
                                                 const std::vector<SignalScore>& signal_scores) {
  auto ids = gold_order(gold);
  auto kinds = signals_present(signal_scores);
  if (kinds.empty()) throw DataError("missing_store", "no signal scores");
  std::vector<CalibrationResult> out;
  for (const auto* m : modes_by_category(taxonomy)) {
    auto g = gold_column(gold, ids, m->label);
    if (std::none_of(g.begin(), g.end(), [](bool b) { return b; })) continue;
    for (auto k : kinds) {
      auto r = f1_threshold_sweep(signal_column(signal_scores, k, ids), g);
      r.failure_mode = m->label;
      r.signal = to_string(k);
      out.push_back(r);
    }
  }
  return out;
}

Report report_calibration(const std::vector<CalibrationResult>& results) {
  Report report;
  report.kind = "calibration";
  report.metadata = standard_metadata(report.kind);
  report.table.columns = {"failure_mode", "signal", "direction", "threshold", "f1",
                          "precision",    "recall", "auc",       "n_positive"};
  for (const auto& r : results) {
    report.table.rows.push_back({ReportCell::str(r.failure_mode), ReportCell::str(r.signal),
                                 ReportCell::str(to_string(r.direction)),
                                 ReportCell::num(r.threshold, CellFormat::real6),
                                 ReportCell::num(r.f1, CellFormat::ratio3),
                                 ReportCell::num(r.precision, CellFormat::ratio3),
                                 ReportCell::num(r.recall, CellFormat::ratio3),
                                 ReportCell::num(r.auc, CellFormat::ratio3),
                                 ReportCell::num(r.n_positive, CellFormat::integer)});
  }
  return report;
}

Report report_model_pairwise(const std::vector<std::pair<std::string, LabelMap>>& mv_by_model,
                             const Taxonomy& taxonomy) {
  if (mv_by_model.size() < 2) {
    throw DataError("insufficient_models", "pairwise agreement needs at least two models");
  }
  std::set<std::string> rubric_set;
  for (const auto& [id, _] : mv_by_model.front().second) rubric_set.insert(id);
  for (const auto& [name, labels] : mv_by_model) {
    std::set<std::string> mine;
    for (const auto& [id, _] : labels) mine.insert(id);
    if (mine != rubric_set) {
      throw DataError("rubric_set_mismatch", "model '" + name + "' covers a different rubric set than '" +
                                                 mv_by_model.front().first + "'");
    }
  }
  if (rubric_set.empty()) throw DataError("empty_denominator", "no rubrics to compare");
  std::vector<std::string> ids(rubric_set.begin(), rubric_set.end());

  Report report;
  report.kind = "model_pairwise";
  report.metadata = standard_metadata(report.kind);
  report.metadata["n_rubrics"] = ids.size();
  report.table.columns = {"failure_mode"};
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < mv_by_model.size(); ++a) {
    for (std::size_t b = a + 1; b < mv_by_model.size(); ++b) {
      pairs.emplace_back(a, b);
      const auto tag = mv_by_model[a].first + " vs " + mv_by_model[b].first;
      report.table.columns.push_back(tag + " % agree");
      report.table.columns.push_back(tag + " kappa");
    }
  }

  std::vector<std::vector<double>> sums(pairs.size(), std::vector<double>(2, 0.0));
  std::vector<std::vector<int>> counts(pairs.size(), std::vector<int>(2, 0));
  auto modes = modes_by_category(taxonomy);
  for (const auto* m : modes) {
    std::vector<ReportCell> row{ReportCell::str(m->label)};
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const auto& la = mv_by_model[pairs[p].first].second;
      const auto& lb = mv_by_model[pairs[p].second].second;
      std::vector<Cell> ca, cb;
      std::int64_t equal = 0;
      for (const auto& id : ids) {
        bool va = la.at(id).contains(m->label), vb = lb.at(id).contains(m->label);
        ca.push_back(va);
        cb.push_back(vb);
        if (va == vb) ++equal;
      }
      double agree = static_cast<double>(equal) / static_cast<double>(ids.size());
      auto kappa = cohen_kappa(ca, cb);
      row.push_back(ReportCell::num(agree, CellFormat::percent1));
      row.push_back(ReportCell::num(kappa, CellFormat::ratio3));
      sums[p][0] += agree;
      ++counts[p][0];
      if (kappa) {
        sums[p][1] += *kappa;
        ++counts[p][1];
      }
    }
    report.table.rows.push_back(std::move(row));
  }
  std::vector<ReportCell> macro{ReportCell::str("overall_macro")};
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (int k = 0; k < 2; ++k) {
      std::optional<double> v;
      if (counts[p][k] > 0) v = sums[p][k] / counts[p][k];
      macro.push_back(ReportCell::num(v, k == 0 ? CellFormat::percent1 : CellFormat::ratio3));
    }
  }
  report.table.rows.push_back(std::move(macro));
  return report;
}

Report report_prevalence(const LabelMap& gold, const std::vector<Rubric>& rubrics,
                         const Taxonomy& taxonomy) {
  std::vector<Origin> origins;
  for (auto o : {Origin::expert, Origin::synthetic}) {
    bool any = std::any_of(rubrics.begin(), rubrics.end(),
                           [&](const Rubric& r) { return r.origin == o && gold.contains(r.id); });
    if (any) origins.push_back(o);
  }
  if (origins.empty()) throw DataError("empty_subset", "no gold-labelled rubrics of any origin");
  auto table = prevalence_table(gold, rubrics, taxonomy, origins);

  Report report;
  report.kind = "prevalence";
  report.metadata = standard_metadata(report.kind);
  report.metadata["category_average"] = "mean of one-decimal mode percentages, rounded half-up";
  report.table.columns = {"failure_mode", "name"};
  for (auto o : origins) report.table.columns.push_back(to_string(o));
  Json counts = Json::array();
  for (const auto& row : table.rows) {
    std::vector<ReportCell> cells{ReportCell::str(row.label), ReportCell::str(row.display_name)};
    Json jc{{"failure_mode", row.label}};
    for (auto o : origins) {
      const auto& c = row.by_origin.at(o);
      cells.push_back(ReportCell::str(c.rendered()));
      if (!row.category_average) jc[to_string(o)] = {{"positives", c.positives}, {"total", c.total}};
    }
    if (!row.category_average) counts.push_back(std::move(jc));
    report.table.rows.push_back(std::move(cells));
  }
  report.extra["counts"] = counts;
  return report;
}

Report report_correlation(const std::map<std::string, double>& failure_counts,
                          const std::map<std::string, bool>& misaligned, int permutations,
                          std::uint64_t seed) {
  std::vector<double> x, y;
  std::vector<bool> group;
  for (const auto& [id, count] : failure_counts) {
    auto it = misaligned.find(id);
    if (it == misaligned.end()) {
      throw DataError("rubric_set_mismatch", "no misalignment indicator for rubric '" + id + "'");
    }
    x.push_back(count);
    y.push_back(it->second ? 1.0 : 0.0);
    group.push_back(it->second);
  }
  if (misaligned.size() != failure_counts.size()) {
    throw DataError("rubric_set_mismatch", "misalignment indicators cover extra rubrics");
  }
  auto corr = pearson_r(x, y, permutations, seed);
  auto diff = permutation_mean_difference(x, group, permutations, seed);

  Report report;
  report.kind = "correlation";
  report.metadata = standard_metadata(report.kind);
  report.metadata["permutation_seed"] = seed;
  report.table.columns = {"statistic", "value"};
  auto add = [&](const char* name, double v, CellFormat f) {
    report.table.rows.push_back({ReportCell::str(name), ReportCell::num(v, f)});
  };
  add("pearson_r", corr.r, CellFormat::ratio3);
  add("p_value", corr.p_value, CellFormat::real6);
  add("n", static_cast<double>(corr.n), CellFormat::integer);
  add("permutations", corr.permutations, CellFormat::integer);
  add("mean_count_misaligned", diff.mean_positive, CellFormat::mean2);
  add("mean_count_aligned", diff.mean_negative, CellFormat::mean2);
  add("mean_difference", diff.difference, CellFormat::mean2);
  add("mean_difference_p_value", diff.p_value, CellFormat::real6);
  report.extra["correlation"] = {{"r", corr.r},
                                 {"p_value", corr.p_value},
                                 {"n", corr.n},
                                 {"permutations", corr.permutations}};
  report.extra["group_means"] = {{"misaligned", diff.mean_positive},
                                 {"aligned", diff.mean_negative},
                                 {"n_misaligned", diff.n_positive},
                                 {"n_aligned", diff.n_negative},
                                 {"difference", diff.difference},
                                 {"p_value", diff.p_value}};
  return report;
}

Report report_signal_summary(const std::vector<SignalScore>& scores) {
  Report report;
  report.kind = "signal_summary";
  report.metadata = standard_metadata(report.kind);
  report.table.columns = {"signal", "n", "mean", "min", "max"};
  for (auto k : signals_present(scores)) {
    std::vector<double> v;
    for (const auto& s : scores) {
      if (s.signal == k) v.push_back(s.value);
    }
    double sum = 0;
    for (double x : v) sum += x;
    report.table.rows.push_back(
        {ReportCell::str(to_string(k)), ReportCell::num(static_cast<double>(v.size()), CellFormat::integer),
         ReportCell::num(sum / static_cast<double>(v.size()), CellFormat::ratio3),
         ReportCell::num(*std::min_element(v.begin(), v.end()), CellFormat::ratio3),
         ReportCell::num(*std::max_element(v.begin(), v.end()), CellFormat::ratio3)});
  }
  if (report.table.rows.empty()) throw DataError("missing_store", "no signal scores");
  return report;
}

Report report_annotation_agreement(const std::vector<AnnotationRecord>& annotations,
                                   const Taxonomy& taxonomy) {
  std::vector<std::string> items, raters;
  std::map<std::string, std::size_t> item_index, rater_index;
  for (const auto& a : annotations) {
    check_annotation_labels(a, taxonomy);
    if (item_index.emplace(a.rubric_id, items.size()).second) items.push_back(a.rubric_id);
    if (rater_index.emplace(a.annotator_id, raters.size()).second) raters.push_back(a.annotator_id);
  }
  if (raters.size() < 2) {
    throw DataError("insufficient_raters", "agreement statistics need at least two annotators");
  }

  Report report;
  report.kind = "annotation_agreement";
  report.metadata = standard_metadata(report.kind);
  report.metadata["n_rubrics"] = items.size();
  report.metadata["n_annotators"] = raters.size();
  report.table.columns = {"failure_mode", "pwa", "cohen_kappa", "krippendorff_alpha"};

  double sums[3] = {0, 0, 0};
  int counts[3] = {0, 0, 0};
  for (const auto* m : modes_by_category(taxonomy)) {
    BinaryMatrix mat(items, raters);
    std::set<std::pair<std::size_t, std::size_t>> filled;
    for (const auto& a : annotations) {
      auto i = item_index.at(a.rubric_id), r = rater_index.at(a.annotator_id);
      if (!filled.insert({i, r}).second) {
        throw DataError("duplicate_annotation", "annotator '" + a.annotator_id +
                                                    "' labelled rubric '" + a.rubric_id + "' twice");
      }
      mat.set(i, r, a.labels.contains(m->label));
    }
    std::optional<double> vals[3];
    auto guarded = [](auto fn) -> std::optional<double> {
      try {
        return fn();
      } catch (const DataError&) {
        return std::nullopt;
      }
    };
    vals[0] = guarded([&] { return pairwise_agreement(mat); });
    vals[1] = guarded([&] { return mean_pairwise_kappa(mat); });
    vals[2] = guarded([&] { return krippendorff_alpha(mat); });
    std::vector<ReportCell> row{ReportCell::str(m->label)};
    for (int k = 0; k < 3; ++k) {
      row.push_back(ReportCell::num(vals[k], k == 0 ? CellFormat::percent1 : CellFormat::ratio3));
      if (vals[k]) {
        sums[k] += *vals[k];
        ++counts[k];
      }
    }
    report.table.rows.push_back(std::move(row));
  }
  std::vector<ReportCell> overall{ReportCell::str("overall")};
  for (int k = 0; k < 3; ++k) {
    std::optional<double> v;
    if (counts[k]) v = sums[k] / counts[k];
    overall.push_back(ReportCell::num(v, k == 0 ? CellFormat::percent1 : CellFormat::ratio3));
  }
  report.table.rows.push_back(std::move(overall));
  return report;
}

std::map<std::string, bool> load_misalignment(const std::filesystem::path& path) {
  std::map<std::string, bool> out;
  for_each_jsonl(path, [&](std::size_t line, const Json& j) {
    try {
      auto id = j.at("rubric_id").get<std::string>();
      if (!out.emplace(id, j.at("misaligned").get<bool>()).second) {
        throw DataError("duplicate_id", path.string() + ":" + std::to_string(line) +
                                            ": rubric '" + id + "' repeats");
      }
    } catch (const Json::exception& e) {
      throw DataError("invalid_record", path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return out;
}

Json input_hashes(const std::vector<std::filesystem::path>& paths) {
  Json out = Json::array();
  for (const auto& p : paths) {
    if (!std::filesystem::exists(p)) throw DataError("missing_store", "input store not found: " + p.string());
    out.push_back({{"path", p.filename().string()}, {"sha256", file_sha256(p)}});
  }
  return out;
}

}  // namespace rift
