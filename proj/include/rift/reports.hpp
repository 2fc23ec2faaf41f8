#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rift/judge.hpp"
#include "rift/metrics.hpp"
#include "rift/signals.hpp"
#include "rift/taxonomy.hpp"

namespace rift {

using LabelMap = std::map<std::string, std::set<std::string>>;  // rubric_id -> labels

enum class CellFormat { text, ratio3, percent1, mean2, integer, real6 };

struct ReportCell {
  std::optional<double> value;  // nullopt renders as missing
  std::string text;
  CellFormat format = CellFormat::text;

  static ReportCell str(std::string s) { return {std::nullopt, std::move(s), CellFormat::text}; }
  static ReportCell num(std::optional<double> v, CellFormat f) { return {v, {}, f}; }
};

struct ReportTable {
  std::vector<std::string> columns;
  std::vector<std::vector<ReportCell>> rows;
};

struct Report {
  std::string kind;
  Json metadata = Json::object();
  ReportTable table;
  Json extra = Json::object();  // structured results that do not fit a table
};

enum class ReportFormat { csv, json, text };
ReportFormat parse_report_format(std::string_view s);

/// CSV per RFC 4180 (CRLF, quoted when needed; numbers at full precision
/// that survives a round trip), JSON, or an aligned text table with
/// percentages at one decimal and F1/kappa at three.
std::string render_report(const Report& report, ReportFormat format);
std::string csv_escape(std::string_view field);

/// Strict-majority consolidation of every annotator's labels per rubric.
/// Rubrics are restricted to `rubric_ids` when given.
LabelMap consolidate_gold_labels(const std::vector<AnnotationRecord>& annotations,
                                 const Taxonomy& taxonomy,
                                 const std::optional<std::set<std::string>>& rubric_ids = {});

/// One LLM evaluator's binary outputs.
struct EvaluatorOutputs {
  std::string name;
  std::optional<LabelMap> single_run;
  std::optional<LabelMap> majority_vote;
};

/// Single-run (run 0) and MV outputs for every provider in a verdict store.
/// MV uses the provider's run count.
std::vector<EvaluatorOutputs> evaluators_from_verdicts(const std::vector<JudgeVerdict>& verdicts);

/// Per failure mode: F1 of each evaluator's single-run and MV predictions,
/// then best-threshold F1 and AUC for each scalar signal. Rows follow the
/// category grouping.
Report report_evaluator_alignment(const LabelMap& gold, const Taxonomy& taxonomy,
                                  const std::vector<EvaluatorOutputs>& evaluators,
                                  const std::vector<SignalScore>& signal_scores);

/// Best-threshold calibration of every signal against every mode's gold.
/// Modes without positives are skipped.
std::vector<CalibrationResult> calibrate_signals(const LabelMap& gold, const Taxonomy& taxonomy,
                                                 const std::vector<SignalScore>& signal_scores);
Report report_calibration(const std::vector<CalibrationResult>& results);

/// Per mode and model pair: fraction agreeing and Cohen's kappa, plus a
/// macro row averaging the mode rows. Throws DataError("rubric_set_mismatch").
Report report_model_pairwise(const std::vector<std::pair<std::string, LabelMap>>& mv_by_model,
                             const Taxonomy& taxonomy);

Report report_prevalence(const LabelMap& gold, const std::vector<Rubric>& rubrics,
                         const Taxonomy& taxonomy);

/// Pearson r between per-rubric failure counts and a misalignment
/// indicator, plus group means and a permutation mean-difference test.
Report report_correlation(const std::map<std::string, double>& failure_counts,
                          const std::map<std::string, bool>& misaligned, int permutations,
                          std::uint64_t seed);

/// Per signal: n, mean, min, max.
Report report_signal_summary(const std::vector<SignalScore>& scores);

/// Per mode: PWA, mean pairwise kappa and alpha across annotators, plus an
/// overall row.
Report report_annotation_agreement(const std::vector<AnnotationRecord>& annotations,
                                   const Taxonomy& taxonomy);

/// Misalignment indicator file: JSONL `{rubric_id, misaligned}`.
std::map<std::string, bool> load_misalignment(const std::filesystem::path& path);

/// `{"path": ..., "sha256": ...}` entries for report metadata.
Json input_hashes(const std::vector<std::filesystem::path>& paths);

}  // namespace rift
