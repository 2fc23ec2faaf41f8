#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rift/provider.hpp"
#include "rift/taxonomy.hpp"

namespace rift {

struct PanelConfig {
  std::vector<ProviderConfig> responders;
  std::vector<ProviderConfig> labelers;
  ProviderConfig reference_labeler;
  std::vector<ProviderConfig> weak_labelers;
  int responses_per_input = 4;
  ProviderConfig variance_judge;
  /// Responder whose k responses feed reward variance; defaults to the first.
  std::optional<std::string> variance_responder;
  std::string preference_prompt;  // empty -> kDefaultPreferencePrompt
  std::string score_prompt;       // empty -> kDefaultScorePrompt
  std::uint64_t seed = 0;
};

/// responders >= 2, labelers >= 2, weak labelers exclude the reference.
void validate_panel(const PanelConfig& panel);

/// Panel file. Provider entries are either inline ProviderConfig objects or
/// provider_id strings resolved against `registry`.
PanelConfig load_panel_config(const std::filesystem::path& path,
                              const std::map<std::string, ProviderConfig>& registry = {});
void to_json(Json& j, const PanelConfig& p);

struct Response {
  std::string response_id;
  std::string rubric_id;
  std::string provider_id;
  int index = 0;
  std::string text;
  int attempts = 1;

  bool operator==(const Response&) const = default;
};

/// hash(provider, rubric, index), 16 hex digits.
std::string response_id_for(const std::string& provider_id, const std::string& rubric_id, int index);

enum class Preference { A, B, TIE };
std::string to_string(Preference p);
Preference parse_preference(std::string_view text);
/// A <-> B, TIE unchanged.
Preference swapped(Preference p);

struct PreferenceLabel {
  std::string rubric_id;
  std::string response_a;  // pair as stored; verdict is relative to this order
  std::string response_b;
  std::string labeler_id;
  std::optional<Preference> verdict;  // nullopt = abstention
  std::string presented_first;
  std::string presented_second;
  int attempts = 0;

  bool operator==(const PreferenceLabel&) const = default;
};

enum class SignalKind { irr, alignment, reward_variance };
std::string to_string(SignalKind s);
SignalKind parse_signal_kind(std::string_view s);

struct SignalScore {
  std::string rubric_id;
  SignalKind signal = SignalKind::irr;
  double value = 0;

  bool operator==(const SignalScore&) const = default;
};

/// One variance-judge score for one response, normalized to [0, 1].
struct JudgeScore {
  std::string rubric_id;
  std::string response_id;
  std::string judge_id;
  double raw_score = 0;
  double normalized = 0;
  int attempts = 1;

  bool operator==(const JudgeScore&) const = default;
};

void to_json(Json& j, const Response& r);
void from_json(const Json& j, Response& r);
void to_json(Json& j, const PreferenceLabel& p);
void from_json(const Json& j, PreferenceLabel& p);
void to_json(Json& j, const SignalScore& s);
void from_json(const Json& j, SignalScore& s);
void to_json(Json& j, const JudgeScore& s);
void from_json(const Json& j, JudgeScore& s);

/// `responses_per_responder` responses from every responder, ordered by
/// (responder, index). The responder prompt is the rubric's input context.
std::vector<Response> generate_responses(const Rubric& rubric,
                                         const std::vector<Provider*>& responders,
                                         int responses_per_responder, ResponseCache* cache);

struct PreferenceOptions {
  std::string prompt_template;  // empty -> kDefaultPreferencePrompt
  std::uint64_t seed = 0;
  ResponseCache* cache = nullptr;
};

/// Every unordered pair (i < j in `responses` order) labelled by every
/// labeler. Presentation order is a seeded coin flip per (rubric, pair,
/// labeler) and the verdict is mapped back to the stored order. Replies that
/// stay unparseable, or transport failures that exhaust retries, become
/// abstentions. Ordered by (pair, labeler).
std::vector<PreferenceLabel> label_preferences(const Rubric& rubric,
                                               const std::vector<Response>& responses,
                                               const std::vector<Provider*>& labelers,
                                               const PreferenceOptions& options = {});

/// PWA over (response pair, labeler pair) combinations with both verdicts
/// present. TIE agrees only with TIE. Throws DataError("empty_denominator").
SignalScore irr_signal(const std::vector<PreferenceLabel>& labels);

/// Fraction of (weak labeler, pair) verdicts equal to the reference
/// labeler's verdict on the same pair.
SignalScore alignment_signal(const std::vector<PreferenceLabel>& labels,
                             const std::string& reference_labeler,
                             const std::vector<std::string>& weak_labelers);

/// Divide-by-n variance.
double population_variance(const std::vector<double>& values);

/// Parses `{"score": x}` with 0 <= x <= 10. Missing or non-numeric scores
/// throw MalformedResponse; out-of-range scores throw
/// DataError("score_out_of_range") naming the response.
double parse_score_reply(std::string_view raw, const std::string& response_id);

struct RewardVarianceResult {
  SignalScore score;
  std::vector<Response> responses;
  std::vector<JudgeScore> judge_scores;
};

/// k responses from `responder`, each scored 0-10 by `judge`; the signal is
/// the population variance of score / 10.
RewardVarianceResult reward_variance_signal(const Rubric& rubric, Provider& judge,
                                            Provider& responder, int k = 4,
                                            ResponseCache* cache = nullptr,
                                            const std::string& score_prompt = {});

/// Reward variance over already-persisted judge scores for one rubric.
SignalScore reward_variance_from_scores(const std::string& rubric_id,
                                        const std::vector<JudgeScore>& scores);

struct SignalRunOptions {
  std::vector<SignalKind> signals{SignalKind::irr, SignalKind::alignment,
                                  SignalKind::reward_variance};
  ResponseCache* cache = nullptr;
  /// Store directory: responses.jsonl, preferences.jsonl, judge_scores.jsonl,
  /// signal_scores.jsonl. Empty disables persistence.
  std::filesystem::path out_dir;
};

struct SignalRunResult {
  std::vector<Response> responses;
  std::vector<PreferenceLabel> preferences;
  std::vector<JudgeScore> judge_scores;
  std::vector<SignalScore> scores;  // ordered by (rubric, signal)
};

/// Runs the whole panel over `rubrics`. Rubrics are processed in order.
SignalRunResult run_signal_panel(const std::vector<Rubric>& rubrics, const PanelConfig& panel,
                                 const SignalRunOptions& options = {});

/// Recomputes the signal scores from persisted preference and judge-score
/// stores; pure and deterministic.
std::vector<SignalScore> compute_signals(const std::vector<std::string>& rubric_ids,
                                         const std::vector<PreferenceLabel>& preferences,
                                         const std::vector<JudgeScore>& judge_scores,
                                         const PanelConfig& panel,
                                         const std::vector<SignalKind>& signals);

std::vector<SignalScore> load_signal_scores(const std::filesystem::path& path);
std::vector<PreferenceLabel> load_preferences(const std::filesystem::path& path);

}  // namespace rift
