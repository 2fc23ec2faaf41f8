#include "rift/signals.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rift/error.hpp"
#include "rift/prompts.hpp"

namespace rift {

void validate_panel(const PanelConfig& panel) {
  if (panel.responders.size() < 2) throw UsageError("invalid_panel", "a panel needs >= 2 responders");
  if (panel.labelers.size() < 2) throw UsageError("invalid_panel", "a panel needs >= 2 labelers");
  if (panel.responses_per_input < 2) {
    throw UsageError("invalid_panel", "responses_per_input must be >= 2");
  }
  for (const auto& w : panel.weak_labelers) {
    if (w.provider_id == panel.reference_labeler.provider_id) {
      throw UsageError("invalid_panel", "weak labelers must exclude the reference labeler '" +
                                            w.provider_id + "'");
    }
  }
  auto all = panel.responders;
  all.insert(all.end(), panel.labelers.begin(), panel.labelers.end());
  all.insert(all.end(), panel.weak_labelers.begin(), panel.weak_labelers.end());
  all.push_back(panel.reference_labeler);
  all.push_back(panel.variance_judge);
  for (const auto& c : all) validate_provider_config(c);
  if (panel.variance_responder) {
    bool found = std::any_of(panel.responders.begin(), panel.responders.end(),
                             [&](const auto& r) { return r.provider_id == *panel.variance_responder; });
    if (!found) {
      throw UsageError("invalid_panel",
                       "variance_responder '" + *panel.variance_responder + "' is not a responder");
    }
  }
}

namespace {

ProviderConfig resolve_provider(const Json& j, const std::map<std::string, ProviderConfig>& registry) {
  if (j.is_string()) {
    auto it = registry.find(j.get<std::string>());
    if (it == registry.end()) {
      throw UsageError("unknown_provider", "panel references unknown provider '" +
                                               j.get<std::string>() + "'");
    }
    return it->second;
  }
  return j.get<ProviderConfig>();
}

std::vector<ProviderConfig> resolve_list(const Json& doc, const char* key,
                                         const std::map<std::string, ProviderConfig>& registry) {
  std::vector<ProviderConfig> out;
  if (!doc.contains(key)) return out;
  for (const auto& e : doc.at(key)) out.push_back(resolve_provider(e, registry));
  return out;
}

}  // namespace

PanelConfig load_panel_config(const std::filesystem::path& path,
                              const std::map<std::string, ProviderConfig>& registry) {
  auto doc = read_json_file(path);
  PanelConfig p;
  try {
    p.responders = resolve_list(doc, "responders", registry);
    p.labelers = resolve_list(doc, "labelers", registry);
    p.weak_labelers = resolve_list(doc, "weak_labelers", registry);
    p.reference_labeler = resolve_provider(doc.at("reference_labeler"), registry);
    p.variance_judge = resolve_provider(doc.at("variance_judge"), registry);
    p.responses_per_input = doc.value("responses_per_input", 4);
    if (doc.contains("variance_responder")) {
      p.variance_responder = doc.at("variance_responder").get<std::string>();
    }
    p.preference_prompt = doc.value("preference_prompt", std::string{});
    p.score_prompt = doc.value("score_prompt", std::string{});
    p.seed = doc.value("seed", std::uint64_t{0});
  } catch (const Json::exception& e) {
    throw DataError("invalid_panel", path.string() + ": " + e.what());
  }
  validate_panel(p);
  return p;
}

void to_json(Json& j, const PanelConfig& p) {
  j = Json{{"responders", p.responders},
           {"labelers", p.labelers},
           {"reference_labeler", p.reference_labeler},
           {"weak_labelers", p.weak_labelers},
           {"responses_per_input", p.responses_per_input},
           {"variance_judge", p.variance_judge},
           {"seed", p.seed}};
  if (p.variance_responder) j["variance_responder"] = *p.variance_responder;
  if (!p.preference_prompt.empty()) j["preference_prompt"] = p.preference_prompt;
  if (!p.score_prompt.empty()) j["score_prompt"] = p.score_prompt;
}

std::string response_id_for(const std::string& provider_id, const std::string& rubric_id, int index) {
  std::string material = std::to_string(provider_id.size()) + ":" + provider_id + "|" +
                         std::to_string(rubric_id.size()) + ":" + rubric_id + "|" +
                         std::to_string(index);
  return sha256_hex(material).substr(0, 16);
}

std::string to_string(Preference p) {
  switch (p) {
    case Preference::A:
      return "A";
    case Preference::B:
      return "B";
    case Preference::TIE:
      return "TIE";
  }
  return "TIE";
}

Preference parse_preference(std::string_view text) {
  // Accept a bare verdict, optionally wrapped in quotes/punctuation or a
  // short sentence whose first word is the verdict.
  std::string cleaned;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c)) || std::isspace(static_cast<unsigned char>(c))) {
      cleaned += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    } else {
      cleaned += ' ';
    }
  }
  auto words = split_whitespace(cleaned);
  if (!words.empty()) {
    if (words.front() == "A") return Preference::A;
    if (words.front() == "B") return Preference::B;
    if (words.front() == "TIE") return Preference::TIE;
  }
  throw MalformedResponse("preference reply is not A, B or TIE");
}

Preference swapped(Preference p) {
  if (p == Preference::A) return Preference::B;
  if (p == Preference::B) return Preference::A;
  return p;
}

std::string to_string(SignalKind s) {
  switch (s) {
    case SignalKind::irr:
      return "irr";
    case SignalKind::alignment:
      return "alignment";
    case SignalKind::reward_variance:
      return "reward_variance";
  }
  return "irr";
}

SignalKind parse_signal_kind(std::string_view s) {
  if (s == "irr") return SignalKind::irr;
  if (s == "alignment") return SignalKind::alignment;
  if (s == "reward_variance") return SignalKind::reward_variance;
  throw UsageError("unknown_signal", "unknown signal '" + std::string(s) +
                                         "' (expected irr, alignment, reward_variance)");
}

void to_json(Json& j, const Response& r) {
  j = Json{{"response_id", r.response_id}, {"rubric_id", r.rubric_id},
           {"provider_id", r.provider_id}, {"index", r.index},
           {"text", r.text},               {"attempts", r.attempts}};
}

void from_json(const Json& j, Response& r) {
  r.response_id = j.at("response_id").get<std::string>();
  r.rubric_id = j.at("rubric_id").get<std::string>();
  r.provider_id = j.at("provider_id").get<std::string>();
  r.index = j.value("index", 0);
  r.text = j.value("text", std::string{});
  r.attempts = j.value("attempts", 1);
}

void to_json(Json& j, const PreferenceLabel& p) {
  j = Json{{"rubric_id", p.rubric_id},
           {"pair", Json::array({p.response_a, p.response_b})},
           {"labeler_id", p.labeler_id},
           {"verdict", p.verdict ? Json(to_string(*p.verdict)) : Json(nullptr)},
           {"presented_order", Json::array({p.presented_first, p.presented_second})},
           {"attempts", p.attempts}};
}

void from_json(const Json& j, PreferenceLabel& p) {
  p.rubric_id = j.at("rubric_id").get<std::string>();
  const auto& pair = j.at("pair");
  if (!pair.is_array() || pair.size() != 2) throw DataError("invalid_record", "pair must have two ids");
  p.response_a = pair[0].get<std::string>();
  p.response_b = pair[1].get<std::string>();
  if (p.response_a == p.response_b) throw DataError("invalid_record", "pair ids must differ");
  p.labeler_id = j.at("labeler_id").get<std::string>();
  p.verdict.reset();
  if (j.contains("verdict") && !j.at("verdict").is_null()) {
    auto v = j.at("verdict").get<std::string>();
    if (v != "A" && v != "B" && v != "TIE") throw DataError("invalid_record", "bad verdict '" + v + "'");
    p.verdict = parse_preference(v);
  }
  if (j.contains("presented_order")) {
    p.presented_first = j.at("presented_order").at(0).get<std::string>();
    p.presented_second = j.at("presented_order").at(1).get<std::string>();
  } else {
    p.presented_first = p.response_a;
    p.presented_second = p.response_b;
  }
  p.attempts = j.value("attempts", 0);
}

void to_json(Json& j, const SignalScore& s) {
  j = Json{{"rubric_id", s.rubric_id}, {"signal", to_string(s.signal)}, {"value", s.value}};
}

void from_json(const Json& j, SignalScore& s) {
  s.rubric_id = j.at("rubric_id").get<std::string>();
  s.signal = parse_signal_kind(j.at("signal").get<std::string>());
  s.value = j.at("value").get<double>();
}

void to_json(Json& j, const JudgeScore& s) {
  j = Json{{"rubric_id", s.rubric_id},   {"response_id", s.response_id},
           {"judge_id", s.judge_id},     {"raw_score", s.raw_score},
           {"normalized", s.normalized}, {"attempts", s.attempts}};
}

void from_json(const Json& j, JudgeScore& s) {
  s.rubric_id = j.at("rubric_id").get<std::string>();
  s.response_id = j.at("response_id").get<std::string>();
  s.judge_id = j.at("judge_id").get<std::string>();
  s.raw_score = j.at("raw_score").get<double>();
  s.normalized = j.value("normalized", s.raw_score / 10.0);
  s.attempts = j.value("attempts", 1);
}

// ---------------------------------------------------------------------------

std::vector<Response> generate_responses(const Rubric& rubric,
                                         const std::vector<Provider*>& responders,
                                         int responses_per_responder, ResponseCache* cache) {
  if (responses_per_responder < 1) {
    throw UsageError("invalid_argument", "responses_per_responder must be >= 1");
  }
  const auto k = static_cast<std::size_t>(responses_per_responder);
  std::vector<Response> out(responders.size() * k);
  // Providers run side by side; each one stays within its own max_concurrent.
  parallel_for(responders.size(), responders.size(), [&](std::size_t p) {
    Provider& provider = *responders[p];
    parallel_for(k, static_cast<std::size_t>(provider.config().max_concurrent), [&](std::size_t i) {
      int index = static_cast<int>(i);
      auto outcome = cached_completion(provider, cache, rubric.input_context, index,
                                       [](const std::string&) {});
      Response r;
      r.provider_id = provider.config().provider_id;
      r.rubric_id = rubric.id;
      r.index = index;
      r.response_id = response_id_for(r.provider_id, rubric.id, index);
      r.text = outcome.raw;
      r.attempts = outcome.attempts;
      out[p * k + i] = std::move(r);
    });
  });
  return out;
}

std::vector<PreferenceLabel> label_preferences(const Rubric& rubric,
                                               const std::vector<Response>& responses,
                                               const std::vector<Provider*>& labelers,
                                               const PreferenceOptions& options) {
  if (responses.size() < 2) throw UsageError("invalid_argument", "preference labeling needs >= 2 responses");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < responses.size(); ++i) {
    for (std::size_t j = i + 1; j < responses.size(); ++j) {
      if (responses[i].response_id == responses[j].response_id) {
        throw DataError("duplicate_response", "response id '" + responses[i].response_id + "' repeats");
      }
      pairs.emplace_back(i, j);
    }
  }
  const std::string& tmpl =
      options.prompt_template.empty() ? std::string(kDefaultPreferencePrompt) : options.prompt_template;

  std::vector<PreferenceLabel> out(pairs.size() * labelers.size());
  parallel_for(labelers.size(), labelers.size(), [&](std::size_t l) {
    Provider& labeler = *labelers[l];
    const auto& labeler_id = labeler.config().provider_id;
    parallel_for(pairs.size(), static_cast<std::size_t>(labeler.config().max_concurrent),
                 [&](std::size_t p) {
      const auto& a = responses[pairs[p].first];
      const auto& b = responses[pairs[p].second];
      std::uint64_t coin_seed = splitmix64(options.seed) ^ fnv1a64(rubric.id) ^
                                splitmix64(fnv1a64(labeler_id)) ^
                                splitmix64(fnv1a64(a.response_id + "|" + b.response_id));
      bool flip = (Rng(coin_seed).next() & 1ULL) != 0;
      const Response& first = flip ? b : a;
      const Response& second = flip ? a : b;

      PreferenceLabel label;
      label.rubric_id = rubric.id;
      label.response_a = a.response_id;
      label.response_b = b.response_id;
      label.labeler_id = labeler_id;
      label.presented_first = first.response_id;
      label.presented_second = second.response_id;

      auto prompt = fill_template(tmpl, {{"input_context", rubric.input_context},
                                         {"rubric", rubric.rubric_text},
                                         {"response_a", first.text},
                                         {"response_b", second.text}});
      try {
        auto outcome = cached_completion(labeler, options.cache, prompt, 0,
                                         [](const std::string& raw) { (void)parse_preference(raw); });
        auto shown = parse_preference(outcome.raw);
        label.verdict = flip ? swapped(shown) : shown;
        label.attempts = outcome.attempts;
      } catch (const ProviderError& e) {
        if (e.code() != "provider_exhausted") throw;
        label.verdict.reset();
        label.attempts = labeler.config().retry.max_attempts;
      }
      out[p * labelers.size() + l] = std::move(label);
    });
  });
  return out;
}

namespace {

using PairKey = std::pair<std::string, std::string>;

// Verdicts keyed by unordered pair (smaller id first, verdict re-oriented to
// match) and labeler. Abstentions are dropped.
std::map<PairKey, std::map<std::string, Preference>> index_verdicts(
    const std::vector<PreferenceLabel>& labels, std::string* rubric_id) {
  std::map<PairKey, std::map<std::string, Preference>> out;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (const auto& l : labels) {
    if (rubric_id->empty()) *rubric_id = l.rubric_id;
    if (l.rubric_id != *rubric_id) {
      throw DataError("mixed_rubrics", "signal inputs span rubrics '" + *rubric_id + "' and '" +
                                           l.rubric_id + "'");
    }
    if (l.response_a == l.response_b) throw DataError("invalid_record", "pair ids must differ");
    bool flip = l.response_b < l.response_a;
    PairKey key = flip ? PairKey{l.response_b, l.response_a} : PairKey{l.response_a, l.response_b};
    if (!seen.insert({key.first, key.second, l.labeler_id}).second) {
      throw DataError("duplicate_label", "labeler '" + l.labeler_id + "' labelled pair (" +
                                             key.first + ", " + key.second + ") twice");
    }
    if (!l.verdict) continue;
    out[key][l.labeler_id] = flip ? swapped(*l.verdict) : *l.verdict;
  }
  return out;
}

}  // namespace

SignalScore irr_signal(const std::vector<PreferenceLabel>& labels) {
  std::string rubric_id;
  auto verdicts = index_verdicts(labels, &rubric_id);
  std::int64_t agree = 0, total = 0;
  for (const auto& [pair, by_labeler] : verdicts) {
    for (auto i = by_labeler.begin(); i != by_labeler.end(); ++i) {
      for (auto j = std::next(i); j != by_labeler.end(); ++j) {
        ++total;
        if (i->second == j->second) ++agree;
      }
    }
  }
  if (total == 0) {
    throw DataError("empty_denominator", "no response pair has verdicts from two labelers" +
                                             (rubric_id.empty() ? "" : " for rubric '" + rubric_id + "'"));
  }
  return {rubric_id, SignalKind::irr, static_cast<double>(agree) / static_cast<double>(total)};
}

SignalScore alignment_signal(const std::vector<PreferenceLabel>& labels,
                             const std::string& reference_labeler,
                             const std::vector<std::string>& weak_labelers) {
  if (std::find(weak_labelers.begin(), weak_labelers.end(), reference_labeler) != weak_labelers.end()) {
    throw UsageError("invalid_panel", "weak labelers must exclude the reference labeler");
  }
  std::string rubric_id;
  auto verdicts = index_verdicts(labels, &rubric_id);
  std::int64_t match = 0, total = 0;
  for (const auto& [pair, by_labeler] : verdicts) {
    auto ref = by_labeler.find(reference_labeler);
    if (ref == by_labeler.end()) continue;
    for (const auto& w : weak_labelers) {
      auto it = by_labeler.find(w);
      if (it == by_labeler.end()) continue;
      ++total;
      if (it->second == ref->second) ++match;
    }
  }
  if (total == 0) {
    throw DataError("empty_denominator", "no pair has verdicts from both the reference '" +
                                             reference_labeler + "' and a weak labeler");
  }
  return {rubric_id, SignalKind::alignment, static_cast<double>(match) / static_cast<double>(total)};
}

double population_variance(const std::vector<double>& values) {
  if (values.empty()) throw DataError("empty_denominator", "variance of an empty list");
  double n = static_cast<double>(values.size());
  double mean = 0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return ss / n;
}

double parse_score_reply(std::string_view raw, const std::string& response_id) {
  auto doc = extract_json_object(raw);
  if (!doc || !doc->contains("score") || !doc->at("score").is_number()) {
    throw MalformedResponse("score reply has no numeric 'score'");
  }
  double s = doc->at("score").get<double>();
  if (!(s >= 0.0 && s <= 10.0)) {
    throw DataError("score_out_of_range", "score " + format_fixed(s, 3) + " for response '" +
                                              response_id + "' is outside [0, 10]");
  }
  return s;
}

SignalScore reward_variance_from_scores(const std::string& rubric_id,
                                        const std::vector<JudgeScore>& scores) {
  if (scores.size() < 2) {
    throw DataError("insufficient_data", "reward variance for '" + rubric_id + "' needs >= 2 scores");
  }
  std::vector<double> values;
  for (const auto& s : scores) {
    if (s.rubric_id != rubric_id) throw DataError("mixed_rubrics", "score for another rubric");
    if (!(s.normalized >= 0.0 && s.normalized <= 1.0)) {
      throw DataError("score_out_of_range", "normalized score for response '" + s.response_id +
                                                "' is outside [0, 1]");
    }
    values.push_back(s.normalized);
  }
  return {rubric_id, SignalKind::reward_variance, population_variance(values)};
}

RewardVarianceResult reward_variance_signal(const Rubric& rubric, Provider& judge,
                                            Provider& responder, int k, ResponseCache* cache,
                                            const std::string& score_prompt) {
  if (k < 2) throw UsageError("invalid_argument", "reward variance needs k >= 2");
  RewardVarianceResult out;
  out.responses = generate_responses(rubric, {&responder}, k, cache);
  const std::string& tmpl = score_prompt.empty() ? std::string(kDefaultScorePrompt) : score_prompt;
  out.judge_scores.resize(out.responses.size());
  parallel_for(out.responses.size(), static_cast<std::size_t>(judge.config().max_concurrent),
               [&](std::size_t i) {
    const auto& r = out.responses[i];
    auto prompt = fill_template(tmpl, {{"input_context", rubric.input_context},
                                       {"rubric", rubric.rubric_text},
                                       {"response", r.text}});
    auto outcome = cached_completion(judge, cache, prompt, 0, [&](const std::string& raw) {
      (void)parse_score_reply(raw, r.response_id);
    });
    JudgeScore s;
    s.rubric_id = rubric.id;
    s.response_id = r.response_id;
    s.judge_id = judge.config().provider_id;
    s.raw_score = parse_score_reply(outcome.raw, r.response_id);
    s.normalized = s.raw_score / 10.0;
    s.attempts = outcome.attempts;
    out.judge_scores[i] = s;
  });
  out.score = reward_variance_from_scores(rubric.id, out.judge_scores);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> ids_of(const std::vector<ProviderConfig>& configs) {
  std::vector<std::string> out;
  for (const auto& c : configs) out.push_back(c.provider_id);
  return out;
}

std::vector<PreferenceLabel> filter_labelers(const std::vector<PreferenceLabel>& labels,
                                             const std::string& rubric_id,
                                             const std::set<std::string>& labelers) {
  std::vector<PreferenceLabel> out;
  for (const auto& l : labels) {
    if (l.rubric_id == rubric_id && labelers.contains(l.labeler_id)) out.push_back(l);
  }
  return out;
}

bool wants(const std::vector<SignalKind>& signals, SignalKind s) {
  return std::find(signals.begin(), signals.end(), s) != signals.end();
}

}  // namespace

std::vector<SignalScore> compute_signals(const std::vector<std::string>& rubric_ids,
                                         const std::vector<PreferenceLabel>& preferences,
                                         const std::vector<JudgeScore>& judge_scores,
                                         const PanelConfig& panel,
                                         const std::vector<SignalKind>& signals) {
  auto labeler_ids = ids_of(panel.labelers);
  auto weak_ids = ids_of(panel.weak_labelers);
  std::set<std::string> irr_set(labeler_ids.begin(), labeler_ids.end());
  std::set<std::string> align_set(weak_ids.begin(), weak_ids.end());
  align_set.insert(panel.reference_labeler.provider_id);

  std::vector<SignalScore> out;
  for (const auto& id : rubric_ids) {
    if (wants(signals, SignalKind::irr)) {
      auto s = irr_signal(filter_labelers(preferences, id, irr_set));
      s.rubric_id = id;
      out.push_back(s);
    }
    if (wants(signals, SignalKind::alignment)) {
      auto s = alignment_signal(filter_labelers(preferences, id, align_set),
                                panel.reference_labeler.provider_id, weak_ids);
      s.rubric_id = id;
      out.push_back(s);
    }
    if (wants(signals, SignalKind::reward_variance)) {
      std::vector<JudgeScore> mine;
      for (const auto& s : judge_scores) {
        if (s.rubric_id == id && s.judge_id == panel.variance_judge.provider_id) mine.push_back(s);
      }
      out.push_back(reward_variance_from_scores(id, mine));
    }
  }
  return out;
}

SignalRunResult run_signal_panel(const std::vector<Rubric>& rubrics, const PanelConfig& panel,
                                 const SignalRunOptions& options) {
  validate_panel(panel);
  std::map<std::string, std::unique_ptr<Provider>> pool;
  auto get = [&](const ProviderConfig& c) -> Provider* {
    auto& slot = pool[c.provider_id];
    if (!slot) slot = make_provider(c);
    return slot.get();
  };
  std::vector<Provider*> responders;
  for (const auto& c : panel.responders) responders.push_back(get(c));

  // One labeling pass covers both the IRR panel and the alignment panel.
  std::vector<Provider*> labelers;
  std::set<std::string> seen;
  auto add_labeler = [&](const ProviderConfig& c) {
    if (seen.insert(c.provider_id).second) labelers.push_back(get(c));
  };
  if (wants(options.signals, SignalKind::irr)) {
    for (const auto& c : panel.labelers) add_labeler(c);
  }
  if (wants(options.signals, SignalKind::alignment)) {
    add_labeler(panel.reference_labeler);
    for (const auto& c : panel.weak_labelers) add_labeler(c);
  }
  Provider* judge = get(panel.variance_judge);
  Provider* variance_responder = responders.front();
  if (panel.variance_responder) variance_responder = get(*std::find_if(
      panel.responders.begin(), panel.responders.end(),
      [&](const auto& r) { return r.provider_id == *panel.variance_responder; }));

  SignalRunResult result;
  PreferenceOptions pref_options;
  pref_options.prompt_template = panel.preference_prompt;
  pref_options.seed = panel.seed;
  pref_options.cache = options.cache;
  std::vector<std::string> rubric_ids;
  for (const auto& rubric : rubrics) {
    rubric_ids.push_back(rubric.id);
    if (!labelers.empty()) {
      auto responses = generate_responses(rubric, responders, 1, options.cache);
      auto labels = label_preferences(rubric, responses, labelers, pref_options);
      result.responses.insert(result.responses.end(), responses.begin(), responses.end());
      result.preferences.insert(result.preferences.end(), labels.begin(), labels.end());
    }
    if (wants(options.signals, SignalKind::reward_variance)) {
      auto rv = reward_variance_signal(rubric, *judge, *variance_responder, panel.responses_per_input,
                                       options.cache, panel.score_prompt);
      for (auto& r : rv.responses) {
        bool dup = std::any_of(result.responses.begin(), result.responses.end(),
                               [&](const auto& x) { return x.response_id == r.response_id; });
        if (!dup) result.responses.push_back(r);
      }
      result.judge_scores.insert(result.judge_scores.end(), rv.judge_scores.begin(),
                                 rv.judge_scores.end());
    }
  }
  result.scores = compute_signals(rubric_ids, result.preferences, result.judge_scores, panel,
                                  options.signals);

  if (!options.out_dir.empty()) {
    std::filesystem::create_directories(options.out_dir);
    auto dump = [&](const char* name, const auto& rows) {
      std::vector<Json> json_rows;
      for (const auto& r : rows) json_rows.push_back(Json(r));
      write_jsonl(options.out_dir / name, json_rows);
    };
    dump("responses.jsonl", result.responses);
    dump("preferences.jsonl", result.preferences);
    dump("judge_scores.jsonl", result.judge_scores);
    dump("signal_scores.jsonl", result.scores);
  }
  return result;
}

std::vector<SignalScore> load_signal_scores(const std::filesystem::path& path) {
  std::vector<SignalScore> out;
  for_each_jsonl(path, [&](std::size_t line, const Json& j) {
    try {
      out.push_back(j.get<SignalScore>());
    } catch (const Json::exception& e) {
      throw DataError("invalid_record", path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return out;
}

std::vector<PreferenceLabel> load_preferences(const std::filesystem::path& path) {
  std::vector<PreferenceLabel> out;
  for_each_jsonl(path, [&](std::size_t line, const Json& j) {
    try {
      out.push_back(j.get<PreferenceLabel>());
    } catch (const Json::exception& e) {
      throw DataError("invalid_record", path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return out;
}

}  // namespace rift
