#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "rift/error.hpp"
#include "rift/signals.hpp"
#include "support.hpp"

using namespace rift;
using namespace rift::testing;

namespace {

PreferenceLabel label(const std::string& a, const std::string& b, const std::string& labeler,
                      std::optional<Preference> v) {
  PreferenceLabel l;
  l.rubric_id = "r1";
  l.response_a = a;
  l.response_b = b;
  l.labeler_id = labeler;
  l.verdict = v;
  l.presented_first = a;
  l.presented_second = b;
  return l;
}

using P = Preference;

std::vector<PreferenceLabel> four_labeler_fixture() {
  std::vector<PreferenceLabel> out;
  std::vector<P> pair1{P::A, P::A, P::A, P::B};
  std::vector<P> pair2{P::A, P::B, P::TIE, P::A};
  for (int l = 0; l < 4; ++l) {
    out.push_back(label("x1", "x2", "lab" + std::to_string(l), pair1[l]));
    out.push_back(label("x3", "x4", "lab" + std::to_string(l), pair2[l]));
  }
  return out;
}

JudgeScore score(const std::string& id, double normalized) {
  return {"r1", id, "judge", normalized * 10, normalized, 1};
}

struct Owned {
  std::vector<std::unique_ptr<Provider>> owned;
  std::vector<Provider*> ptrs;
  void add(const ProviderConfig& c) {
    owned.push_back(make_provider(c));
    ptrs.push_back(owned.back().get());
  }
};

}  // namespace

TEST(Irr, FourLabelerFixtureIsFourOfTwelve) {
  auto s = irr_signal(four_labeler_fixture());
  EXPECT_NEAR(s.value, 4.0 / 12.0, 1e-12);
  EXPECT_EQ(s.signal, SignalKind::irr);
}

TEST(Irr, TwoLabelersAgreeOnOneOfTwoPairs) {
  std::vector<PreferenceLabel> l{label("a", "b", "p", P::A), label("a", "b", "q", P::A),
                                 label("c", "d", "p", P::B), label("c", "d", "q", P::TIE)};
  EXPECT_DOUBLE_EQ(irr_signal(l).value, 0.5);
}

TEST(Irr, IdenticalLabelersGiveOne) {
  std::vector<PreferenceLabel> l;
  for (int lab = 0; lab < 4; ++lab) {
    l.push_back(label("a", "b", "l" + std::to_string(lab), P::A));
    l.push_back(label("a", "c", "l" + std::to_string(lab), P::TIE));
  }
  EXPECT_DOUBLE_EQ(irr_signal(l).value, 1.0);
}

TEST(Irr, AbstentionsShrinkTheDenominator) {
  auto l = four_labeler_fixture();
  l.push_back(label("x5", "x6", "lab0", std::nullopt));
  l.push_back(label("x5", "x6", "lab1", P::A));
  EXPECT_NEAR(irr_signal(l).value, 4.0 / 12.0, 1e-12);
}

TEST(Irr, EmptyDenominatorThrows) {
  std::vector<PreferenceLabel> l{label("a", "b", "p", P::A), label("a", "b", "q", std::nullopt)};
  try {
    irr_signal(l);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_EQ(e.code(), "empty_denominator");
  }
}

TEST(Irr, DuplicateLabelRejected) {
  std::vector<PreferenceLabel> l{label("a", "b", "p", P::A), label("b", "a", "p", P::B)};
  EXPECT_THROW(irr_signal(l), DataError);
}

TEST(Irr, InvariantUnderRelabelAndSwap) {
  auto base = four_labeler_fixture();
  double expected = irr_signal(base).value;
  auto relabeled = base;
  std::map<std::string, std::string> rename{{"x1", "zz9"}, {"x2", "aa1"}, {"x3", "m"}, {"x4", "b"}};
  for (auto& l : relabeled) {
    l.response_a = rename[l.response_a];
    l.response_b = rename[l.response_b];
  }
  EXPECT_DOUBLE_EQ(irr_signal(relabeled).value, expected);
  auto swapped_labels = base;
  for (std::size_t i = 0; i < swapped_labels.size(); i += 3) {
    auto& l = swapped_labels[i];
    std::swap(l.response_a, l.response_b);
    l.verdict = swapped(*l.verdict);
  }
  EXPECT_DOUBLE_EQ(irr_signal(swapped_labels).value, expected);
}

TEST(Alignment, FourOfSixMatches) {
  std::vector<PreferenceLabel> l{label("a", "b", "ref", P::A), label("c", "d", "ref", P::B),
                                 label("a", "b", "w1", P::A),  label("c", "d", "w1", P::B),
                                 label("a", "b", "w2", P::A),  label("c", "d", "w2", P::TIE),
                                 label("a", "b", "w3", P::B),  label("c", "d", "w3", P::B)};
  auto s = alignment_signal(l, "ref", {"w1", "w2", "w3"});
  EXPECT_NEAR(s.value, 4.0 / 6.0, 1e-12);
  EXPECT_EQ(s.signal, SignalKind::alignment);
}

TEST(Alignment, AllAndNone) {
  std::vector<PreferenceLabel> all, none;
  for (const auto& w : {"ref", "w1", "w2", "w3"}) {
    all.push_back(label("a", "b", w, P::A));
    none.push_back(label("a", "b", w, std::string(w) == "ref" ? P::A : P::B));
  }
  EXPECT_DOUBLE_EQ(alignment_signal(all, "ref", {"w1", "w2", "w3"}).value, 1.0);
  EXPECT_DOUBLE_EQ(alignment_signal(none, "ref", {"w1", "w2", "w3"}).value, 0.0);
}

TEST(Alignment, ReferenceAmongWeakRejected) {
  std::vector<PreferenceLabel> l{label("a", "b", "ref", P::A)};
  EXPECT_THROW(alignment_signal(l, "ref", {"ref"}), UsageError);
}

TEST(Alignment, SwapInvariance) {
  std::vector<PreferenceLabel> l{label("a", "b", "ref", P::A), label("a", "b", "w1", P::A),
                                 label("a", "b", "w2", P::B)};
  double expected = alignment_signal(l, "ref", {"w1", "w2"}).value;
  std::swap(l[1].response_a, l[1].response_b);
  l[1].verdict = P::B;
  EXPECT_DOUBLE_EQ(alignment_signal(l, "ref", {"w1", "w2"}).value, expected);
}

TEST(RewardVariance, ConstantAndAlternating) {
  EXPECT_DOUBLE_EQ(
      reward_variance_from_scores("r1", {score("a", .5), score("b", .5), score("c", .5), score("d", .5)})
          .value,
      0.0);
  EXPECT_DOUBLE_EQ(
      reward_variance_from_scores("r1", {score("a", 0), score("b", 1), score("c", 0), score("d", 1)})
          .value,
      0.25);
}

TEST(RewardVariance, PermutationInvariantAndZeroIffEqual) {
  Rng rng(42);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> v;
    std::size_t k = 2 + rng.below(6);
    for (std::size_t i = 0; i < k; ++i) v.push_back(static_cast<double>(rng.below(11)) / 10.0);
    double base = population_variance(v);
    auto shuffled = v;
    deterministic_shuffle(shuffled, rng);
    EXPECT_NEAR(population_variance(shuffled), base, 1e-15);
    bool all_equal = std::all_of(v.begin(), v.end(), [&](double x) { return x == v[0]; });
    EXPECT_EQ(base == 0.0, all_equal);
    EXPECT_LE(base, 0.25 + 1e-15);
  }
}

TEST(RewardVariance, OutOfRangeScoreNamesResponse) {
  try {
    parse_score_reply(R"({"score": 11})", "resp-7");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_EQ(e.code(), "score_out_of_range");
    EXPECT_NE(std::string(e.what()).find("resp-7"), std::string::npos);
  }
  EXPECT_THROW(parse_score_reply("no json here", "r"), MalformedResponse);
  EXPECT_DOUBLE_EQ(parse_score_reply(R"(Sure. {"score": 7.5})", "r"), 7.5);
}

TEST(RewardVariance, MockJudgeEndToEnd) {
  auto judge = make_provider(mock_provider("vj", 0.0));
  auto responder = make_provider(mock_provider("resp"));
  auto r = reward_variance_signal(make_rubric("r1"), *judge, *responder, 4);
  ASSERT_EQ(r.judge_scores.size(), 4u);
  std::vector<double> v;
  for (const auto& s : r.judge_scores) v.push_back(s.normalized);
  EXPECT_DOUBLE_EQ(r.score.value, population_variance(v));
  EXPECT_THROW(reward_variance_signal(make_rubric("r1"), *judge, *responder, 1), UsageError);
}

TEST(Responses, CountsIdsAndDeterminism) {
  Owned responders;
  for (int i = 0; i < 6; ++i) responders.add(mock_provider("resp" + std::to_string(i)));
  auto rubric = make_rubric("r1");
  auto first = generate_responses(rubric, responders.ptrs, 1, nullptr);
  auto second = generate_responses(rubric, responders.ptrs, 1, nullptr);
  ASSERT_EQ(first.size(), 6u);
  EXPECT_EQ(first, second);
  EXPECT_EQ(first[2].response_id, response_id_for("resp2", "r1", 0));

  Owned labelers;
  for (int i = 0; i < 4; ++i) labelers.add(mock_provider("lab" + std::to_string(i), 0.0));
  auto labels = label_preferences(rubric, first, labelers.ptrs, {});
  EXPECT_EQ(labels.size(), 60u);
  std::set<std::tuple<std::string, std::string, std::string>> unique;
  for (const auto& l : labels) {
    EXPECT_NE(l.response_a, l.response_b);
    EXPECT_TRUE(l.verdict.has_value());
    unique.insert({l.response_a, l.response_b, l.labeler_id});
  }
  EXPECT_EQ(unique.size(), 60u);
  EXPECT_EQ(label_preferences(rubric, first, labelers.ptrs, {}), labels);

  auto two = generate_responses(rubric, {responders.ptrs[0], responders.ptrs[1]}, 1, nullptr);
  EXPECT_EQ(label_preferences(rubric, two, {labelers.ptrs[0]}, {}).size(), 1u);
}

TEST(Preferences, AlwaysAPrefersThePresentedFirst) {
  Owned responders;
  for (int i = 0; i < 6; ++i) responders.add(mock_provider("resp" + std::to_string(i)));
  auto rubric = make_rubric("r1");
  auto responses = generate_responses(rubric, responders.ptrs, 1, nullptr);
  auto cfg = mock_provider("always_a", 0.0);
  cfg.fixtures.push_back({"", std::nullopt, {"A"}});
  Owned labelers;
  labelers.add(cfg);
  auto labels = label_preferences(rubric, responses, labelers.ptrs, {});
  ASSERT_EQ(labels.size(), 15u);
  int presented_first_wins = 0, flipped = 0;
  for (const auto& l : labels) {
    ASSERT_TRUE(l.verdict);
    bool flip = l.presented_first != l.response_a;
    flipped += flip;
    auto winner = *l.verdict == P::A ? l.response_a : l.response_b;
    presented_first_wins += winner == l.presented_first;
  }
  EXPECT_EQ(presented_first_wins, 15);
  // The seeded coin should flip some presentations but not all.
  EXPECT_GT(flipped, 0);
  EXPECT_LT(flipped, 15);
}

TEST(Preferences, ScriptedAbstentionOnOnePair) {
  Owned responders;
  for (int i = 0; i < 6; ++i) responders.add(mock_provider("resp" + std::to_string(i)));
  auto rubric = make_rubric("r1");
  auto responses = generate_responses(rubric, responders.ptrs, 1, nullptr);
  Owned labelers;
  for (int i = 0; i < 4; ++i) {
    auto cfg = mock_provider("lab" + std::to_string(i), 0.0);
    if (i == 2) {
      const auto& a = responses[0].text;
      const auto& b = responses[1].text;
      cfg.fixtures.push_back({"## Response A\n" + a + "\n\n## Response B\n" + b, std::nullopt, {"!transport"}});
      cfg.fixtures.push_back({"## Response A\n" + b + "\n\n## Response B\n" + a, std::nullopt, {"!transport"}});
    }
    labelers.add(cfg);
  }
  auto labels = label_preferences(rubric, responses, labelers.ptrs, {});
  ASSERT_EQ(labels.size(), 60u);
  int abstained = 0;
  for (const auto& l : labels) {
    if (!l.verdict) {
      ++abstained;
      EXPECT_EQ(l.labeler_id, "lab2");
      EXPECT_EQ(l.response_a, responses[0].response_id);
      EXPECT_EQ(l.response_b, responses[1].response_id);
      EXPECT_EQ(l.attempts, 3);
    }
  }
  EXPECT_EQ(abstained, 1);
  // IRR over the same labels still computes with the abstention excluded.
  auto s = irr_signal(labels);
  EXPECT_GE(s.value, 0.0);
  EXPECT_LE(s.value, 1.0);
}

TEST(Preferences, JsonRoundTrip) {
  auto l = label("a", "b", "p", P::TIE);
  l.presented_first = "b";
  l.presented_second = "a";
  l.attempts = 2;
  Json j = l;
  EXPECT_EQ(j.get<PreferenceLabel>(), l);
  auto abst = label("a", "b", "p", std::nullopt);
  Json ja = abst;
  EXPECT_TRUE(ja.at("verdict").is_null());
  EXPECT_EQ(ja.get<PreferenceLabel>(), abst);
}

TEST(Panel, Validation) {
  PanelConfig p;
  p.responders = {mock_provider("r1"), mock_provider("r2")};
  p.labelers = {mock_provider("l1"), mock_provider("l2")};
  p.reference_labeler = mock_provider("ref");
  p.weak_labelers = {mock_provider("l1")};
  p.variance_judge = mock_provider("vj");
  EXPECT_NO_THROW(validate_panel(p));
  auto bad = p;
  bad.responders.pop_back();
  EXPECT_THROW(validate_panel(bad), Error);
  bad = p;
  bad.labelers.pop_back();
  EXPECT_THROW(validate_panel(bad), Error);
  bad = p;
  bad.weak_labelers.push_back(mock_provider("ref"));
  EXPECT_THROW(validate_panel(bad), Error);
}

TEST(Panel, RunIsDeterministicAndRecomputable) {
  PanelConfig p;
  p.responders = {mock_provider("r1"), mock_provider("r2"), mock_provider("r3")};
  p.labelers = {mock_provider("l1", 0), mock_provider("l2", 0), mock_provider("l3", 0)};
  p.reference_labeler = mock_provider("l1", 0);
  p.weak_labelers = {mock_provider("l2", 0), mock_provider("l3", 0)};
  p.variance_judge = mock_provider("vj", 0);
  p.responses_per_input = 2;
  p.seed = 9;
  std::vector<Rubric> rubrics{make_rubric("a"), make_rubric("b")};
  auto one = run_signal_panel(rubrics, p);
  auto two = run_signal_panel(rubrics, p);
  EXPECT_EQ(one.scores, two.scores);
  EXPECT_EQ(one.preferences, two.preferences);
  EXPECT_EQ(one.scores.size(), 6u);
  auto again = compute_signals({"a", "b"}, one.preferences, one.judge_scores, p,
                               {SignalKind::irr, SignalKind::alignment, SignalKind::reward_variance});
  EXPECT_EQ(again, one.scores);
  for (const auto& s : one.scores) {
    EXPECT_GE(s.value, 0.0);
    EXPECT_LE(s.value, s.signal == SignalKind::reward_variance ? 0.25 : 1.0);
  }
}
