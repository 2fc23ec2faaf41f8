#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracle_suite.hpp"
#include "oracles.hpp"
#include "rift/error.hpp"
#include "rift/metrics.hpp"

using namespace rift;
using namespace rift::testing;

namespace {

std::vector<Cell> cells(std::initializer_list<int> v) {
  std::vector<Cell> out;
  for (int x : v) out.push_back(x < 0 ? Cell{} : Cell{x == 1});
  return out;
}

template <class F>
std::string error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST(OracleSuite, RandomFixturesMatchBruteForce) {
  auto rep = run_oracle_suite(300, 1000);
  EXPECT_EQ(rep.fixtures, 300);
  for (const auto& m : rep.mismatches) ADD_FAILURE() << m;
}

// Pairwise agreement ---------------------------------------------------------

TEST(PairwiseAgreement, IdenticalRatersAgreeFully) {
  auto m = BinaryMatrix::from_rows({cells({1, 1, 1}), cells({0, 0, 0}), cells({1, 1, 1})});
  EXPECT_DOUBLE_EQ(pairwise_agreement(m), 1.0);
}

TEST(PairwiseAgreement, TwoRatersDirectRatio) {
  auto m = BinaryMatrix::from_rows({cells({1, 1}), cells({0, 1}), cells({1, 1})});
  EXPECT_NEAR(pairwise_agreement(m), 2.0 / 3.0, 1e-12);
}

TEST(PairwiseAgreement, ThreeRaterFixture) {
  auto m = BinaryMatrix::from_rows({cells({1, 1, 0}), cells({0, 0, 0})});
  EXPECT_NEAR(pairwise_agreement(m), 4.0 / 6.0, 1e-12);
  EXPECT_NEAR(pairwise_agreement(m), *oracle::pwa({{1, 1, 0}, {0, 0, 0}}), 1e-12);
}

TEST(PairwiseAgreement, SingleRaterIsAnError) {
  auto m = BinaryMatrix::from_rows({cells({1}), cells({0})});
  EXPECT_EQ(error_code([&] { pairwise_agreement(m); }), "insufficient_raters");
}

// Kappa ----------------------------------------------------------------------

TEST(CohenKappa, HandFixture) {
  auto a = cells({1, 1, 1, 1, 1, 0, 0, 0, 0, 0});
  auto b = cells({1, 1, 1, 1, 0, 1, 0, 0, 0, 0});
  auto k = cohen_kappa(a, b);
  ASSERT_TRUE(k);
  EXPECT_NEAR(*k, 0.6, 1e-12);
}

TEST(CohenKappa, IdenticalNonConstantColumns) {
  auto a = cells({1, 0, 1, 0, 0});
  EXPECT_NEAR(*cohen_kappa(a, a), 1.0, 1e-12);
}

TEST(CohenKappa, BothAllZeroIsUndefined) {
  auto a = cells({0, 0, 0, 0});
  EXPECT_FALSE(cohen_kappa(a, a).has_value());
}

TEST(CohenKappa, IgnoresItemsNotCoRated) {
  auto a = cells({1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 1});
  auto b = cells({1, 1, 1, 1, 0, 1, 0, 0, 0, 0, -1});
  EXPECT_NEAR(*cohen_kappa(a, b), 0.6, 1e-12);
}

TEST(MeanPairwiseKappa, TwoRatersEqualsCohen) {
  auto m = BinaryMatrix::from_rows({cells({1, 1}), cells({1, 0}), cells({0, 0}), cells({0, 1}),
                                    cells({1, 1})});
  EXPECT_NEAR(mean_pairwise_kappa(m), *cohen_kappa(m.column(0), m.column(1)), 1e-12);
}

TEST(MeanPairwiseKappa, AveragesHandComputedPairs) {
  // No complete 3-rater matrix yields pair kappas (0.6, 0.6, 0.0), so each
  // pair is rated on its own block of items.
  std::vector<int> a{1, 1, 1, 1, 1, 0, 0, 0, 0, 0}, b{1, 1, 1, 1, 0, 1, 0, 0, 0, 0};
  std::vector<oracle::Row> rows;
  for (int i = 0; i < 10; ++i) rows.push_back({a[i], b[i], -1});   // (r0, r1): 0.6
  for (int i = 0; i < 10; ++i) rows.push_back({a[i], -1, b[i]});   // (r0, r2): 0.6
  std::vector<int> c{1, 1, 0, 0}, d{1, 0, 1, 0};
  for (int i = 0; i < 4; ++i) rows.push_back({-1, c[i], d[i]});    // (r1, r2): 0.0
  auto m = to_matrix(rows);
  EXPECT_NEAR(*cohen_kappa(m.column(0), m.column(1)), 0.6, 1e-12);
  EXPECT_NEAR(*cohen_kappa(m.column(0), m.column(2)), 0.6, 1e-12);
  EXPECT_NEAR(*cohen_kappa(m.column(1), m.column(2)), 0.0, 1e-12);
  EXPECT_NEAR(mean_pairwise_kappa(m), 0.4, 1e-12);
}

TEST(MeanPairwiseKappa, AllConstantIdenticalIsUndefined) {
  auto m = BinaryMatrix::from_rows({cells({0, 0, 0}), cells({0, 0, 0})});
  EXPECT_EQ(error_code([&] { mean_pairwise_kappa(m); }), "kappa_undefined");
}

// Alpha ----------------------------------------------------------------------

TEST(KrippendorffAlpha, PerfectAgreementMixedMarginals) {
  auto m = BinaryMatrix::from_rows({cells({1, 1}), cells({0, 0}), cells({1, 1})});
  EXPECT_NEAR(krippendorff_alpha(m), 1.0, 1e-12);
}

TEST(KrippendorffAlpha, AdversarialFixture) {
  auto m = BinaryMatrix::from_rows({cells({1, 0}), cells({0, 1}), cells({1, 0}), cells({0, 1})});
  EXPECT_NEAR(krippendorff_alpha(m), -0.75, 1e-12);
}

TEST(KrippendorffAlpha, MissingCellContributesOnlyPairableValues) {
  std::vector<oracle::Row> rows{{1, 1, -1}, {0, 0, 1}, {1, 0, 1}, {0, -1, -1}};
  EXPECT_NEAR(krippendorff_alpha(to_matrix(rows)), *oracle::alpha(rows), 1e-12);
  // The lone value in the last item does not change the result.
  rows.pop_back();
  EXPECT_NEAR(krippendorff_alpha(to_matrix({{1, 1, -1}, {0, 0, 1}, {1, 0, 1}, {0, -1, -1}})),
              krippendorff_alpha(to_matrix(rows)), 1e-12);
}

TEST(KrippendorffAlpha, SingleValueIsDegenerate) {
  auto m = BinaryMatrix::from_rows({cells({1, 1}), cells({1, 1})});
  EXPECT_EQ(error_code([&] { krippendorff_alpha(m); }), "degenerate_data");
}

// Gold -----------------------------------------------------------------------

TEST(ConsolidateGold, StrictMajority) {
  EXPECT_TRUE(consolidate_gold(cells({1, 1, 0})));
  EXPECT_FALSE(consolidate_gold(cells({1, 0, 0})));
  EXPECT_FALSE(consolidate_gold(cells({0, 0, 0})));
  EXPECT_FALSE(consolidate_gold(cells({1, 0})));
  EXPECT_TRUE(consolidate_gold(cells({1, 1, -1})));
}

// Threshold sweep -------------------------------------------------------------

TEST(F1Sweep, HandFixture) {
  std::vector<double> s{0.1, 0.4, 0.35, 0.8};
  auto r = f1_threshold_sweep(s, {false, false, true, true});
  EXPECT_EQ(r.direction, Direction::greater_equal);
  EXPECT_NEAR(r.f1, 0.8, 1e-12);
  EXPECT_NEAR(r.f1, oracle::best_f1(s, {0, 0, 1, 1}), 1e-12);
  ASSERT_TRUE(r.auc);
  EXPECT_NEAR(*r.auc, 0.75, 1e-12);
}

TEST(F1Sweep, PerfectSeparation) {
  std::vector<double> s{0.1, 0.2, 0.8, 0.9};
  EXPECT_NEAR(f1_threshold_sweep(s, {false, false, true, true}).f1, 1.0, 1e-12);
  auto low = f1_threshold_sweep(s, {true, true, false, false});
  EXPECT_NEAR(low.f1, 1.0, 1e-12);
  EXPECT_EQ(low.direction, Direction::less_equal);
}

TEST(F1Sweep, NoPositivesIsAnError) {
  std::vector<double> s{0.1, 0.2};
  EXPECT_EQ(error_code([&] { f1_threshold_sweep(s, {false, false}); }), "no_positives");
}

TEST(F1Sweep, AllPositivesHasNoAuc) {
  std::vector<double> s{0.1, 0.2};
  auto r = f1_threshold_sweep(s, {true, true});
  EXPECT_NEAR(r.f1, 1.0, 1e-12);
  EXPECT_FALSE(r.auc.has_value());
}

TEST(F1Sweep, BestThresholdBeatsEveryCandidate) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto f = random_fixture(seed + 77);
    if (std::count(f.gold.begin(), f.gold.end(), 1) == 0) continue;
    auto gold = to_bools(f.gold);
    auto best = f1_threshold_sweep(f.scores, gold);
    for (double t : candidate_thresholds(f.scores)) {
      for (auto d : {Direction::greater_equal, Direction::less_equal}) {
        EXPECT_LE(confusion_at(f.scores, gold, t, d).f1(), best.f1 + 1e-12);
      }
    }
  }
}

TEST(F1Sweep, InvariantUnderMonotoneTransform) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto f = random_fixture(seed + 500);
    if (std::count(f.gold.begin(), f.gold.end(), 1) == 0) continue;
    auto gold = to_bools(f.gold);
    std::vector<double> t;
    for (double s : f.scores) t.push_back(std::exp(3 * s) + 2);
    EXPECT_NEAR(f1_threshold_sweep(f.scores, gold).f1, f1_threshold_sweep(t, gold).f1, 1e-12);
  }
}

TEST(CandidateThresholds, InfinitiesAndMidpoints) {
  std::vector<double> s{0.3, 0.1, 0.3};
  auto c = candidate_thresholds(s);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.front(), -std::numeric_limits<double>::infinity());
  EXPECT_NEAR(c[1], 0.2, 1e-12);
  EXPECT_EQ(c.back(), std::numeric_limits<double>::infinity());
}

// AUC ------------------------------------------------------------------------

TEST(Auc, HandFixture) {
  std::vector<double> s{0.1, 0.4, 0.35, 0.8};
  std::vector<bool> g{false, false, true, true};
  EXPECT_NEAR(roc_auc_raw(s, g), 0.75, 1e-12);
  EXPECT_NEAR(roc_auc_direction_agnostic(s, g), 0.75, 1e-12);
}

TEST(Auc, AntiCorrelatedFoldsToOne) {
  std::vector<double> s{0.9, 0.8, 0.2, 0.1};
  std::vector<bool> g{false, false, true, true};
  EXPECT_NEAR(roc_auc_raw(s, g), 0.0, 1e-12);
  EXPECT_NEAR(roc_auc_direction_agnostic(s, g), 1.0, 1e-12);
}

TEST(Auc, AllTiesIsOneHalf) {
  std::vector<double> s{0.5, 0.5, 0.5};
  EXPECT_NEAR(roc_auc_direction_agnostic(s, {true, false, true}), 0.5, 1e-12);
}

TEST(Auc, SingleClassIsAnError) {
  std::vector<double> s{0.5, 0.2};
  EXPECT_EQ(error_code([&] { roc_auc_direction_agnostic(s, {true, true}); }), "single_class");
}

TEST(Auc, DirectionAgnosticIsAtLeastOneHalf) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto f = random_fixture(seed + 9000);
    if (std::count(f.gold.begin(), f.gold.end(), 1) == 0 ||
        std::count(f.gold.begin(), f.gold.end(), 0) == 0) {
      continue;
    }
    EXPECT_GE(roc_auc_direction_agnostic(f.scores, to_bools(f.gold)), 0.5);
  }
}

TEST(Auc, RankInvariant) {
  auto f = random_fixture(42);
  f.gold[0] = 1;
  f.gold[1] = 0;
  std::vector<double> t;
  for (double s : f.scores) t.push_back(s * s * s);
  EXPECT_NEAR(roc_auc_raw(f.scores, to_bools(f.gold)), roc_auc_raw(t, to_bools(f.gold)), 1e-12);
}

// Correlation -----------------------------------------------------------------

TEST(Pearson, ExactLinearity) {
  std::vector<double> x{1, 2, 3}, y{2, 4, 6};
  EXPECT_NEAR(pearson_r(x, y, 100, 1).r, 1.0, 1e-12);
}

TEST(Pearson, HandFixture) {
  std::vector<double> x{1, 2, 3, 4}, y{2, 1, 4, 3};
  EXPECT_NEAR(pearson_r(x, y, 100, 1).r, 0.6, 1e-12);
}

TEST(Pearson, ConstantIsZeroVariance) {
  std::vector<double> x{1, 2, 3}, y{5, 5, 5};
  EXPECT_EQ(error_code([&] { pearson_r(x, y, 10, 1); }), "zero_variance");
}

TEST(Pearson, AffineImagesGiveUnitMagnitude) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto f = random_fixture(seed + 300);
    bool constant = std::all_of(f.y.begin(), f.y.end(), [&](double v) { return v == f.y[0]; });
    if (f.y.size() < 3 || constant) continue;
    std::vector<double> up, down;
    for (double v : f.y) {
      up.push_back(2.5 * v + 1);
      down.push_back(-0.5 * v + 3);
    }
    EXPECT_NEAR(pearson_coefficient(f.y, up), 1.0, 1e-9);
    EXPECT_NEAR(pearson_coefficient(f.y, down), -1.0, 1e-9);
  }
}

TEST(Pearson, PermutationPValueIsSeededAndBounded) {
  std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8}, y{2, 1, 4, 3, 6, 5, 8, 9};
  auto a = pearson_r(x, y, 2000, 5), b = pearson_r(x, y, 2000, 5);
  EXPECT_EQ(a.p_value, b.p_value);
  EXPECT_GT(a.p_value, 0.0);
  EXPECT_LT(a.p_value, 0.05);
  EXPECT_GE(a.p_value, 1.0 / 2001.0);
}

TEST(MeanDifference, IdenticalGroupsHaveZeroDifference) {
  std::vector<double> v{3, 3, 4, 4, 3, 3, 4, 4};
  std::vector<bool> g{true, true, true, true, false, false, false, false};
  auto r = permutation_mean_difference(v, g, 1000, 3);
  EXPECT_NEAR(r.difference, 0.0, 1e-12);
  EXPECT_NEAR(r.p_value, 1.0, 1e-12);
}

TEST(MeanDifference, GroupMeans) {
  std::vector<double> v{4, 4, 3, 3, 3, 3};
  std::vector<bool> g{true, true, false, false, false, false};
  auto r = permutation_mean_difference(v, g, 500, 1);
  EXPECT_NEAR(r.mean_positive, 4.0, 1e-12);
  EXPECT_NEAR(r.mean_negative, 3.0, 1e-12);
  EXPECT_EQ(r.n_positive, 2u);
}

// Prevalence -----------------------------------------------------------------

TEST(Prevalence, TenthsRounding) {
  EXPECT_EQ(render_tenths_percent(percent_tenths(10, 19)), "52.6%");
  EXPECT_EQ(render_tenths_percent(percent_tenths(0, 19)), "0.0%");
  EXPECT_EQ(render_tenths_percent(mean_tenths({526, 263, 421})), "40.3%");
}

TEST(Prevalence, TableOnNineteenRubrics) {
  auto taxonomy = load_default_taxonomy();
  std::vector<Rubric> rubrics;
  std::map<std::string, std::set<std::string>> gold;
  for (int i = 0; i < 19; ++i) {
    Rubric e;
    e.id = "e" + std::to_string(i);
    e.origin = Origin::expert;
    rubrics.push_back(e);
    gold[e.id] = {};
    if (i < 10) gold[e.id].insert("subjective");
    if (i < 5) gold[e.id].insert("non_atomic");
    if (i < 8) gold[e.id].insert("ungrounded");
    Rubric s = e;
    s.id = "s" + std::to_string(i);
    s.origin = Origin::synthetic;
    rubrics.push_back(s);
    gold[s.id] = {};
  }
  auto table = prevalence_table(gold, rubrics, taxonomy);
  std::map<std::string, std::string> expert;
  for (const auto& row : table.rows) expert[row.label] = row.by_origin.at(Origin::expert).rendered();
  EXPECT_EQ(expert["subjective"], "52.6%");
  EXPECT_EQ(expert["non_atomic"], "26.3%");
  EXPECT_EQ(expert["ungrounded"], "42.1%");
}

TEST(Prevalence, EmptyOriginIsAnError) {
  auto taxonomy = load_default_taxonomy();
  Rubric e;
  e.id = "e";
  EXPECT_EQ(error_code([&] { prevalence_table({{"e", {}}}, {e}, taxonomy); }), "empty_subset");
}
