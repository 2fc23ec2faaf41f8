#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "rift/taxonomy.hpp"
#include "rift/util.hpp"

namespace rift {

/// One binary annotation; nullopt marks a missing cell.
using Cell = std::optional<bool>;

/// Items x raters grid of binary labels with missing cells.
class BinaryMatrix {
 public:
  BinaryMatrix(std::vector<std::string> items, std::vector<std::string> raters);
  /// Rows are items, columns raters; ids are generated ("i0", "r0", ...).
  static BinaryMatrix from_rows(const std::vector<std::vector<Cell>>& rows);

  std::size_t item_count() const { return items_.size(); }
  std::size_t rater_count() const { return raters_.size(); }
  const std::vector<std::string>& items() const { return items_; }
  const std::vector<std::string>& raters() const { return raters_; }

  Cell at(std::size_t item, std::size_t rater) const { return cells_[item * raters_.size() + rater]; }
  void set(std::size_t item, std::size_t rater, Cell value) {
    cells_[item * raters_.size() + rater] = value;
  }
  std::vector<Cell> column(std::size_t rater) const;
  std::vector<Cell> row(std::size_t item) const;

 private:
  std::vector<std::string> items_;
  std::vector<std::string> raters_;
  std::vector<Cell> cells_;
};

/// Fraction of (item, rater pair) combinations with equal values, over the
/// combinations where both values are present.
double pairwise_agreement(const BinaryMatrix& m);

/// Cohen's kappa on co-rated items. nullopt when chance agreement is 1
/// (both raters constant on the same value). Throws if no item is co-rated.
std::optional<double> cohen_kappa(std::span<const Cell> rater_a, std::span<const Cell> rater_b);

/// Mean Cohen's kappa over rater pairs, skipping undefined pairs. Throws
/// DataError("kappa_undefined") if every pair is undefined.
double mean_pairwise_kappa(const BinaryMatrix& m);

/// Nominal Krippendorff's alpha from the coincidence matrix. Items with
/// fewer than two values are not pairable. Throws DataError("degenerate_data")
/// when expected disagreement is zero.
double krippendorff_alpha(const BinaryMatrix& m);

/// Gold consolidation: positive iff strictly more than half of the present
/// votes are positive.
inline constexpr std::string_view kGoldRule = "strict_majority";
bool consolidate_gold(std::span<const Cell> votes);
std::vector<bool> consolidate_gold(const BinaryMatrix& m);

enum class Direction { greater_equal, less_equal };
std::string to_string(Direction d);

struct Confusion {
  std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;

  double precision() const;
  double recall() const;
  /// 2TP / (2TP + FP + FN); 0 when TP = 0.
  double f1() const;
};

Confusion confusion_from_predictions(const std::vector<bool>& predicted, const std::vector<bool>& gold);
Confusion confusion_at(std::span<const double> scores, const std::vector<bool>& gold, double threshold,
                       Direction direction);

/// -inf, midpoints between adjacent distinct sorted scores, +inf.
std::vector<double> candidate_thresholds(std::span<const double> scores);

struct CalibrationResult {
  std::string failure_mode;
  std::string signal;
  double threshold = 0;
  Direction direction = Direction::greater_equal;
  double f1 = 0, precision = 0, recall = 0;
  std::optional<double> auc;  // absent when gold has no negatives
  int n_positive = 0;
};

/// Best-F1 threshold over both directions. Ties go to higher recall, then the
/// lower threshold, then the >= direction. Throws DataError("no_positives").
CalibrationResult f1_threshold_sweep(std::span<const double> scores, const std::vector<bool>& gold);

/// Mann-Whitney AUC (ties count one half), before direction folding.
double roc_auc_raw(std::span<const double> scores, const std::vector<bool>& gold);
/// max(AUC, 1 - AUC). Throws DataError("single_class").
double roc_auc_direction_agnostic(std::span<const double> scores, const std::vector<bool>& gold);

struct CorrelationResult {
  double r = 0;
  double p_value = 1;
  std::size_t n = 0;
  int permutations = 0;
};

double pearson_coefficient(std::span<const double> x, std::span<const double> y);

/// Product-moment r with a two-sided permutation p-value:
/// (1 + #{|r_perm| >= |r|}) / (1 + permutations), permuting y with a
/// generator seeded by `seed`.
CorrelationResult pearson_r(std::span<const double> x, std::span<const double> y,
                            int permutations, std::uint64_t seed);

struct MeanDifferenceResult {
  double mean_positive = 0;  // group flag true
  double mean_negative = 0;
  double difference = 0;
  double p_value = 1;
  std::size_t n_positive = 0, n_negative = 0;
  int permutations = 0;
};

/// Two-sided permutation test on the difference of group means.
MeanDifferenceResult permutation_mean_difference(std::span<const double> values,
                                                 const std::vector<bool>& group, int permutations,
                                                 std::uint64_t seed);

struct PrevalenceCell {
  std::int64_t positives = 0;
  std::int64_t total = 0;
  std::int64_t tenths = 0;  // percent, one decimal, rounded half-up

  std::string rendered() const { return render_tenths_percent(tenths); }
};

struct PrevalenceRow {
  std::string label;
  std::string display_name;
  bool category_average = false;
  std::map<Origin, PrevalenceCell> by_origin;
};

struct PrevalenceTable {
  std::vector<Origin> origins;
  std::vector<PrevalenceRow> rows;  // modes grouped by category, each group followed by its average
};

/// Per mode and origin, the fraction of rubrics whose consolidated gold is
/// positive. Category rows average the member modes' one-decimal
/// percentages. Throws DataError("empty_subset") naming an origin with no
/// rubrics.
PrevalenceTable prevalence_table(const std::map<std::string, std::set<std::string>>& gold,
                                 const std::vector<Rubric>& rubrics, const Taxonomy& taxonomy,
                                 const std::vector<Origin>& origins = {Origin::expert,
                                                                       Origin::synthetic});

/// Failure modes ordered by category (reliability, content, consequential,
/// uncategorized), preserving taxonomy order within a category.
std::vector<const FailureMode*> modes_by_category(const Taxonomy& taxonomy);

}  // namespace rift
