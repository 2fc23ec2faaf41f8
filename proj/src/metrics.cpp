#include "rift/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

#include "rift/error.hpp"
#include "rift/util.hpp"

namespace rift {

BinaryMatrix::BinaryMatrix(std::vector<std::string> items, std::vector<std::string> raters)
    : items_(std::move(items)), raters_(std::move(raters)), cells_(items_.size() * raters_.size()) {}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<std::vector<Cell>>& rows) {
  std::size_t n_raters = rows.empty() ? 0 : rows.front().size();
  std::vector<std::string> items, raters;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n_raters) {
      throw DataError("ragged_matrix", "row " + std::to_string(i) + " has the wrong rater count");
    }
    items.push_back("i" + std::to_string(i));
  }
  for (std::size_t r = 0; r < n_raters; ++r) raters.push_back("r" + std::to_string(r));
  BinaryMatrix m(std::move(items), std::move(raters));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t r = 0; r < n_raters; ++r) m.set(i, r, rows[i][r]);
  }
  return m;
}

std::vector<Cell> BinaryMatrix::column(std::size_t rater) const {
  std::vector<Cell> out(items_.size());
  for (std::size_t i = 0; i < items_.size(); ++i) out[i] = at(i, rater);
  return out;
}

std::vector<Cell> BinaryMatrix::row(std::size_t item) const {
  std::vector<Cell> out(raters_.size());
  for (std::size_t r = 0; r < raters_.size(); ++r) out[r] = at(item, r);
  return out;
}

namespace {

void require_raters(const BinaryMatrix& m) {
  if (m.rater_count() < 2) {
    throw DataError("insufficient_raters", "agreement statistics need at least two raters");
  }
}

}  // namespace

double pairwise_agreement(const BinaryMatrix& m) {
  require_raters(m);
  std::int64_t agree = 0, total = 0;
  for (std::size_t i = 0; i < m.item_count(); ++i) {
    for (std::size_t a = 0; a < m.rater_count(); ++a) {
      for (std::size_t b = a + 1; b < m.rater_count(); ++b) {
        auto va = m.at(i, a), vb = m.at(i, b);
        if (!va || !vb) continue;
        ++total;
        if (*va == *vb) ++agree;
      }
    }
  }
  if (total == 0) throw DataError("empty_denominator", "no co-rated (item, rater pair)");
  return static_cast<double>(agree) / static_cast<double>(total);
}

std::optional<double> cohen_kappa(std::span<const Cell> rater_a, std::span<const Cell> rater_b) {
  if (rater_a.size() != rater_b.size()) {
    throw DataError("length_mismatch", "kappa columns differ in length");
  }
  std::int64_t n = 0, agree = 0, a1 = 0, b1 = 0;
  for (std::size_t i = 0; i < rater_a.size(); ++i) {
    if (!rater_a[i] || !rater_b[i]) continue;
    ++n;
    if (*rater_a[i] == *rater_b[i]) ++agree;
    if (*rater_a[i]) ++a1;
    if (*rater_b[i]) ++b1;
  }
  if (n == 0) throw DataError("empty_denominator", "kappa needs at least one co-rated item");
  std::int64_t chance_num = a1 * b1 + (n - a1) * (n - b1);  // p_e * n^2
  if (chance_num == n * n) return std::nullopt;
  double nn = static_cast<double>(n) * static_cast<double>(n);
  double p_o = static_cast<double>(agree) / static_cast<double>(n);
  double p_e = static_cast<double>(chance_num) / nn;
  return (p_o - p_e) / (1.0 - p_e);
}

double mean_pairwise_kappa(const BinaryMatrix& m) {
  require_raters(m);
  double sum = 0;
  int defined = 0;
  for (std::size_t a = 0; a < m.rater_count(); ++a) {
    auto col_a = m.column(a);
    for (std::size_t b = a + 1; b < m.rater_count(); ++b) {
      auto col_b = m.column(b);
      std::optional<double> k;
      try {
        k = cohen_kappa(col_a, col_b);
      } catch (const DataError&) {
        continue;  // pair shares no items
      }
      if (!k) continue;
      sum += *k;
      ++defined;
    }
  }
  if (defined == 0) throw DataError("kappa_undefined", "kappa is undefined for every rater pair");
  return sum / defined;
}

double krippendorff_alpha(const BinaryMatrix& m) {
  // Coincidence counts for binary values.
  double o00 = 0, o11 = 0, o01 = 0;
  for (std::size_t i = 0; i < m.item_count(); ++i) {
    double ones = 0, zeros = 0;
    for (std::size_t r = 0; r < m.rater_count(); ++r) {
      if (auto v = m.at(i, r)) (*v ? ones : zeros) += 1;
    }
    double mu = ones + zeros;
    if (mu < 2) continue;
    o00 += zeros * (zeros - 1) / (mu - 1);
    o11 += ones * (ones - 1) / (mu - 1);
    o01 += zeros * ones / (mu - 1);
  }
  double n0 = o00 + o01, n1 = o11 + o01, n = n0 + n1;
  if (n < 2) throw DataError("empty_denominator", "no pairable values");
  if (n0 == 0 || n1 == 0) {
    throw DataError("degenerate_data", "expected disagreement is zero (a single value is used)");
  }
  // alpha = 1 - (n - 1) * sum_{c != k} o_ck / sum_{c != k} n_c n_k
  return 1.0 - (n - 1.0) * (2.0 * o01) / (2.0 * n0 * n1);
}

bool consolidate_gold(std::span<const Cell> votes) {
  std::int64_t present = 0, positive = 0;
  for (const auto& v : votes) {
    if (!v) continue;
    ++present;
    if (*v) ++positive;
  }
  if (present == 0) throw DataError("empty_denominator", "no votes to consolidate");
  return 2 * positive > present;
}

std::vector<bool> consolidate_gold(const BinaryMatrix& m) {
  std::vector<bool> out;
  out.reserve(m.item_count());
  for (std::size_t i = 0; i < m.item_count(); ++i) out.push_back(consolidate_gold(m.row(i)));
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(Direction d) { return d == Direction::greater_equal ? ">=" : "<="; }

double Confusion::precision() const {
  return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double Confusion::recall() const {
  return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double Confusion::f1() const {
  return tp == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
}

Confusion confusion_from_predictions(const std::vector<bool>& predicted, const std::vector<bool>& gold) {
  if (predicted.size() != gold.size()) {
    throw DataError("length_mismatch", "predictions and gold differ in length");
  }
  Confusion c;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (predicted[i] && gold[i]) ++c.tp;
    else if (predicted[i]) ++c.fp;
    else if (gold[i]) ++c.fn;
    else ++c.tn;
  }
  return c;
}

Confusion confusion_at(std::span<const double> scores, const std::vector<bool>& gold, double threshold,
                       Direction direction) {
  if (scores.size() != gold.size()) {
    throw DataError("length_mismatch", "scores and gold differ in length");
  }
  Confusion c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    bool p = direction == Direction::greater_equal ? scores[i] >= threshold : scores[i] <= threshold;
    if (p && gold[i]) ++c.tp;
    else if (p) ++c.fp;
    else if (gold[i]) ++c.fn;
    else ++c.tn;
  }
  return c;
}

std::vector<double> candidate_thresholds(std::span<const double> scores) {
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<double> out;
  out.push_back(-std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    out.push_back(sorted[i] + (sorted[i + 1] - sorted[i]) / 2.0);
  }
  out.push_back(std::numeric_limits<double>::infinity());
  return out;
}

namespace {

// True if `a` beats `b`: higher F1, then higher recall (same positives, so
// compare TP), then lower threshold. F1 compared exactly by cross-multiplying.
bool better(const Confusion& a, double ta, const Confusion& b, double tb) {
  std::int64_t da = 2 * a.tp + a.fp + a.fn, db = 2 * b.tp + b.fp + b.fn;
  std::int64_t lhs = (da == 0 ? 0 : 2 * a.tp) * (db == 0 ? 1 : db);
  std::int64_t rhs = (db == 0 ? 0 : 2 * b.tp) * (da == 0 ? 1 : da);
  if (lhs != rhs) return lhs > rhs;
  if (a.tp != b.tp) return a.tp > b.tp;
  return ta < tb;
}

}  // namespace

CalibrationResult f1_threshold_sweep(std::span<const double> scores, const std::vector<bool>& gold) {
  if (scores.size() != gold.size()) {
    throw DataError("length_mismatch", "scores and gold differ in length");
  }
  auto n_pos = std::count(gold.begin(), gold.end(), true);
  if (n_pos == 0) throw DataError("no_positives", "threshold sweep needs at least one positive");

  auto thresholds = candidate_thresholds(scores);
  bool have = false;
  Confusion best;
  double best_t = 0;
  Direction best_dir = Direction::greater_equal;
  for (Direction dir : {Direction::greater_equal, Direction::less_equal}) {
    for (double t : thresholds) {
      auto c = confusion_at(scores, gold, t, dir);
      if (!have || better(c, t, best, best_t)) {
        best = c;
        best_t = t;
        best_dir = dir;
        have = true;
      }
    }
  }

  CalibrationResult out;
  out.threshold = best_t;
  out.direction = best_dir;
  out.f1 = best.f1();
  out.precision = best.precision();
  out.recall = best.recall();
  out.n_positive = static_cast<int>(n_pos);
  if (static_cast<std::size_t>(n_pos) < gold.size()) {
    out.auc = roc_auc_direction_agnostic(scores, gold);
  }
  return out;
}

double roc_auc_raw(std::span<const double> scores, const std::vector<bool>& gold) {
  if (scores.size() != gold.size()) {
    throw DataError("length_mismatch", "scores and gold differ in length");
  }
  auto n_pos = static_cast<double>(std::count(gold.begin(), gold.end(), true));
  auto n_neg = static_cast<double>(gold.size()) - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw DataError("single_class", "AUC needs at least one positive and one negative");
  }
  // Rank-sum form of Mann-Whitney U with midranks for ties.
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] < scores[b]; });
  double positive_rank_sum = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (gold[order[k]]) positive_rank_sum += midrank;
    }
    i = j;
  }
  double u = positive_rank_sum - n_pos * (n_pos + 1) / 2.0;
  return u / (n_pos * n_neg);
}

double roc_auc_direction_agnostic(std::span<const double> scores, const std::vector<bool>& gold) {
  double raw = roc_auc_raw(scores, gold);
  return std::max(raw, 1.0 - raw);
}

double pearson_coefficient(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("length_mismatch", "x and y differ in length");
  if (x.size() < 3) throw DataError("insufficient_data", "Pearson r needs n >= 3");
  double n = static_cast<double>(x.size());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) throw DataError("zero_variance", "Pearson r is undefined for constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationResult pearson_r(std::span<const double> x, std::span<const double> y,
                            int permutations, std::uint64_t seed) {
  CorrelationResult out;
  out.r = pearson_coefficient(x, y);
  out.n = x.size();
  out.permutations = std::max(permutations, 0);
  if (out.permutations == 0) return out;

  const double observed = std::abs(out.r);
  const double tolerance = 1e-12 * std::max(1.0, observed);
  std::vector<double> shuffled(y.begin(), y.end());
  Rng rng(splitmix64(seed));
  std::int64_t extreme = 0;
  for (int p = 0; p < out.permutations; ++p) {
    deterministic_shuffle(shuffled, rng);
    if (std::abs(pearson_coefficient(x, shuffled)) >= observed - tolerance) ++extreme;
  }
  out.p_value = static_cast<double>(1 + extreme) / static_cast<double>(1 + out.permutations);
  return out;
}

MeanDifferenceResult permutation_mean_difference(std::span<const double> values,
                                                 const std::vector<bool>& group, int permutations,
                                                 std::uint64_t seed) {
  if (values.size() != group.size()) {
    throw DataError("length_mismatch", "values and group flags differ in length");
  }
  auto diff_of = [&](const std::vector<bool>& g, double* mp, double* mn) {
    double sp = 0, sn = 0;
    std::size_t np = 0, nn = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (g[i]) {
        sp += values[i];
        ++np;
      } else {
        sn += values[i];
        ++nn;
      }
    }
    if (np == 0 || nn == 0) throw DataError("empty_subset", "both groups need members");
    if (mp) *mp = sp / static_cast<double>(np);
    if (mn) *mn = sn / static_cast<double>(nn);
    return sp / static_cast<double>(np) - sn / static_cast<double>(nn);
  };

  MeanDifferenceResult out;
  out.difference = diff_of(group, &out.mean_positive, &out.mean_negative);
  out.n_positive = static_cast<std::size_t>(std::count(group.begin(), group.end(), true));
  out.n_negative = group.size() - out.n_positive;
  out.permutations = std::max(permutations, 0);
  if (out.permutations == 0) return out;

  const double observed = std::abs(out.difference);
  const double tolerance = 1e-12 * std::max(1.0, observed);
  std::vector<bool> labels(group);
  Rng rng(splitmix64(seed ^ 0xd1ffULL));
  std::int64_t extreme = 0;
  for (int p = 0; p < out.permutations; ++p) {
    for (std::size_t i = labels.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(rng.below(i));
      bool tmp = labels[i - 1];
      labels[i - 1] = labels[j];
      labels[j] = tmp;
    }
    double d = diff_of(labels, nullptr, nullptr);
    if (std::abs(d) >= observed - tolerance) ++extreme;
  }
  out.p_value = static_cast<double>(1 + extreme) / static_cast<double>(1 + out.permutations);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<const FailureMode*> modes_by_category(const Taxonomy& taxonomy) {
  std::vector<const FailureMode*> out;
  for (auto cat : {std::optional<Category>(Category::reliability),
                   std::optional<Category>(Category::content_validity),
                   std::optional<Category>(Category::consequential_validity),
                   std::optional<Category>()}) {
    for (const auto& m : taxonomy.failure_modes) {
      if (m.category == cat) out.push_back(&m);
    }
  }
  return out;
}

PrevalenceTable prevalence_table(const std::map<std::string, std::set<std::string>>& gold,
                                 const std::vector<Rubric>& rubrics, const Taxonomy& taxonomy,
                                 const std::vector<Origin>& origins) {
  std::map<Origin, std::vector<const std::set<std::string>*>> subsets;
  for (const auto& r : rubrics) {
    auto it = gold.find(r.id);
    if (it != gold.end()) subsets[r.origin].push_back(&it->second);
  }
  for (auto o : origins) {
    if (subsets[o].empty()) {
      throw DataError("empty_subset", "no gold-labelled rubrics with origin '" + to_string(o) + "'");
    }
  }

  PrevalenceTable table;
  table.origins = origins;
  auto ordered = modes_by_category(taxonomy);
  std::optional<Category> current;
  std::vector<PrevalenceRow> rows;

  auto flush_average = [&](std::optional<Category> cat, std::size_t begin, std::size_t end) {
    if (!cat || begin == end) return;
    PrevalenceRow avg;
    avg.label = to_string(*cat) + "_avg";
    avg.display_name = category_display_name(*cat) + " Avg.";
    avg.category_average = true;
    for (auto o : origins) {
      std::vector<std::int64_t> tenths;
      for (std::size_t k = begin; k < end; ++k) tenths.push_back(rows[k].by_origin.at(o).tenths);
      avg.by_origin[o].tenths = mean_tenths(tenths);
    }
    rows.push_back(std::move(avg));
  };

  std::size_t group_begin = 0;
  for (std::size_t idx = 0; idx < ordered.size(); ++idx) {
    const auto* m = ordered[idx];
    if (idx == 0) current = m->category;
    if (m->category != current) {
      flush_average(current, group_begin, rows.size());
      current = m->category;
      group_begin = rows.size();
    }
    PrevalenceRow row;
    row.label = m->label;
    row.display_name = m->display_name;
    for (auto o : origins) {
      PrevalenceCell cell;
      cell.total = static_cast<std::int64_t>(subsets[o].size());
      for (const auto* labels : subsets[o]) {
        if (labels->contains(m->label)) ++cell.positives;
      }
      cell.tenths = percent_tenths(cell.positives, cell.total);
      row.by_origin[o] = cell;
    }
    rows.push_back(std::move(row));
  }
  if (!ordered.empty()) flush_average(current, group_begin, rows.size());
  table.rows = std::move(rows);
  return table;
}

}  // namespace rift
