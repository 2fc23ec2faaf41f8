// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Runs without gtest so the output stays one line per check.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "mv_check.hpp"
#include "oracle_suite.hpp"
#include "prompt_checks.hpp"
#include "report_fixture.hpp"
#include "rift/dataset.hpp"
#include "rift/signals.hpp"
#include "scenarios.hpp"
#include "support.hpp"

using namespace rift;
using namespace rift::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_s > 0 && secs >= budget_s) {
    o.ok = false;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  if (!o.ok) ++failures;
  std::ostringstream line;
  line << (o.ok ? "PASS " : "FAIL ") << name << " (" << std::fixed;
  line.precision(3);
  line << secs << " s";
  if (budget_s > 0) line << " / budget " << budget_s << " s";
  line << ")";
  if (!o.detail.empty()) line << ": " << o.detail;
  std::cout << line.str() << std::endl;
}

Outcome from_list(const std::vector<std::string>& problems, const std::string& summary) {
  if (problems.empty()) return {true, summary};
  std::string d = std::to_string(problems.size()) + " mismatches, first: " + problems.front();
  return {false, d};
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9; }

std::vector<Cell> cells(const std::vector<int>& v) { return to_cells(v); }

Outcome hand_anchored() {
  std::vector<std::string> bad;
  auto k = cohen_kappa(cells({1, 1, 1, 1, 1, 0, 0, 0, 0, 0}), cells({1, 1, 1, 1, 0, 1, 0, 0, 0, 0}));
  if (!k || !near(*k, 0.6)) bad.push_back("kappa");
  auto alpha = krippendorff_alpha(to_matrix({{1, 0}, {0, 1}, {1, 0}, {0, 1}}));
  if (!near(alpha, -0.75)) bad.push_back("alpha " + std::to_string(alpha));
  std::vector<double> s{0.1, 0.4, 0.35, 0.8};
  std::vector<bool> g{false, false, true, true};
  auto sweep = f1_threshold_sweep(s, g);
  if (!near(sweep.f1, 0.8) || sweep.direction != Direction::greater_equal) bad.push_back("sweep");
  if (!near(roc_auc_direction_agnostic(s, g), 0.75)) bad.push_back("auc");
  std::vector<double> x{1, 2, 3, 4}, y{2, 1, 4, 3};
  if (!near(pearson_r(x, y, 100, 1).r, 0.6)) bad.push_back("pearson");
  return from_list(bad, "kappa 0.6, alpha -0.75, F1 0.8 (>=), AUC 0.75, r 0.6");
}

Outcome sampling() {
  TempDir dir("acc_sampling");
  auto cfg = write_synthetic_pool(dir.path(), 30);
  auto pool = load_pool(cfg);
  auto first = plan_all(cfg, pool);
  auto second = plan_all(cfg, load_pool(cfg));
  std::vector<std::string> bad;
  std::vector<std::size_t> sizes;
  std::set<std::string> seen;
  std::size_t total = 0;
  for (const auto& p : first) {
    sizes.push_back(p.all_ids().size());
    for (const auto& [source, ids] : p.selected) {
      if (static_cast<int>(ids.size()) != p.per_source_count) bad.push_back("unequal per-source count");
    }
    for (const auto& id : p.all_ids()) {
      seen.insert(id);
      ++total;
    }
  }
  if (sizes != std::vector<std::size_t>{25, 25, 25, 10, 50}) bad.push_back("split sizes");
  if (seen.size() != total) bad.push_back("splits overlap");
  if (Json(first).dump() != Json(second).dump()) bad.push_back("not byte-identical");
  return from_list(bad, "25/25/25/10 + 50, disjoint, byte-identical");
}

Outcome end_to_end() {
  TempDir a("acc_e2e_a"), b("acc_e2e_b");
  auto first = run_pipeline(a.path());
  auto second = run_pipeline(b.path());
  std::vector<std::string> bad;
  if (first.size() != second.size()) bad.push_back("file sets differ");
  for (const auto& [path, bytes] : first) {
    auto it = second.find(path);
    if (it == second.end() || it->second != bytes) bad.push_back(path);
  }
  return from_list(bad, std::to_string(first.size()) + " files byte-identical");
}

PreferenceLabel pref(const std::string& a, const std::string& b, const std::string& who, Preference v) {
  PreferenceLabel l;
  l.rubric_id = "r";
  l.response_a = a;
  l.response_b = b;
  l.labeler_id = who;
  l.verdict = v;
  l.presented_first = a;
  l.presented_second = b;
  return l;
}

Outcome signal_invariants() {
  std::vector<std::string> bad;
  auto js = [](double v) { return JudgeScore{"r", "x" + std::to_string(v), "j", v * 10, v, 1}; };
  if (reward_variance_from_scores("r", {js(.5), js(.5), js(.5), js(.5)}).value != 0.0) bad.push_back("constant");
  std::vector<JudgeScore> alt{js(0), js(1), js(0), js(1)};
  alt[2].response_id = "y0";
  alt[3].response_id = "y1";
  if (!near(reward_variance_from_scores("r", alt).value, 0.25)) bad.push_back("alternating");

  Rng rng(2024);
  const std::vector<Preference> verdicts{Preference::A, Preference::B, Preference::TIE};
  for (int t = 0; t < 200; ++t) {
    std::vector<PreferenceLabel> labels;
    int responses = 2 + static_cast<int>(rng.below(4));
    for (int i = 0; i < responses; ++i)
      for (int j = i + 1; j < responses; ++j)
        for (const char* who : {"ref", "w1", "w2", "w3"})
          labels.push_back(pref("id" + std::to_string(i), "id" + std::to_string(j), who,
                                verdicts[rng.below(3)]));
    double irr = irr_signal(labels).value;
    double align = alignment_signal(labels, "ref", {"w1", "w2", "w3"}).value;
    auto relabeled = labels;
    for (auto& l : relabeled) {
      // Reverses the id order, so every stored pair flips orientation too.
      l.response_a = "z" + std::to_string(99 - std::stoi(l.response_a.substr(2)));
      l.response_b = "z" + std::to_string(99 - std::stoi(l.response_b.substr(2)));
      if (rng.below(2)) {
        std::swap(l.response_a, l.response_b);
        l.verdict = swapped(*l.verdict);
      }
    }
    if (!near(irr_signal(relabeled).value, irr)) bad.push_back("irr relabel");
    if (!near(alignment_signal(relabeled, "ref", {"w1", "w2", "w3"}).value, align)) {
      bad.push_back("alignment relabel");
    }
  }

  int auc_checked = 0;
  for (std::uint64_t seed = 0; auc_checked < 1000; ++seed) {
    auto f = random_fixture(seed + 90000);
    bool pos = std::count(f.gold.begin(), f.gold.end(), 1) > 0;
    bool neg = std::count(f.gold.begin(), f.gold.end(), 0) > 0;
    if (!pos || !neg) continue;
    ++auc_checked;
    if (roc_auc_direction_agnostic(f.scores, to_bools(f.gold)) < 0.5) bad.push_back("auc < 0.5");
  }
  return from_list(bad, "variance 0 / 0.25, 200 relabel trials, 1000 AUC fixtures >= 0.5");
}

Outcome prompt_fidelity() {
  auto bad = prompt_fidelity_failures();
  auto t = load_default_taxonomy();
  std::string why;
  if (!refinement_round_trip(t, {}, t, &why)) bad.push_back(why);
  auto changed = t;
  changed.failure_modes.pop_back();
  changed.failure_modes[0].rationale = "Edited rationale with \"quotes\"";
  if (!refinement_round_trip(changed, {"Dropped one mode"}, t, &why)) bad.push_back(why);
  return from_list(bad, "anchors, 150/200 truncation, round trip exact");
}

Outcome review_replay() {
  TempDir dir("acc_review");
  auto out = run_review_script(dir.path(), 200);
  std::vector<std::string> bad;
  if (out.operations != 200) bad.push_back("ran " + std::to_string(out.operations) + " operations");
  if (out.failed_operations) bad.push_back(std::to_string(out.failed_operations) + " unexpected statuses");
  if (!(out.live == out.replayed)) bad.push_back("replayed state differs");
  if (!(out.live == out.restarted)) bad.push_back("restarted state differs");
  return from_list(bad, "200 operations, live == replayed == restarted");
}

}  // namespace

int main() {
  criterion("statistical oracle suite", 10.0, [] {
    auto rep = run_oracle_suite(300, 1000);
    auto o = from_list(rep.mismatches, std::to_string(rep.fixtures) + " fixtures, " +
                                           std::to_string(rep.comparisons) + " comparisons within 1e-9");
    return o;
  });
  criterion("hand-anchored values", 0, hand_anchored);
  criterion("majority vote exhaustive", 1.0, [] {
    auto r = exhaustive_majority_check();
    return from_list(r.failures, std::to_string(r.cases) + " cases over N in {1,3,5,7}");
  });
  criterion("sampling", 1.0, sampling);
  criterion("end-to-end determinism", 60.0, end_to_end);
  criterion("report fidelity", 0, [] {
    return from_list(report_fidelity_failures(load_default_taxonomy()),
                     "alignment F1, pairwise %/kappa, 52.6%");
  });
  criterion("signal invariants", 0, signal_invariants);
  criterion("prompt fidelity", 0, prompt_fidelity);
  criterion("review log replay", 0, review_replay);
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << "(" << failures << " failing)" << std::endl;
  return failures ? 1 : 0;
}
