#pragma once

#include <string>
#include <vector>

#include "oracles.hpp"
#include "rift/judge.hpp"

namespace rift::testing {

struct MvCheck {
  long long cases = 0;
  std::vector<std::string> failures;
};

/// Label l is predicted in run r iff bit r of patterns[l] is set.
inline bool check_mv_case(int n, const std::vector<unsigned>& patterns, MvCheck& out) {
  static const std::vector<std::string> names{"l0", "l1", "l2", "l3"};
  std::vector<JudgeVerdict> verdicts(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> runs(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    auto& v = verdicts[static_cast<std::size_t>(r)];
    v.rubric_id = "rb";
    v.provider_id = "p";
    v.run_index = r;
    for (std::size_t l = 0; l < patterns.size(); ++l) {
      if (patterns[l] >> r & 1u) {
        v.suggested_labels.push_back({names[l], "", ""});
        runs[static_cast<std::size_t>(r)].push_back(static_cast<int>(l));
      }
    }
  }
  auto got = majority_vote(verdicts, n);
  std::set<std::string> expected;
  for (int l : oracle::majority(runs, static_cast<int>(patterns.size()))) {
    expected.insert(names[static_cast<std::size_t>(l)]);
  }
  ++out.cases;
  if (got != expected) {
    std::string p;
    for (auto x : patterns) p += std::to_string(x) + " ";
    out.failures.push_back("N=" + std::to_string(n) + " patterns " + p);
    return false;
  }
  return true;
}

/// For N in {1, 3}, every joint assignment of run subsets to four labels.
/// For N in {5, 7}, every run subset for labels 0 and 1 jointly, with labels
/// 2 and 3 derived (XOR and complement) so every label sees every subset.
inline MvCheck exhaustive_majority_check() {
  MvCheck out;
  for (int n : {1, 3, 5, 7}) {
    unsigned subsets = 1u << n, all = subsets - 1;
    if (n <= 3) {
      for (unsigned a = 0; a < subsets; ++a)
        for (unsigned b = 0; b < subsets; ++b)
          for (unsigned c = 0; c < subsets; ++c)
            for (unsigned d = 0; d < subsets; ++d) check_mv_case(n, {a, b, c, d}, out);
    } else {
      for (unsigned a = 0; a < subsets; ++a)
        for (unsigned b = 0; b < subsets; ++b) check_mv_case(n, {a, b, a ^ b, all & ~a}, out);
    }
  }
  return out;
}

}  // namespace rift::testing
