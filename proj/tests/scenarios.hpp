#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "rift/review_store.hpp"

namespace rift::testing {

/// Runs ingest -> sample -> judge (two mock providers, N=5) -> signals ->
/// calibrate -> every report kind through the CLI inside `dir`, and returns
/// every file written (relative path -> bytes). Throws on a nonzero exit.
std::map<std::string, std::string> run_pipeline(const std::filesystem::path& dir);

struct ReplayOutcome {
  ReviewState live;
  ReviewState replayed;   // replay_log on the event log
  ReviewState restarted;  // a fresh server bootstrapped from the same log
  int operations = 0;
  int failed_operations = 0;  // unexpected HTTP statuses
};

/// Starts a review server on a free port, drives `operations` scripted API
/// calls against it, stops it, and rebuilds state from the log.
ReplayOutcome run_review_script(const std::filesystem::path& dir, int operations);

}  // namespace rift::testing
