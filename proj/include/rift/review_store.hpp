#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "rift/dataset.hpp"
#include "rift/judge.hpp"
#include "rift/taxonomy.hpp"

namespace rift {

enum class QueueStatus { pending, submitted };
std::string to_string(QueueStatus s);

struct QueueItem {
  std::string rubric_id;
  int round = 1;
  std::string assigned_to;
  QueueStatus status = QueueStatus::pending;

  bool operator==(const QueueItem&) const = default;
};

struct RoundInfo {
  int round = 1;
  RoundPlan plan;
  std::vector<std::string> annotators;
  std::vector<QueueItem> queue;  // rubric order of the plan, then annotator order
  std::string opened_at;

  bool operator==(const RoundInfo&) const = default;
};

/// A failure mode an evaluator suggested for a rubric.
struct Flag {
  std::string rubric_id;
  std::string failure_mode;
  std::string source;  // evaluator id
  std::string justification;
  std::string quote;

  bool operator==(const Flag&) const = default;
};

enum class FlagDecision { confirmed, dismissed };
std::string to_string(FlagDecision d);
FlagDecision parse_flag_decision(std::string_view s);

struct FlagVerdict {
  std::string rubric_id;
  std::string failure_mode;
  std::string source;
  std::string reviewer_id;
  FlagDecision decision = FlagDecision::confirmed;
  std::optional<std::string> note;
  std::string timestamp;

  bool operator==(const FlagVerdict&) const = default;
};

void to_json(Json& j, const QueueItem& q);
void to_json(Json& j, const Flag& f);
void from_json(const Json& j, Flag& f);
void to_json(Json& j, const FlagVerdict& v);
void from_json(const Json& j, FlagVerdict& v);

using FlagKey = std::tuple<std::string, std::string, std::string>;  // rubric, mode, source

/// Materialized service state. Every field is derived from the event log.
struct ReviewState {
  std::uint64_t last_seq = 0;
  std::map<std::string, Rubric> rubrics;
  std::map<int, RoundInfo> rounds;
  std::vector<AnnotationRecord> annotations;
  std::map<FlagKey, Flag> flags;
  std::vector<FlagVerdict> flag_verdicts;  // append order; later supersedes earlier
  std::vector<Taxonomy> taxonomy_versions;
  std::optional<int> active_version;  // newest finalized version

  const Taxonomy* version(int v) const;
  const Taxonomy* active() const;
  /// Latest verdict per (rubric, mode, source, reviewer), in first-seen order.
  std::vector<FlagVerdict> current_verdicts() const;

  bool operator==(const ReviewState&) const = default;
};

Json state_to_json(const ReviewState& s);

/// File-backed event log with in-memory indices. Writes are serialized;
/// readers get immutable snapshots. All precondition failures throw Error
/// subclasses with stable codes.
class ReviewStore {
 public:
  /// Replays `log_path` if it exists. Throws DataError("corrupt_log") on a
  /// malformed or out-of-sequence line.
  explicit ReviewStore(std::filesystem::path log_path, Clock clock = default_clock());

  std::shared_ptr<const ReviewState> snapshot() const;

  /// Adds rubrics not yet known; a known id with different content is a
  /// DataError("rubric_conflict"). Returns the number added.
  std::size_t register_rubrics(const std::vector<Rubric>& rubrics);

  /// Appends the next version of the chain as a draft. `expected_latest` (when given)
  /// must equal the current newest version number, else
  /// DataError("version_conflict").
  void add_taxonomy_version(const Taxonomy& t, std::optional<int> expected_latest = std::nullopt);

  /// Finalizes a draft. `expected_active` is the optimistic-concurrency
  /// precondition: it must equal the currently active version (0 for none).
  void finalize_taxonomy(int version, std::optional<int> expected_active = std::nullopt);

  /// Every rubric of the plan assigned to every annotator.
  const RoundInfo& open_round(const RoundPlan& plan, const std::vector<std::string>& annotators);

  /// Stamps the active taxonomy version on the stored record.
  AnnotationRecord submit_annotation(AnnotationRecord record);

  /// Idempotent: an identical flag is not re-recorded. Returns true if new.
  bool raise_flag(const Flag& flag);

  /// Flags for every MV-retained label of every provider, sourced
  /// "<provider_id>/mv" with the first run's evidence.
  std::size_t import_flags(const std::vector<JudgeVerdict>& verdicts);

  FlagVerdict record_flag_verdict(FlagVerdict v);

  const std::filesystem::path& log_path() const { return log_path_; }

 private:
  // Caller holds write_mutex_.
  void commit(const std::string& type, Json data);
  std::shared_ptr<const ReviewState> current() const;

  std::filesystem::path log_path_;
  Clock clock_;
  mutable std::mutex write_mutex_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const ReviewState> state_;
};

/// Applies one logged event to `state`. Shared by live writes and replay.
void apply_event(ReviewState& state, const Json& event);

/// Rebuilds state from a log file.
ReviewState replay_log(const std::filesystem::path& log_path);

/// Strict-majority gold over submitted annotations of the given rounds
/// (all rounds when empty).
std::map<std::string, std::set<std::string>> gold_from_state(const ReviewState& s,
                                                             const std::set<int>& rounds = {});

}  // namespace rift
