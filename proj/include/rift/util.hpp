#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace rift {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Text helpers

/// First `max_chars` Unicode code points of a UTF-8 string.
std::string utf8_prefix(std::string_view text, std::size_t max_chars);
std::size_t utf8_length(std::string_view text);

std::string trim(std::string_view text);
std::string to_lower(std::string_view text);
std::vector<std::string> split_whitespace(std::string_view text);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
bool is_snake_case(std::string_view label);

/// Fixed-point rendering ("%.{decimals}f").
std::string format_fixed(double value, int decimals);

/// Percentage of `numerator / denominator` in tenths of a percent, rounded
/// half-up with exact integer arithmetic (10/19 -> 526).
std::int64_t percent_tenths(std::int64_t numerator, std::int64_t denominator);
/// Mean of tenth-percent values, rounded half-up to a tenth.
std::int64_t mean_tenths(const std::vector<std::int64_t>& tenths);
/// 526 -> "52.6%".
std::string render_tenths_percent(std::int64_t tenths);

/// Pulls the outermost JSON object out of a model reply that may wrap it in
/// prose or a ```json fence. Returns nullopt if nothing parses.
std::optional<Json> extract_json_object(std::string_view raw);

// ---------------------------------------------------------------------------
// Hashing

std::string sha256_hex(std::string_view bytes);
/// First eight digest bytes as an integer; used to seed deterministic choices.
std::uint64_t sha256_u64(std::string_view bytes);
std::string file_sha256(const std::filesystem::path& path);

/// 64-bit FNV-1a; stable across platforms and runs.
std::uint64_t fnv1a64(std::string_view bytes);

// ---------------------------------------------------------------------------
// Deterministic randomness
//
// std::uniform_int_distribution and std::shuffle are implementation-defined,
// so sampling code uses these instead to stay byte-reproducible.

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  /// Unbiased integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

template <class T>
void deterministic_shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

// ---------------------------------------------------------------------------
// Files

std::string read_file(const std::filesystem::path& path);
/// Writes via a temp file and rename so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& value);

/// Reads a JSONL file. Blank lines are skipped; `on_line` receives 1-based
/// line numbers.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(std::size_t line, const Json&)>& on_line);
std::vector<Json> read_jsonl(const std::filesystem::path& path);
void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& rows);
void append_jsonl(const std::filesystem::path& path, const std::vector<Json>& rows);

// ---------------------------------------------------------------------------
// Time

/// Timestamp source for persisted records. Stores written with a fixed clock
/// are byte-reproducible.
using Clock = std::function<std::string()>;
Clock system_clock();
Clock fixed_clock(std::string timestamp);
/// Fixed clock if RIFT_FIXED_TIMESTAMP is set, else the system clock.
Clock default_clock();

// ---------------------------------------------------------------------------
// Concurrency

/// Runs task(i) for i in [0, count) on at most `max_concurrent` threads.
/// Rethrows the first exception (by index) after all tasks finish.
void parallel_for(std::size_t count, std::size_t max_concurrent,
                  const std::function<void(std::size_t)>& task);

}  // namespace rift
