#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rift/error.hpp"
#include "rift/util.hpp"

namespace rift {

struct RetryPolicy {
  int max_attempts = 3;
  int backoff_base_ms = 500;
};

/// Scripted mock reply: used when the prompt contains `match` (and the run
/// index matches, if given). `responses[k]` answers attempt k+1; the last
/// entry repeats. A response starting with "!transport" simulates a
/// transient transport failure.
struct MockFixture {
  std::string match;
  std::optional<int> run_index;
  std::vector<std::string> responses;
};

struct ProviderConfig {
  std::string provider_id;
  std::string kind = "http";  // "http" or "mock"
  std::string endpoint;
  std::string model_name;
  double temperature = 1.0;
  int max_output_tokens = 2048;
  std::string api_key_env;
  int max_concurrent = 4;
  RetryPolicy retry;
  std::vector<MockFixture> fixtures;
};

void to_json(Json& j, const ProviderConfig& c);
void from_json(const Json& j, ProviderConfig& c);

/// Checks max_concurrent >= 1, max_attempts >= 1, and a known kind.
void validate_provider_config(const ProviderConfig& c);

/// Provider registry file: `{"providers": [ProviderConfig...]}`.
std::map<std::string, ProviderConfig> load_provider_registry(const std::filesystem::path& path);

struct CompletionRequest {
  std::string prompt;
  int run_index = 0;
  int attempt = 1;
};

/// A chat-style completion endpoint: one user message in, text out.
/// Implementations must be safe to call concurrently.
class Provider {
 public:
  explicit Provider(ProviderConfig config) : config_(std::move(config)) {}
  virtual ~Provider() = default;
  Provider(const Provider&) = delete;
  Provider& operator=(const Provider&) = delete;

  /// Throws ProviderError; `transient()` errors are retried by the caller.
  virtual std::string complete(const CompletionRequest& request) = 0;

  const ProviderConfig& config() const { return config_; }

 private:
  ProviderConfig config_;
};

/// Deterministic offline provider. Scripted fixtures win; otherwise the
/// reply is synthesized from a hash of (model_name, prompt), plus the run
/// index when temperature > 0 so repeated runs can differ.
class MockProvider final : public Provider {
 public:
  explicit MockProvider(ProviderConfig config);
  std::string complete(const CompletionRequest& request) override;
};

/// OpenAI-compatible chat-completions client.
class HttpProvider final : public Provider {
 public:
  explicit HttpProvider(ProviderConfig config);
  std::string complete(const CompletionRequest& request) override;
};

std::unique_ptr<Provider> make_provider(const ProviderConfig& config);

/// Content address of one model call.
struct CacheKey {
  std::string hex;

  static CacheKey compute(const ProviderConfig& provider, std::string_view prompt, int run_index);
  bool operator==(const CacheKey&) const = default;
};

struct CachedResponse {
  std::string raw;
  int attempts = 1;
};

/// File-backed, write-once response cache: one JSON file per key. A second
/// write of an existing key is discarded. Entries are never invalidated
/// implicitly; `clear()` removes everything.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  std::optional<CachedResponse> get(const CacheKey& key) const;
  void put(const CacheKey& key, const CachedResponse& value);
  void clear();
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path path_for(const CacheKey& key) const;

  std::filesystem::path dir_;
  mutable std::mutex mutex_;
};

/// Raised by reply validators to request a retry.
class MalformedResponse : public DataError {
 public:
  explicit MalformedResponse(const std::string& message)
      : DataError("malformed_response", message) {}
};

struct CallOutcome {
  std::string raw;
  int attempts = 0;
  bool cache_hit = false;
};

/// Serves from `cache` when possible; otherwise calls the provider up to
/// retry.max_attempts times, retrying transient transport errors and
/// replies that `validate` rejects with MalformedResponse. Successful
/// replies are cached. Throws ProviderError("provider_exhausted").
CallOutcome cached_completion(Provider& provider, ResponseCache* cache, const std::string& prompt,
                              int run_index,
                              const std::function<void(const std::string&)>& validate);

}  // namespace rift
