#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rift/provider.hpp"
#include "rift/review_store.hpp"

namespace rift {

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path log_path = "review_events.jsonl";
  /// Bearer token -> annotator id. With no tokens, requests run as "anonymous".
  std::map<std::string, std::string> tokens;
  std::filesystem::path static_dir;
  std::optional<ProviderConfig> refinement_provider;
  std::filesystem::path cache_dir;
  /// Loaded at startup: rubric JSONL files to register, verdict stores to
  /// import flags from, and the initial taxonomy (default asset if unset).
  std::vector<std::filesystem::path> rubric_files;
  std::vector<std::filesystem::path> verdict_files;
  std::optional<std::filesystem::path> taxonomy_file;
  int threads = 8;
};

/// Relative paths resolve against the config file's directory.
ServerConfig load_server_config(const std::filesystem::path& path,
                                const std::map<std::string, ProviderConfig>& registry = {});

/// HTTP status for an error code.
int http_status_for(const std::string& code);

class ReviewServer {
 public:
  explicit ReviewServer(ServerConfig config, Clock clock = default_clock());
  ~ReviewServer();
  ReviewServer(const ReviewServer&) = delete;
  ReviewServer& operator=(const ReviewServer&) = delete;

  /// Registers configured rubrics, seeds the taxonomy when the log has
  /// none, and imports configured verdict stores. Idempotent across restarts.
  void bootstrap();

  /// Binds (port 0 picks a free port) and returns the bound port.
  int bind();
  /// Blocks serving requests until stop().
  void serve();
  void stop();

  ReviewStore& store() { return *store_; }
  const ServerConfig& config() const { return config_; }

 private:
  struct Impl;
  ServerConfig config_;
  std::unique_ptr<ReviewStore> store_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rift
