#include "rift/provider.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <thread>

#include "rift/error.hpp"
#include "rift/prompts.hpp"

namespace rift {

void to_json(Json& j, const ProviderConfig& c) {
  Json fixtures = Json::array();
  for (const auto& f : c.fixtures) {
    Json jf{{"match", f.match}, {"responses", f.responses}};
    if (f.run_index) jf["run_index"] = *f.run_index;
    fixtures.push_back(std::move(jf));
  }
  j = Json{{"provider_id", c.provider_id},
           {"kind", c.kind},
           {"endpoint", c.endpoint},
           {"model_name", c.model_name},
           {"temperature", c.temperature},
           {"max_output_tokens", c.max_output_tokens},
           {"api_key_env", c.api_key_env},
           {"max_concurrent", c.max_concurrent},
           {"retry",
            {{"max_attempts", c.retry.max_attempts}, {"backoff_base_ms", c.retry.backoff_base_ms}}},
           {"fixtures", fixtures}};
}

void from_json(const Json& j, ProviderConfig& c) {
  c.provider_id = j.at("provider_id").get<std::string>();
  c.kind = j.value("kind", std::string("http"));
  c.endpoint = j.value("endpoint", std::string{});
  c.model_name = j.value("model_name", c.provider_id);
  c.temperature = j.value("temperature", 1.0);
  c.max_output_tokens = j.value("max_output_tokens", 2048);
  c.api_key_env = j.value("api_key_env", std::string{});
  c.max_concurrent = j.value("max_concurrent", 4);
  if (j.contains("retry")) {
    c.retry.max_attempts = j.at("retry").value("max_attempts", 3);
    c.retry.backoff_base_ms = j.at("retry").value("backoff_base_ms", 500);
  }
  c.fixtures.clear();
  for (const auto& f : j.value("fixtures", Json::array())) {
    MockFixture fx;
    fx.match = f.value("match", std::string{});
    if (f.contains("run_index") && !f.at("run_index").is_null()) {
      fx.run_index = f.at("run_index").get<int>();
    }
    if (f.contains("response")) {
      fx.responses.push_back(f.at("response").get<std::string>());
    } else {
      fx.responses = f.at("responses").get<std::vector<std::string>>();
    }
    c.fixtures.push_back(std::move(fx));
  }
}

void validate_provider_config(const ProviderConfig& c) {
  if (c.provider_id.empty()) throw DataError("invalid_provider", "provider_id must be non-empty");
  if (c.max_concurrent < 1) {
    throw DataError("invalid_provider", c.provider_id + ": max_concurrent must be >= 1");
  }
  if (c.retry.max_attempts < 1) {
    throw DataError("invalid_provider", c.provider_id + ": retry.max_attempts must be >= 1");
  }
  if (c.kind != "mock" && c.kind != "http") {
    throw DataError("invalid_provider", c.provider_id + ": unknown kind '" + c.kind + "'");
  }
  if (c.kind == "http" && c.endpoint.empty()) {
    throw DataError("invalid_provider", c.provider_id + ": http providers need an endpoint");
  }
}

std::map<std::string, ProviderConfig> load_provider_registry(const std::filesystem::path& path) {
  auto j = read_json_file(path);
  std::map<std::string, ProviderConfig> out;
  try {
    for (const auto& p : j.at("providers")) {
      auto c = p.get<ProviderConfig>();
      validate_provider_config(c);
      if (!out.emplace(c.provider_id, c).second) {
        throw DataError("duplicate_provider", "provider '" + c.provider_id + "' defined twice");
      }
    }
  } catch (const Json::exception& e) {
    throw DataError("malformed_config", path.string() + ": " + e.what());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mock provider

namespace {

std::uint64_t mix(std::uint64_t seed, std::string_view salt) {
  return splitmix64(seed ^ fnv1a64(salt));
}

std::string section_after(std::string_view prompt, std::string_view heading,
                          std::string_view terminator) {
  auto start = prompt.find(heading);
  if (start == std::string_view::npos) return {};
  start += heading.size();
  auto end = prompt.find(terminator, start);
  return std::string(prompt.substr(start, end == std::string_view::npos ? std::string_view::npos
                                                                        : end - start));
}

std::vector<std::string> heading_labels(std::string_view section) {
  std::vector<std::string> labels;
  std::size_t pos = 0;
  while ((pos = section.find("### ", pos)) != std::string_view::npos) {
    if (pos == 0 || section[pos - 1] == '\n') {
      auto eol = section.find('\n', pos);
      labels.emplace_back(trim(section.substr(pos + 4, eol == std::string_view::npos
                                                           ? std::string_view::npos
                                                           : eol - pos - 4)));
    }
    pos += 4;
  }
  return labels;
}

Json mock_labels(const std::vector<std::string>& labels, std::uint64_t base, std::uint64_t run,
                 bool vary_by_run, int base_pct, std::string_view rubric) {
  Json suggested = Json::array();
  std::string quote = utf8_prefix(trim(rubric), 60);
  for (const auto& label : labels) {
    bool on = mix(base, label) % 100 < static_cast<std::uint64_t>(base_pct);
    if (vary_by_run && mix(run, label) % 100 < 15) on = !on;
    if (!on) continue;
    suggested.push_back({{"label", label},
                         {"justification", "Synthetic judgement for '" + label + "'."},
                         {"quote", quote}});
    if (suggested.size() == 3) break;
  }
  return suggested;
}

Json mock_modes_from(std::string_view section) {
  Json modes = Json::array();
  std::size_t pos = 0;
  while ((pos = section.find("### ", pos)) != std::string_view::npos) {
    auto next = section.find("\n### ", pos + 4);
    auto chunk = section.substr(pos + 4, next == std::string_view::npos ? std::string_view::npos
                                                                        : next - pos - 4);
    auto eol = chunk.find('\n');
    std::string label = trim(chunk.substr(0, eol));
    auto field = [&](std::string_view key, std::initializer_list<std::string_view> ends) {
      auto at = chunk.find(key);
      if (at == std::string_view::npos) return std::string{};
      at += key.size();
      std::size_t stop = std::string_view::npos;
      for (auto e : ends) stop = std::min(stop, chunk.find(e, at));
      return trim(chunk.substr(at, stop == std::string_view::npos ? stop : stop - at));
    };
    modes.push_back({{"label", label},
                     {"description", field("Description: ", {"\nRationale: ", "\nExamples: "})},
                     {"rationale", field("Rationale: ", {"\nExamples: "})},
                     {"pass_examples", Json::array()},
                     {"fail_examples", Json::array()}});
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return modes;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

}  // namespace

MockProvider::MockProvider(ProviderConfig config) : Provider(std::move(config)) {}

std::string MockProvider::complete(const CompletionRequest& request) {
  const auto& cfg = config();
  for (const auto& f : cfg.fixtures) {
    if (f.run_index && *f.run_index != request.run_index) continue;
    if (request.prompt.find(f.match) == std::string::npos) continue;
    if (f.responses.empty()) break;
    auto idx = std::min<std::size_t>(static_cast<std::size_t>(std::max(request.attempt, 1)) - 1,
                                      f.responses.size() - 1);
    const auto& reply = f.responses[idx];
    if (starts_with(reply, "!transport")) {
      throw ProviderError("transport_error", cfg.provider_id + ": scripted transport failure",
                          /*transient=*/true);
    }
    return reply;
  }

  const std::string_view prompt = request.prompt;
  const std::uint64_t base = sha256_u64(cfg.model_name + "\x1f" + request.prompt);
  const bool sampled = cfg.temperature > 0.0;
  const std::uint64_t run = splitmix64(base ^ (0x51ed27ULL + static_cast<std::uint64_t>(
                                                                 sampled ? request.run_index : 0)));

  if (starts_with(prompt, kAnnotationPreamble)) {
    auto labels = heading_labels(section_after(prompt, "## Failure Mode Taxonomy", "\n## Input Context"));
    auto rubric = section_after(prompt, "## Rubric to Evaluate\n", "\n\n## Task");
    return Json{{"suggested_labels", mock_labels(labels, base, run, sampled, 30, rubric)}}.dump();
  }
  if (starts_with(prompt, kProbePreamble)) {
    auto labels = heading_labels(section_after(prompt, "## Target Failure Mode", "\n## Input Context"));
    auto rubric = section_after(prompt, "## Rubric to Evaluate\n", "\n\n## Task");
    return Json{{"gaming_strategy", "Pad the answer with the surface features the rubric counts."},
                {"quality_gates_assessment", "Synthetic assessment."},
                {"final_verdict", "Synthetic verdict."},
                {"suggested_labels", mock_labels(labels, base, run, sampled, 40, rubric)}}
        .dump();
  }
  if (starts_with(prompt, kRefinementPreamble)) {
    auto running = section_after(prompt, "## Current Running Refinement", "\n## Annotator Feedback");
    auto modes = mock_modes_from(running);
    if (modes.empty()) {
      modes = mock_modes_from(
          section_after(prompt, "## Original Failure Mode Taxonomy", "\n## Current Running"));
    }
    return Json{{"failure_modes", modes}, {"changes_summary", Json::array()}}.dump();
  }
  if (starts_with(prompt, kPreferencePreamble)) {
    auto v = run % 100;
    return v < 45 ? "A" : (v < 90 ? "B" : "TIE");
  }
  if (starts_with(prompt, kScorePreamble)) {
    return Json{{"score", static_cast<int>(run % 11)}}.dump();
  }
  char tag[17];
  std::snprintf(tag, sizeof tag, "%016llx", static_cast<unsigned long long>(run));
  return "Mock response from " + cfg.model_name + " [" + tag + "]: " +
         utf8_prefix(trim(prompt), 80);
}

std::unique_ptr<Provider> make_provider(const ProviderConfig& config) {
  validate_provider_config(config);
  if (config.kind == "mock") return std::make_unique<MockProvider>(config);
  return std::make_unique<HttpProvider>(config);
}

// ---------------------------------------------------------------------------
// Cache

CacheKey CacheKey::compute(const ProviderConfig& provider, std::string_view prompt, int run_index) {
  // Length-prefixed fields so no two distinct tuples serialize identically.
  std::string material;
  auto field = [&](std::string_view v) {
    material += std::to_string(v.size());
    material += ':';
    material += v;
  };
  field(provider.provider_id);
  field(provider.model_name);
  field(format_fixed(provider.temperature, 6));
  field(prompt);
  field(std::to_string(run_index));
  return CacheKey{sha256_hex(material)};
}

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ResponseCache::path_for(const CacheKey& key) const {
  return dir_ / key.hex.substr(0, 2) / (key.hex + ".json");
}

std::optional<CachedResponse> ResponseCache::get(const CacheKey& key) const {
  auto path = path_for(key);
  std::lock_guard lock(mutex_);
  if (!std::filesystem::exists(path)) return std::nullopt;
  auto j = read_json_file(path);
  return CachedResponse{j.at("raw").get<std::string>(), j.value("attempts", 1)};
}

void ResponseCache::put(const CacheKey& key, const CachedResponse& value) {
  auto path = path_for(key);
  std::lock_guard lock(mutex_);
  if (std::filesystem::exists(path)) return;
  write_json_file(path, Json{{"key", key.hex}, {"raw", value.raw}, {"attempts", value.attempts}});
}

void ResponseCache::clear() {
  std::lock_guard lock(mutex_);
  std::filesystem::remove_all(dir_);
}

// ---------------------------------------------------------------------------

CallOutcome cached_completion(Provider& provider, ResponseCache* cache, const std::string& prompt,
                              int run_index,
                              const std::function<void(const std::string&)>& validate) {
  const auto& cfg = provider.config();
  auto key = CacheKey::compute(cfg, prompt, run_index);
  if (cache) {
    if (auto hit = cache->get(key)) return CallOutcome{hit->raw, hit->attempts, true};
  }
  std::string last_error;
  for (int attempt = 1; attempt <= cfg.retry.max_attempts; ++attempt) {
    if (attempt > 1 && cfg.retry.backoff_base_ms > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(static_cast<long long>(cfg.retry.backoff_base_ms) << (attempt - 2)));
    }
    try {
      std::string raw = provider.complete({prompt, run_index, attempt});
      validate(raw);
      if (cache) cache->put(key, {raw, attempt});
      return CallOutcome{raw, attempt, false};
    } catch (const MalformedResponse& e) {
      last_error = std::string("malformed response: ") + e.what();
    } catch (const ProviderError& e) {
      if (!e.transient()) throw;
      last_error = e.what();
    }
  }
  throw ProviderError("provider_exhausted",
                      cfg.provider_id + ": gave up after " + std::to_string(cfg.retry.max_attempts) +
                          " attempts (" + last_error + ")");
}

}  // namespace rift
