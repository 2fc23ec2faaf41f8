#include <cstdlib>
#include <regex>

#include "httplib.h"
#include "rift/error.hpp"
#include "rift/provider.hpp"

namespace rift {

HttpProvider::HttpProvider(ProviderConfig config) : Provider(std::move(config)) {}

std::string HttpProvider::complete(const CompletionRequest& request) {
  const auto& cfg = config();
  static const std::regex url_re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(cfg.endpoint, m, url_re)) {
    throw ProviderError("invalid_endpoint", cfg.provider_id + ": bad endpoint '" + cfg.endpoint + "'");
  }
  std::string base = m[1];
  std::string path = m[2].matched ? std::string(m[2]) : "/v1/chat/completions";

  httplib::Headers headers;
  if (!cfg.api_key_env.empty()) {
    const char* key = std::getenv(cfg.api_key_env.c_str());
    if (!key || !*key) {
      throw ProviderError("missing_api_key",
                          cfg.provider_id + ": environment variable " + cfg.api_key_env + " is unset");
    }
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  Json body{{"model", cfg.model_name},
            {"messages", Json::array({{{"role", "user"}, {"content", request.prompt}}})},
            {"temperature", cfg.temperature},
            {"max_tokens", cfg.max_output_tokens}};

  httplib::Client client(base);
  client.set_connection_timeout(30);
  client.set_read_timeout(300);
  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) {
    throw ProviderError("transport_error",
                        cfg.provider_id + ": " + httplib::to_string(res.error()), true);
  }
  if (res->status == 429 || res->status >= 500) {
    throw ProviderError("transport_error",
                        cfg.provider_id + ": HTTP " + std::to_string(res->status), true);
  }
  if (res->status != 200) {
    throw ProviderError("provider_rejected", cfg.provider_id + ": HTTP " +
                                                 std::to_string(res->status) + ": " + res->body);
  }
  auto reply = Json::parse(res->body, nullptr, false);
  if (reply.is_discarded()) {
    throw ProviderError("transport_error", cfg.provider_id + ": non-JSON response body", true);
  }
  try {
    if (reply.contains("choices")) {
      return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    }
    if (reply.contains("content")) return reply.at("content").get<std::string>();
    return reply.at("text").get<std::string>();
  } catch (const Json::exception&) {
    throw ProviderError("transport_error", cfg.provider_id + ": unexpected response shape", true);
  }
}

}  // namespace rift
