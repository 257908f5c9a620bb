#pragma once

// Chat-completion endpoint configuration, the client seam and the retry loop.
// Wire format: POST <base_url>/chat/completions with
//   {"model", "messages": [{"role", "content"}], "temperature", "top_p", "max_tokens"}
// and the reply text read from choices[0].message.content.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "polytask/core/errors.hpp"
#include "polytask/eval/records.hpp"

namespace polytask {

struct SamplingParams {
  double temperature = 0.6;
  double top_p = 0.95;
  int max_tokens = 4096;
};

struct ModelEndpointConfig {
  std::string base_url;  // http(s)://host[:port][/prefix] or fixture://<mode>
  std::string model;
  SamplingParams sampling;
  std::chrono::milliseconds timeout{120000};
  int max_retries = 3;
  std::chrono::milliseconds backoff_initial{500};
  std::chrono::milliseconds backoff_max{8000};
  int max_concurrency = 4;
  std::string api_key_env;  // name of the variable holding the bearer token; empty for none
  std::string system_prompt;

  void validate() const {
    if (base_url.empty()) throw ConfigError("endpoint.base_url is required");
    if (base_url.rfind("http://", 0) != 0 && base_url.rfind("https://", 0) != 0 &&
        base_url.rfind("fixture://", 0) != 0) {
      throw ConfigError("endpoint.base_url must start with http://, https:// or fixture://: " + base_url);
    }
    if (model.empty()) throw ConfigError("endpoint.model is required");
    if (max_concurrency < 1) throw ConfigError("endpoint.max_concurrency must be >= 1");
    if (max_retries < 0 || max_retries > 20) throw ConfigError("endpoint.max_retries must be in [0, 20]");
    if (timeout.count() <= 0) throw ConfigError("endpoint.timeout_ms must be positive");
    if (backoff_initial.count() < 0 || backoff_max < backoff_initial) {
      throw ConfigError("endpoint backoff must satisfy 0 <= backoff_initial_ms <= backoff_max_ms");
    }
    if (sampling.max_tokens < 1) throw ConfigError("endpoint.max_tokens must be >= 1");
    if (sampling.temperature < 0) throw ConfigError("endpoint.temperature must be >= 0");
    if (sampling.top_p <= 0 || sampling.top_p > 1) throw ConfigError("endpoint.top_p must be in (0, 1]");
  }

  static ModelEndpointConfig from_json(const nlohmann::json& j) {
    static const std::set<std::string> allowed = {
        "base_url",        "model",          "temperature",    "top_p",          "max_tokens",   "timeout_ms",
        "max_retries",     "backoff_initial_ms", "backoff_max_ms", "max_concurrency", "api_key_env", "system_prompt"};
    if (!j.is_object()) throw ConfigError("endpoint must be an object");
    for (const auto& [key, _] : j.items()) {
      if (!allowed.contains(key)) throw ConfigError("unknown key endpoint." + key);
    }
    ModelEndpointConfig c;
    try {
      c.base_url = j.value("base_url", c.base_url);
      c.model = j.value("model", c.model);
      c.sampling.temperature = j.value("temperature", c.sampling.temperature);
      c.sampling.top_p = j.value("top_p", c.sampling.top_p);
      c.sampling.max_tokens = j.value("max_tokens", c.sampling.max_tokens);
      c.timeout = std::chrono::milliseconds(j.value("timeout_ms", c.timeout.count()));
      c.max_retries = j.value("max_retries", c.max_retries);
      c.backoff_initial = std::chrono::milliseconds(j.value("backoff_initial_ms", c.backoff_initial.count()));
      c.backoff_max = std::chrono::milliseconds(j.value("backoff_max_ms", c.backoff_max.count()));
      c.max_concurrency = j.value("max_concurrency", c.max_concurrency);
      c.api_key_env = j.value("api_key_env", c.api_key_env);
      c.system_prompt = j.value("system_prompt", c.system_prompt);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("bad endpoint config: ") + e.what());
    }
    return c;
  }
};

struct ChatMessage {
  std::string role;
  std::string content;
};

struct ChatRequest {
  std::vector<ChatMessage> messages;
  InstanceKey instance;  // for fixtures and logging; not sent
  int attempt = 0;
};

struct ChatResponse {
  bool ok = false;
  std::string content;
  int status = 0;
  std::string error;
  bool retryable = false;
};

/// Adapter seam: one blocking completion per call. Implementations must be thread-safe.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual ChatResponse complete(const ChatRequest& request) = 0;
};

inline nlohmann::json build_request_body(const ModelEndpointConfig& config, const ChatRequest& request) {
  nlohmann::json messages = nlohmann::json::array();
  for (const auto& m : request.messages) messages.push_back({{"role", m.role}, {"content", m.content}});
  return {{"model", config.model},
          {"messages", messages},
          {"temperature", config.sampling.temperature},
          {"top_p", config.sampling.top_p},
          {"max_tokens", config.sampling.max_tokens}};
}

inline std::optional<std::string> parse_completion(const nlohmann::json& body) {
  if (!body.is_object() || !body.contains("choices") || !body["choices"].is_array() || body["choices"].empty()) {
    return std::nullopt;
  }
  const auto& choice = body["choices"][0];
  if (!choice.is_object() || !choice.contains("message")) return std::nullopt;
  const auto& content = choice["message"].value("content", nlohmann::json());
  if (content.is_null()) return std::string();
  if (!content.is_string()) return std::nullopt;
  return content.get<std::string>();
}

/// Transport failures, 408, 429 and 5xx are worth retrying; other 4xx are not.
inline bool is_retryable_status(int status) { return status == 0 || status == 408 || status == 429 || status >= 500; }

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds initial{500};
  std::chrono::milliseconds max{8000};

  static RetryPolicy from(const ModelEndpointConfig& c) { return {c.max_retries, c.backoff_initial, c.backoff_max}; }

  /// Wait before retry number `retry` (0-based): min(initial * 2^retry, max).
  [[nodiscard]] std::chrono::milliseconds delay(int retry) const {
    auto d = initial;
    for (int i = 0; i < retry && d < max; ++i) d *= 2;
    return std::min(d, max);
  }
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

inline Sleeper real_sleeper() {
  return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

struct RetryOutcome {
  ChatResponse response;
  int calls = 0;
};

inline RetryOutcome complete_with_retries(ChatClient& client, const ChatRequest& request, const RetryPolicy& policy,
                                          const Sleeper& sleep) {
  RetryOutcome out;
  for (int retry = 0;; ++retry) {
    ++out.calls;
    try {
      out.response = client.complete(request);
    } catch (const std::exception& e) {
      out.response = ChatResponse{false, {}, 0, e.what(), true};
    }
    if (out.response.ok || !out.response.retryable || retry >= policy.max_retries) return out;
    if (sleep) sleep(policy.delay(retry));
  }
}

}  // namespace polytask
