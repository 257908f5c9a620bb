#pragma once

// HTTP(S) chat client over cpp-httplib. HTTPS needs CPPHTTPLIB_OPENSSL_SUPPORT
// (set by the CMake target) and OpenSSL at link time.

#include <cstdlib>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "polytask/core/errors.hpp"
#include "polytask/eval/endpoint.hpp"

namespace polytask {

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // prefix without trailing slash, may be empty
};

inline ParsedUrl parse_base_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("endpoint.base_url has no scheme: " + url);
  const auto slash = url.find('/', scheme_end + 3);
  ParsedUrl out;
  out.origin = url.substr(0, slash);
  out.path = slash == std::string::npos ? "" : url.substr(slash);
  while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
  if (out.origin.size() <= scheme_end + 3) throw ConfigError("endpoint.base_url has no host: " + url);
  return out;
}

class HttpChatClient : public ChatClient {
 public:
  explicit HttpChatClient(ModelEndpointConfig config) : config_(std::move(config)) {
    config_.validate();
    url_ = parse_base_url(config_.base_url);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (config_.base_url.rfind("https://", 0) == 0) {
      throw ConfigError("this build has no TLS support; use an http:// endpoint");
    }
#endif
    if (!config_.api_key_env.empty()) {
      const char* key = std::getenv(config_.api_key_env.c_str());
      if (!key || !*key) {
        throw ConfigError("environment variable " + config_.api_key_env + " (endpoint.api_key_env) is not set");
      }
      api_key_ = key;
    }
  }

  ChatResponse complete(const ChatRequest& request) override {
    // A client per call keeps this thread-safe without sharing sockets.
    httplib::Client client(url_.origin);
    const auto secs = config_.timeout.count() / 1000;
    const auto usecs = (config_.timeout.count() % 1000) * 1000;
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
    const auto body = build_request_body(config_, request).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    auto res = client.Post(url_.path + "/chat/completions", headers, body, "application/json");
    ChatResponse out;
    if (!res) {
      out.error = "transport error: " + httplib::to_string(res.error());
      out.retryable = true;
      return out;
    }
    out.status = res->status;
    if (res->status < 200 || res->status >= 300) {
      out.error = "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 300);
      out.retryable = is_retryable_status(res->status);
      return out;
    }
    try {
      auto content = parse_completion(nlohmann::json::parse(res->body));
      if (!content) {
        out.error = "response has no choices[0].message.content";
        return out;
      }
      out.ok = true;
      out.content = std::move(*content);
    } catch (const nlohmann::json::exception& e) {
      out.error = std::string("response is not JSON: ") + e.what();
    }
    return out;
  }

 private:
  ModelEndpointConfig config_;
  ParsedUrl url_;
  std::string api_key_;
};

}  // namespace polytask
