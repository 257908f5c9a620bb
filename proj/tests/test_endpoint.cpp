#include <gtest/gtest.h>

#include <httplib.h>

#include <atomic>
#include <cstdlib>
#include <deque>
#include <mutex>
#include <thread>

#include "polytask/eval/consistency.hpp"
#include "polytask/eval/http_client.hpp"
#include "polytask/eval/runner.hpp"
#include "test_support.hpp"

using namespace polytask;
using nlohmann::json;

namespace {

/// Local chat-completions stand-in: replays scripted statuses, then answers 200.
class FakeServer {
 public:
  explicit FakeServer(std::deque<int> statuses = {}) : statuses_(std::move(statuses)) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mutex_);
      ++hits_;
      last_body_ = req.body;
      last_auth_ = req.get_header_value("Authorization");
      if (!statuses_.empty()) {
        const int status = statuses_.front();
        statuses_.pop_front();
        res.status = status;
        res.set_content("scripted failure", "text/plain");
        return;
      }
      const auto body = json::parse(req.body);
      const auto question = body["messages"].back()["content"].get<std::string>();
      res.set_content(json{{"choices", {{{"message", {{"role", "assistant"}, {"content", "echo: " + question}}}}}}}.dump(),
                      "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeServer() {
    server_.stop();
    thread_.join();
  }

  [[nodiscard]] std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/"; }
  int hits() {
    std::lock_guard lock(mutex_);
    return hits_;
  }
  json last_body() {
    std::lock_guard lock(mutex_);
    return json::parse(last_body_);
  }
  std::string last_auth() {
    std::lock_guard lock(mutex_);
    return last_auth_;
  }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::mutex mutex_;
  std::deque<int> statuses_;
  int hits_ = 0;
  std::string last_body_;
  std::string last_auth_;
};

ModelEndpointConfig config_for(const FakeServer& s) {
  ModelEndpointConfig c;
  c.base_url = s.base_url();
  c.model = "tiny";
  c.timeout = std::chrono::milliseconds(5000);
  c.max_retries = 3;
  return c;
}

ChatRequest ask(const std::string& q) {
  ChatRequest r;
  r.messages = {{"system", "be brief"}, {"user", q}};
  return r;
}

}  // namespace

TEST(Endpoint, ParsesBaseUrls) {
  EXPECT_EQ(parse_base_url("http://h:8000/v1/").origin, "http://h:8000");
  EXPECT_EQ(parse_base_url("http://h:8000/v1/").path, "/v1");
  EXPECT_EQ(parse_base_url("https://api.example.org").path, "");
  EXPECT_THROW((void)parse_base_url("nohost"), ConfigError);
}

TEST(Endpoint, RequestBodyShape) {
  ModelEndpointConfig c;
  c.model = "m";
  c.sampling.temperature = 0.6;
  c.sampling.top_p = 0.95;
  c.sampling.max_tokens = 128;
  const auto body = build_request_body(c, ask("q"));
  EXPECT_EQ(body["model"], "m");
  EXPECT_EQ(body["messages"].size(), 2u);
  EXPECT_EQ(body["messages"][1]["role"], "user");
  EXPECT_EQ(body["max_tokens"], 128);
  EXPECT_DOUBLE_EQ(body["top_p"].get<double>(), 0.95);
}

TEST(Endpoint, CompletionParsing) {
  EXPECT_EQ(parse_completion(json::parse(R"({"choices":[{"message":{"content":"hi"}}]})")), "hi");
  EXPECT_EQ(parse_completion(json::parse(R"({"choices":[{"message":{"content":null}}]})")), "");
  EXPECT_FALSE(parse_completion(json::parse(R"({"choices":[]})")));
  EXPECT_FALSE(parse_completion(json::parse(R"({"error":"x"})")));
}

TEST(Endpoint, RetryableStatuses) {
  EXPECT_TRUE(is_retryable_status(429));
  EXPECT_TRUE(is_retryable_status(503));
  EXPECT_TRUE(is_retryable_status(0));
  EXPECT_FALSE(is_retryable_status(400));
  EXPECT_FALSE(is_retryable_status(401));
}

TEST(Endpoint, BackoffDoublesUpToCap) {
  RetryPolicy p{5, std::chrono::milliseconds(500), std::chrono::milliseconds(3000)};
  EXPECT_EQ(p.delay(0).count(), 500);
  EXPECT_EQ(p.delay(1).count(), 1000);
  EXPECT_EQ(p.delay(2).count(), 2000);
  EXPECT_EQ(p.delay(3).count(), 3000);
  EXPECT_EQ(p.delay(10).count(), 3000);
}

TEST(Endpoint, RoundTripAgainstLocalServer) {
  FakeServer server;
  HttpChatClient client(config_for(server));
  const auto r = client.complete(ask("What is 2+2?"));
  ASSERT_TRUE(r.ok) << r.error;
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.content, "echo: What is 2+2?");
  const auto body = server.last_body();
  EXPECT_EQ(body["model"], "tiny");
  EXPECT_EQ(body["messages"][0]["content"], "be brief");
  EXPECT_EQ(server.last_auth(), "");
}

TEST(Endpoint, BearerTokenFromEnvironment) {
  FakeServer server;
  ::setenv("POLYTASK_TEST_API_KEY", "sekrit", 1);
  auto c = config_for(server);
  c.api_key_env = "POLYTASK_TEST_API_KEY";
  HttpChatClient client(c);
  ASSERT_TRUE(client.complete(ask("x")).ok);
  EXPECT_EQ(server.last_auth(), "Bearer sekrit");
  c.api_key_env = "POLYTASK_TEST_UNSET_KEY";
  ::unsetenv("POLYTASK_TEST_UNSET_KEY");
  EXPECT_THROW(HttpChatClient{c}, ConfigError);
}

TEST(Endpoint, RetriesThrottlingThenSucceeds) {
  FakeServer server({429, 503});
  HttpChatClient client(config_for(server));
  std::vector<long> waits;
  const auto out = complete_with_retries(client, ask("q"), RetryPolicy{3, std::chrono::milliseconds(10), std::chrono::milliseconds(100)},
                                         [&](std::chrono::milliseconds d) { waits.push_back(d.count()); });
  EXPECT_TRUE(out.response.ok) << out.response.error;
  EXPECT_EQ(out.calls, 3);
  EXPECT_EQ(server.hits(), 3);
  EXPECT_EQ(waits, (std::vector<long>{10, 20}));
}

TEST(Endpoint, ExhaustsRetryBudget) {
  FakeServer server({500, 500, 500, 500, 500});
  HttpChatClient client(config_for(server));
  const auto out = complete_with_retries(client, ask("q"), RetryPolicy{2, {}, {}}, [](auto) {});
  EXPECT_FALSE(out.response.ok);
  EXPECT_EQ(out.response.status, 500);
  EXPECT_EQ(out.calls, 3);
}

TEST(Endpoint, ClientErrorsAreNotRetried) {
  FakeServer server({400});
  HttpChatClient client(config_for(server));
  const auto out = complete_with_retries(client, ask("q"), RetryPolicy{3, {}, {}}, [](auto) {});
  EXPECT_FALSE(out.response.ok);
  EXPECT_EQ(out.calls, 1);
  EXPECT_EQ(out.response.status, 400);
}

TEST(Endpoint, UnreachableHostIsATransportError) {
  ModelEndpointConfig c;
  c.base_url = "http://127.0.0.1:1";
  c.model = "m";
  c.timeout = std::chrono::milliseconds(500);
  HttpChatClient client(c);
  const auto r = client.complete(ask("q"));
  EXPECT_FALSE(r.ok);
  EXPECT_TRUE(r.retryable);
  EXPECT_EQ(r.status, 0);
}

TEST(Endpoint, EvalOverHttpRecordsAttempts) {
  FakeServer server({503});
  auto& s = polytask::testing::shared_suite();
  const auto data = s.engine().generate_dataset("gcd", Language::en, 1, 2, Difficulty::defaults(), 1);
  HttpChatClient client(config_for(server));
  const auto detector = LanguageDetector::load(s.data_dir() / "stopwords.json");
  EvalOptions o;
  o.k = 2;
  o.sleeper = [](std::chrono::milliseconds) {};
  o.concurrency = 2;
  const auto summary = run_eval(data, client, s.verifier(), detector, o);
  EXPECT_TRUE(summary.complete);
  EXPECT_EQ(summary.records.size(), 4u);
  EXPECT_EQ(summary.exhausted, 0u);
  EXPECT_EQ(summary.http_calls, 5u);
  EXPECT_EQ(server.hits(), 5);
  // the echo ends with the question's last line, which is not the answer
  for (const auto& r : summary.records) EXPECT_FALSE(r.transcript.empty());
}
