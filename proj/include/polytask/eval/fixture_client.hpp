#pragma once

// Deterministic offline endpoints, selected with base_url "fixture://<mode>":
//   oracle   restates the question, then the localized canonical answer after the language's marker
//   english  English reasoning and the answer formatted with the English pack
//   mixed    oracle when (index + attempt) is even, otherwise an empty reply
//   empty    always an empty reply
//   error    always HTTP 503 (exercises retries and exhaustion)

#include <atomic>
#include <map>
#include <string>
#include <vector>

#include "polytask/core/errors.hpp"
#include "polytask/core/instance.hpp"
#include "polytask/core/registry.hpp"
#include "polytask/eval/endpoint.hpp"
#include "polytask/locale/pack_store.hpp"

namespace polytask {

enum class FixtureMode { oracle, english, mixed, empty, error };

inline FixtureMode parse_fixture_mode(const std::string& base_url) {
  const std::string prefix = "fixture://";
  if (base_url.rfind(prefix, 0) != 0) throw ConfigError("not a fixture endpoint: " + base_url);
  const auto mode = base_url.substr(prefix.size());
  if (mode == "oracle") return FixtureMode::oracle;
  if (mode == "english") return FixtureMode::english;
  if (mode == "mixed") return FixtureMode::mixed;
  if (mode == "empty") return FixtureMode::empty;
  if (mode == "error") return FixtureMode::error;
  throw ConfigError("unknown fixture endpoint '" + mode + "' (oracle, english, mixed, empty, error)");
}

class FixtureChatClient : public ChatClient {
 public:
  FixtureChatClient(FixtureMode mode, const std::vector<ProblemInstance>& dataset, const TaskRegistry& registry,
                    PackStore& packs)
      : mode_(mode), registry_(registry), packs_(packs) {
    for (const auto& inst : dataset) instances_.emplace(key_of(inst), &inst);
  }

  [[nodiscard]] std::size_t calls() const { return calls_.load(); }

  ChatResponse complete(const ChatRequest& request) override {
    ++calls_;
    if (mode_ == FixtureMode::error) return {false, {}, 503, "HTTP 503: fixture outage", true};
    const auto it = instances_.find(request.instance);
    if (it == instances_.end()) return {false, {}, 404, "fixture has no instance " + to_string(request.instance), false};
    const auto& inst = *it->second;
    switch (mode_) {
      case FixtureMode::empty:
        return {true, "", 200, {}, false};
      case FixtureMode::mixed:
        if ((inst.index + static_cast<std::uint64_t>(request.attempt)) % 2 != 0) return {true, "", 200, {}, false};
        [[fallthrough]];
      case FixtureMode::oracle: {
        const auto& markers = packs_.languages().profile(inst.language).answer_markers;
        const std::string marker = markers.empty() ? "Final answer:" : markers.front();
        const auto answer = inst.metadata.value("answer_localized", std::string());
        return {true, inst.question + "\n\n" + marker + " " + answer, 200, {}, false};
      }
      case FixtureMode::english: {
        const auto& task = registry_.get(inst.task_id);
        const auto en = packs_.load(inst.task_id, Language::en, task.contract(), false);
        return {true,
                "Let me work through this step by step and check the result carefully.\n\nFinal answer: " +
                    task.format_answer(inst.answer, *en),
                200, {}, false};
      }
      case FixtureMode::error:
        break;
    }
    return {false, {}, 500, "unreachable", false};
  }

 private:
  FixtureMode mode_;
  const TaskRegistry& registry_;
  PackStore& packs_;
  std::map<InstanceKey, const ProblemInstance*> instances_;
  std::atomic<std::size_t> calls_{0};
};

}  // namespace polytask
