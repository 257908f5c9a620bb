#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "polytask/core/difficulty.hpp"
#include "polytask/core/errors.hpp"
#include "polytask/core/instance.hpp"
#include "polytask/core/registry.hpp"
#include "polytask/core/rng.hpp"
#include "polytask/core/task.hpp"
#include "polytask/locale/pack_store.hpp"
#include "polytask/locale/render.hpp"

namespace polytask {

struct GenerationRequest {
  std::string task_id;
  Language language = Language::en;
  std::uint64_t dataset_seed = 0;
  std::uint64_t index = 0;
  Difficulty difficulty = Difficulty::defaults();
};

/// Ties tasks to packs. Const methods are safe to call from many threads.
class Engine {
 public:
  Engine(const TaskRegistry& registry, PackStore& packs, bool allow_fallback = true)
      : registry_(registry), packs_(packs), allow_fallback_(allow_fallback) {}

  [[nodiscard]] const TaskRegistry& registry() const { return registry_; }
  [[nodiscard]] PackStore& packs() const { return packs_; }
  [[nodiscard]] bool allow_fallback() const { return allow_fallback_; }

  [[nodiscard]] std::shared_ptr<const LanguagePack> pack_for(const Task& task, Language lang) const {
    return packs_.load(task.spec().task_id, lang, task.contract(), allow_fallback_);
  }

  [[nodiscard]] ProblemInstance generate_instance(const GenerationRequest& req) const {
    const auto& task = registry_.get(req.task_id);
    const auto resolved = resolve_difficulty(task.spec().curriculum, req.difficulty);
    return generate_instance(task, req.language, req.dataset_seed, req.index, resolved,
                             req.difficulty.as_percentile());
  }

  /// `rng_after`, when given, receives the instance stream after generation and rendering.
  ProblemInstance generate_instance(const Task& task, Language lang, std::uint64_t seed, std::uint64_t index,
                                    const ResolvedDifficulty& difficulty, std::optional<double> percentile,
                                    Rng* rng_after = nullptr) const {
    auto rng = derive_rng(seed, index, task.spec().task_id);
    auto generated = task.generate(rng, difficulty);
    const std::uint64_t variant_draw = rng.next();
    auto inst = materialize(task, lang, seed, index, difficulty, percentile, std::move(generated), variant_draw);
    if (rng_after) *rng_after = rng;
    return inst;
  }

  /// Renders and solves a given payload; used for forced fixtures and by generate_instance.
  [[nodiscard]] ProblemInstance materialize(const Task& task, Language lang, std::uint64_t seed, std::uint64_t index,
                                            const ResolvedDifficulty& difficulty, std::optional<double> percentile,
                                            Generated generated, std::uint64_t variant_draw) const {
    const auto pack = pack_for(task, lang);
    ProblemInstance inst;
    inst.task_id = task.spec().task_id;
    inst.language = lang;
    inst.dataset_seed = seed;
    inst.index = index;
    inst.difficulty_percentile = percentile;
    inst.difficulty = difficulty;
    inst.payload = std::move(generated.payload);
    inst.answer_kind = task.spec().answer_kind;
    inst.answer = task.solve(inst.payload);
    inst.question = task.render(*pack, inst.payload, variant_draw);
    if (task.contract().english_data && pack->language != Language::en) {
      inst.question += "\n" + render_question(*pack, kDataNoteKey, {{}, variant_draw});
    }
    inst.metadata = generated.metadata.is_object() ? std::move(generated.metadata) : nlohmann::json::object();
    inst.metadata["pack_quality"] = to_string(pack->quality);
    inst.metadata["answer_localized"] = task.format_answer(inst.answer, *pack);
    return inst;
  }

  /// Instances 0..count-1. Instance i never depends on count or on thread scheduling.
  [[nodiscard]] std::vector<ProblemInstance> generate_dataset(const std::string& task_id, Language lang,
                                                              std::uint64_t seed, std::uint64_t count,
                                                              const Difficulty& difficulty,
                                                              unsigned threads = 1) const {
    if (count == 0) throw ValidationError("dataset count must be at least 1");
    const auto& task = registry_.get(task_id);
    const auto resolved = resolve_difficulty(task.spec().curriculum, difficulty);
    const auto percentile = difficulty.as_percentile();
    (void)pack_for(task, lang);  // fail fast on pack errors

    std::vector<ProblemInstance> out(count);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(count, 64))));
    if (threads == 1) {
      for (std::uint64_t i = 0; i < count; ++i) out[i] = generate_instance(task, lang, seed, i, resolved, percentile);
      return out;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::uint64_t i = next++; i < count; i = next++) {
          try {
            out[i] = generate_instance(task, lang, seed, i, resolved, percentile);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
    return out;
  }

 private:
  const TaskRegistry& registry_;
  PackStore& packs_;
  bool allow_fallback_;
};

}  // namespace polytask
