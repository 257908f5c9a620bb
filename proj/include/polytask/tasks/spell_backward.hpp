#pragma once

#include <memory>

#include "polytask/core/task.hpp"
#include "polytask/tasks/common.hpp"
#include "polytask/tasks/corpus.hpp"

namespace polytask::tasks {

/// Reverse an English word from the shipped word list.
class SpellBackward final : public TaskBase {
 public:
  explicit SpellBackward(std::shared_ptr<const Corpus> corpus)
      : TaskBase({"spell_backward", Category::algorithmic, LocalizationFlag::translated_with_english_data,
                  DifficultyCurriculum({text_param("length", {"3-5", "6-8", "9-12"}, 1)}), AnswerKind::text,
                  "word length"},
                 {{{"question", {"word"}}}, {}}),
        corpus_(std::move(corpus)) {
    for (const auto& bucket : {std::pair{3, 5}, std::pair{6, 8}, std::pair{9, 12}}) {
      pools_.push_back(corpus_->words_with_length(bucket.first, bucket.second));
      if (pools_.back().empty()) throw ValidationError("word list has no words for spell_backward");
    }
  }

  static std::string reversed(std::string s) { return {s.rbegin(), s.rend()}; }

  Generated generate(Rng& rng, const ResolvedDifficulty& d) const override {
    const auto& level = d.text("length");
    const std::size_t bucket = level == "3-5" ? 0 : level == "6-8" ? 1 : 2;
    const auto& pool = pools_[bucket];
    return {{{"word", pool[static_cast<std::size_t>(rng.below(pool.size()))]}},
            {{"corpus_hash", corpus_->words_hash()}}};
  }

  [[nodiscard]] nlohmann::json solve(const nlohmann::json& p) const override {
    return reversed(p.at("word").get<std::string>());
  }

  [[nodiscard]] Bindings bindings(const nlohmann::json& p) const override {
    return {{"word", p.at("word").get<std::string>()}};
  }

  [[nodiscard]] double complexity(const nlohmann::json& p) const override {
    return static_cast<double>(p.at("word").get<std::string>().size());
  }

 private:
  std::shared_ptr<const Corpus> corpus_;
  std::vector<std::vector<std::string>> pools_;
};

}  // namespace polytask::tasks
