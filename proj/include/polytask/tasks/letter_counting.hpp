#pragma once

#include <algorithm>
#include <memory>

#include "polytask/core/task.hpp"
#include "polytask/tasks/common.hpp"
#include "polytask/tasks/corpus.hpp"

namespace polytask::tasks {

/// Occurrences of a letter in a span of w consecutive words of the sentence corpus.
class LetterCounting final : public TaskBase {
 public:
  explicit LetterCounting(std::shared_ptr<const Corpus> corpus)
      : TaskBase({"letter_counting", Category::algorithmic, LocalizationFlag::translated_with_english_data,
                  DifficultyCurriculum({int_param("w", {3, 6, 10}, 1)}), AnswerKind::integer, "span length in letters"},
                 {{{"question", {"letter", "text"}}}, {}}),
        corpus_(std::move(corpus)) {
    if (corpus_->text_tokens().size() < 10) throw ValidationError("sentence corpus is too short for letter_counting");
  }

  static std::int64_t count_letter(std::string_view text, char letter) {
    return std::count_if(text.begin(), text.end(), [&](char c) { return c == letter; });
  }

  // Three times in four the letter comes from the span; otherwise any letter, possibly absent.
  Generated generate(Rng& rng, const ResolvedDifficulty& d) const override {
    const auto w = static_cast<std::size_t>(d.integer("w"));
    const auto& tokens = corpus_->text_tokens();
    const auto start = static_cast<std::size_t>(rng.below(tokens.size() - w + 1));
    std::vector<std::string> span(tokens.begin() + static_cast<std::ptrdiff_t>(start),
                                  tokens.begin() + static_cast<std::ptrdiff_t>(start + w));
    const auto text = join(span, " ");
    std::string letters;
    for (char c : text) {
      if (c != ' ') letters.push_back(c);
    }
    char letter = 0;
    if (rng.chance(3, 4)) letter = letters[static_cast<std::size_t>(rng.below(letters.size()))];
    else letter = static_cast<char>('a' + rng.below(26));
    return {{{"text", text}, {"letter", std::string(1, letter)}}, {{"corpus_hash", corpus_->sentences_hash()}}};
  }

  [[nodiscard]] nlohmann::json solve(const nlohmann::json& p) const override {
    return count_letter(p.at("text").get<std::string>(), p.at("letter").get<std::string>().at(0));
  }

  [[nodiscard]] Bindings bindings(const nlohmann::json& p) const override {
    return {{"letter", p.at("letter").get<std::string>()}, {"text", p.at("text").get<std::string>()}};
  }

  [[nodiscard]] double complexity(const nlohmann::json& p) const override {
    const auto text = p.at("text").get<std::string>();
    return static_cast<double>(text.size() - static_cast<std::size_t>(std::count(text.begin(), text.end(), ' ')));
  }

 private:
  std::shared_ptr<const Corpus> corpus_;
};

}  // namespace polytask::tasks
