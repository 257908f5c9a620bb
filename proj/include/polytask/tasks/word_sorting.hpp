#pragma once

#include <algorithm>
#include <memory>
#include <set>

#include "polytask/core/task.hpp"
#include "polytask/locale/unicode.hpp"
#include "polytask/tasks/common.hpp"
#include "polytask/tasks/corpus.hpp"

namespace polytask::tasks {

/// Sort English words ascending, ignoring case. Answer: the words joined by ", ".
class WordSorting final : public TaskBase {
 public:
  explicit WordSorting(std::shared_ptr<const Corpus> corpus)
      : TaskBase({"word_sorting", Category::algorithmic, LocalizationFlag::translated_with_english_data,
                  DifficultyCurriculum({int_param("w", {4, 8, 14}, 1)}), AnswerKind::text, "number of words"},
                 {{{"question", {"words"}}}, {}}),
        corpus_(std::move(corpus)) {}

  static std::vector<std::string> sorted(std::vector<std::string> words) {
    std::stable_sort(words.begin(), words.end(),
                     [](const std::string& a, const std::string& b) { return lower_ascii(a) < lower_ascii(b); });
    return words;
  }

  /// Words of a free-form answer: split on commas, whitespace, brackets and quotes.
  static std::vector<std::string> split_answer(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (const auto& cp : unicode::decode_spans(text)) {
      const char32_t c = cp.value;
      const bool sep = unicode::is_space(c) || c == ',' || c == 0x3001 || c == 0xFF0C || c == '[' || c == ']' ||
                       c == '"' || c == '\'' || c == 0x201C || c == 0x201D;
      if (sep) {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur.append(text.substr(cp.offset, cp.length));
      }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
  }

  // A quarter of the words are capitalized so that case-insensitive ordering matters.
  Generated generate(Rng& rng, const ResolvedDifficulty& d) const override {
    const auto w = static_cast<std::size_t>(d.integer("w"));
    const auto& pool = corpus_->words();
    std::set<std::size_t> picked;
    std::vector<std::string> words;
    while (words.size() < w) {
      const auto i = static_cast<std::size_t>(rng.below(pool.size()));
      if (!picked.insert(i).second) continue;
      std::string word = pool[i];
      if (rng.chance(1, 4)) word[0] = static_cast<char>(word[0] - 'a' + 'A');
      words.push_back(std::move(word));
    }
    return {{{"words", words}}, {{"corpus_hash", corpus_->words_hash()}}};
  }

  [[nodiscard]] nlohmann::json solve(const nlohmann::json& p) const override {
    return join(sorted(strings(p.at("words"))), ", ");
  }

  [[nodiscard]] Bindings bindings(const nlohmann::json& p) const override {
    return {{"words", join(strings(p.at("words")), ", ")}};
  }

  [[nodiscard]] bool check(const nlohmann::json& p, const AnswerValue& candidate) const override {
    const auto* text = std::get_if<std::string>(&candidate);
    if (!text) return false;
    const auto got = split_answer(*text);
    const auto want = sorted(strings(p.at("words")));
    if (got.size() != want.size()) return false;
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (unicode::fold(got[i]) != unicode::fold(want[i])) return false;
    }
    return true;
  }

  [[nodiscard]] double complexity(const nlohmann::json& p) const override {
    return static_cast<double>(p.at("words").size());
  }

 private:
  std::shared_ptr<const Corpus> corpus_;
};

}  // namespace polytask::tasks
