#pragma once

#include <algorithm>
#include <map>
#include <memory>

#include "polytask/core/task.hpp"
#include "polytask/tasks/common.hpp"
#include "polytask/tasks/corpus.hpp"

namespace polytask::tasks {

/// Partition a shuffled word list into anagram groups drawn from the word-list anagram index.
class GroupAnagrams final : public TaskBase {
 public:
  explicit GroupAnagrams(std::shared_ptr<const Corpus> corpus)
      : TaskBase({"group_anagrams", Category::algorithmic, LocalizationFlag::translated_with_english_data,
                  DifficultyCurriculum({int_param("g", {2, 3, 5}, 0)}), AnswerKind::list_of_lists, "number of words"},
                 {{{"instructions", {}}, {"question", {"words"}}}, {}}),
        corpus_(std::move(corpus)) {
    if (corpus_->anagram_classes().size() < 5) throw ValidationError("word list has too few anagram classes");
  }

  /// Groups sorted internally and by first element.
  static ListOfLists group(const std::vector<std::string>& words) {
    std::map<std::string, std::vector<std::string>> by_signature;
    for (const auto& w : words) by_signature[Corpus::signature(w)].push_back(w);
    ListOfLists groups;
    for (auto& [sig, members] : by_signature) {
      std::sort(members.begin(), members.end());
      groups.push_back(std::move(members));
    }
    std::sort(groups.begin(), groups.end());
    return groups;
  }

  /// The words as a JSON array literal, the form shown in prompts in every language.
  static std::string json_list(const std::vector<std::string>& words) {
    std::string out = "[";
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i) out += ", ";
      out += nlohmann::json(words[i]).dump();
    }
    return out + "]";
  }

  Generated generate(Rng& rng, const ResolvedDifficulty& d) const override {
    const auto& classes = corpus_->anagram_classes();
    const auto g = static_cast<std::size_t>(d.integer("g"));
    std::vector<std::size_t> order(classes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    // Partial Fisher-Yates: the first g entries are a uniform sample.
    for (std::size_t i = 0; i < g; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(order.size() - i));
      std::swap(order[i], order[j]);
    }
    std::vector<std::string> words;
    for (std::size_t i = 0; i < g; ++i) {
      auto members = classes[order[i]];
      rng.shuffle(std::span<std::string>(members));
      const auto take = std::min<std::size_t>(members.size(), 4);
      words.insert(words.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(take));
    }
    rng.shuffle(std::span<std::string>(words));
    return {{{"words", words}}, {{"corpus_hash", corpus_->words_hash()}}};
  }

  [[nodiscard]] nlohmann::json solve(const nlohmann::json& p) const override { return group(strings(p.at("words"))); }

  [[nodiscard]] Bindings bindings(const nlohmann::json& p) const override {
    return {{"words", json_list(strings(p.at("words")))}};
  }

  [[nodiscard]] std::string render(const LanguagePack& pack, const nlohmann::json& p,
                                   std::uint64_t draw) const override {
    return render_question(pack, "instructions", {{}, draw}) + "\n\n" +
           render_question(pack, "question", {bindings(p), draw});
  }

  [[nodiscard]] double complexity(const nlohmann::json& p) const override {
    return static_cast<double>(p.at("words").size());
  }

 private:
  std::shared_ptr<const Corpus> corpus_;
};

}  // namespace polytask::tasks
