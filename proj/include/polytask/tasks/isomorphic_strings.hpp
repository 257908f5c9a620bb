#pragma once

#include <array>
#include <map>

#include "polytask/core/task.hpp"
#include "polytask/tasks/common.hpp"

namespace polytask::tasks {

/// Whether two equal-length lowercase strings are related by a character bijection.
class IsomorphicStrings final : public TaskBase {
 public:
  IsomorphicStrings()
      : TaskBase({"isomorphic_strings", Category::algorithmic, LocalizationFlag::fully_translated,
                  DifficultyCurriculum({int_param("length", {2, 6, 12}, 1)}), AnswerKind::localized_boolean,
                  "string length"},
                 {{{"question", {"first", "second"}}}, {"True", "False"}}) {}

  static bool isomorphic(std::string_view s, std::string_view t) {
    if (s.size() != t.size()) return false;
    std::map<char, char> forward;
    std::map<char, char> backward;
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto [f, f_new] = forward.emplace(s[i], t[i]);
      auto [b, b_new] = backward.emplace(t[i], s[i]);
      if (f->second != t[i] || b->second != s[i]) return false;
    }
    return true;
  }

  Generated generate(Rng& rng, const ResolvedDifficulty& d) const override {
    const auto length = static_cast<std::size_t>(d.integer("length"));
    std::array<char, 26> alphabet{};
    for (int i = 0; i < 26; ++i) alphabet[static_cast<std::size_t>(i)] = static_cast<char>('a' + i);

    rng.shuffle(std::span<char>(alphabet));
    const auto distinct = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(std::min<std::size_t>(length, 10))));
    std::string s;
    for (std::size_t i = 0; i < length; ++i) s.push_back(alphabet[static_cast<std::size_t>(rng.below(distinct))]);

    rng.shuffle(std::span<char>(alphabet));
    std::map<char, char> image;
    std::size_t used = 0;
    std::string t;
    for (char c : s) {
      auto it = image.find(c);
      if (it == image.end()) it = image.emplace(c, alphabet[used++]).first;
      t.push_back(it->second);
    }

    const bool positive = rng.chance(1, 2);
    if (!positive) {
      // Force a conflict: two different source letters onto one target, or one
      // source letter onto two targets when s uses a single letter.
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t i = 0; i < length; ++i) {
        for (std::size_t j = i + 1; j < length; ++j) {
          if (s[i] != s[j]) pairs.emplace_back(i, j);
        }
      }
      if (!pairs.empty()) {
        const auto [i, j] = pairs[static_cast<std::size_t>(rng.below(pairs.size()))];
        t[j] = t[i];
      } else {
        const auto j = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(length) - 1));
        t[j] = alphabet[used];
      }
    }
    return {{{"first", s}, {"second", t}}};
  }

  [[nodiscard]] nlohmann::json solve(const nlohmann::json& p) const override {
    return isomorphic(p.at("first").get<std::string>(), p.at("second").get<std::string>()) ? "True" : "False";
  }

  [[nodiscard]] Bindings bindings(const nlohmann::json& p) const override {
    return {{"first", p.at("first").get<std::string>()}, {"second", p.at("second").get<std::string>()}};
  }

  [[nodiscard]] double complexity(const nlohmann::json& p) const override {
    return static_cast<double>(p.at("first").get<std::string>().size());
  }
};

}  // namespace polytask::tasks
