#pragma once

#include <array>
#include <string_view>

#include "polytask/core/task.hpp"
#include "polytask/tasks/common.hpp"

namespace polytask::tasks {

struct Animal {
  std::string_view id;
  std::int64_t legs;
};

/// Canonical animal ids and leg counts. Localized names live in packs under "animal_<id>".
inline constexpr std::array<Animal, 12> kLegTable = {{{"spider", 8},
                                                      {"cow", 4},
                                                      {"duck", 2},
                                                      {"ant", 6},
                                                      {"dog", 4},
                                                      {"cat", 4},
                                                      {"chicken", 2},
                                                      {"horse", 4},
                                                      {"bee", 6},
                                                      {"crab", 10},
                                                      {"starfish", 5},
                                                      {"sheep", 4}}};

inline std::int64_t legs_of(std::string_view id) {
  for (const auto& a : kLegTable) {
    if (a.id == id) return a.legs;
  }
  throw ValidationError("unknown animal: " + std::string(id));
}

/// Total legs of a list of "animal: count" lines; the line format avoids plurals.
class LegCounting final : public TaskBase {
 public:
  LegCounting()
      : TaskBase({"leg_counting", Category::arithmetic, LocalizationFlag::fully_translated,
                  DifficultyCurriculum({int_param("A", {2, 3, 5}, 0), int_param("C", {5, 20, 100}, 0)}),
                  AnswerKind::integer, "total animal count"},
                 contract_spec()) {}

  static PackContract contract_spec() {
    PackContract c;
    c.schema["question"] = {"animals"};
    c.schema["animal_line"] = {"animal", "count"};
    for (const auto& a : kLegTable) c.schema["animal_" + std::string(a.id)] = {};
    return c;
  }

  Generated generate(Rng& rng, const ResolvedDifficulty& d) const override {
    const auto species = rng.uniform(1, d.integer("A"));
    const auto max_count = d.integer("C");
    std::vector<std::size_t> order(kLegTable.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(std::span<std::size_t>(order));
    nlohmann::json animals = nlohmann::json::array();
    for (std::int64_t i = 0; i < species; ++i) {
      animals.push_back({{"animal", std::string(kLegTable[order[static_cast<std::size_t>(i)]].id)},
                         {"count", rng.uniform(1, max_count)}});
    }
    return {{{"animals", animals}}};
  }

  [[nodiscard]] nlohmann::json solve(const nlohmann::json& p) const override {
    std::int64_t total = 0;
    for (const auto& a : p.at("animals")) total += a.at("count").get<std::int64_t>() * legs_of(a.at("animal").get<std::string>());
    return total;
  }

  [[nodiscard]] Bindings bindings(const nlohmann::json&) const override { return {}; }

  [[nodiscard]] std::string render(const LanguagePack& pack, const nlohmann::json& p,
                                   std::uint64_t draw) const override {
    std::string lines;
    for (const auto& a : p.at("animals")) {
      const auto name = render_question(pack, "animal_" + a.at("animal").get<std::string>(), {{}, draw});
      if (!lines.empty()) lines += "\n";
      lines += render_question(pack, "animal_line", {{{"animal", name}, {"count", a.at("count").get<std::int64_t>()}}, draw});
    }
    return render_question(pack, "question", {{{"animals", lines}}, draw});
  }

  [[nodiscard]] double complexity(const nlohmann::json& p) const override {
    double total = 0;
    for (const auto& a : p.at("animals")) total += a.at("count").get<double>();
    return total;
  }
};

}  // namespace polytask::tasks
