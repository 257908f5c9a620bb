#pragma once

#include <bit>

#include "polytask/core/task.hpp"
#include "polytask/tasks/common.hpp"

namespace polytask::tasks {

/// Number of set bits of N in [1, 2^b).
class CountBits final : public TaskBase {
 public:
  CountBits()
      : TaskBase({"count_bits", Category::arithmetic, LocalizationFlag::fully_translated,
                  DifficultyCurriculum({int_param("b", {8, 16, 32, 48}, 1)}), AnswerKind::integer, "bit width of N"},
                 {{{"question", {"number"}}}, {}}) {}

  Generated generate(Rng& rng, const ResolvedDifficulty& d) const override {
    const auto b = d.integer("b");
    const std::int64_t n = rng.uniform(1, (std::int64_t{1} << b) - 1);
    return {{{"number", n}}};
  }

  [[nodiscard]] nlohmann::json solve(const nlohmann::json& p) const override {
    return std::popcount(p.at("number").get<std::uint64_t>());
  }

  [[nodiscard]] Bindings bindings(const nlohmann::json& p) const override {
    return {{"number", p.at("number").get<std::int64_t>()}};
  }

  [[nodiscard]] double complexity(const nlohmann::json& p) const override {
    return static_cast<double>(std::bit_width(p.at("number").get<std::uint64_t>()));
  }
};

}  // namespace polytask::tasks
