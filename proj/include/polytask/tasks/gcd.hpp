#pragma once

#include <algorithm>
#include <numeric>

#include "polytask/core/task.hpp"
#include "polytask/tasks/common.hpp"

namespace polytask::tasks {

/// Greatest common divisor of m numbers in [1, hi].
class Gcd final : public TaskBase {
 public:
  Gcd()
      : TaskBase({"gcd", Category::arithmetic, LocalizationFlag::fully_translated,
                  DifficultyCurriculum({int_param("m", {2, 3, 4}, 0), int_param("hi", {100, 1000, 10000}, 1)}),
                  AnswerKind::integer, "largest operand"},
                 {{{"question", {"numbers"}}}, {}}) {}

  static std::int64_t gcd_of(const std::vector<std::int64_t>& numbers) {
    std::int64_t g = 0;
    for (auto n : numbers) g = std::gcd(g, n);
    return g;
  }

  // Half of the instances share a planted factor so answers other than 1 are common.
  Generated generate(Rng& rng, const ResolvedDifficulty& d) const override {
    const auto m = d.integer("m");
    const auto hi = d.integer("hi");
    std::int64_t factor = 1;
    if (rng.chance(1, 2)) factor = rng.uniform(2, std::max<std::int64_t>(2, hi / 20));
    std::vector<std::int64_t> numbers;
    for (std::int64_t i = 0; i < m; ++i) numbers.push_back(factor * rng.uniform(1, hi / factor));
    return {{{"numbers", numbers}}};
  }

  [[nodiscard]] nlohmann::json solve(const nlohmann::json& p) const override { return gcd_of(ints(p.at("numbers"))); }

  [[nodiscard]] Bindings bindings(const nlohmann::json& p) const override {
    return {{"numbers", ints(p.at("numbers"))}};
  }

  [[nodiscard]] double complexity(const nlohmann::json& p) const override {
    const auto n = ints(p.at("numbers"));
    return static_cast<double>(*std::max_element(n.begin(), n.end()));
  }
};

}  // namespace polytask::tasks
