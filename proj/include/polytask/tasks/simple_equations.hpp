#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>

#include "polytask/core/task.hpp"
#include "polytask/tasks/common.hpp"

namespace polytask::tasks {

/// Solve a*x + b = c for x. x is drawn first so the solution is an exact integer.
class SimpleEquations final : public TaskBase {
 public:
  SimpleEquations()
      : TaskBase({"simple_equations", Category::algebra, LocalizationFlag::fully_translated,
                  DifficultyCurriculum({int_param("M", {10, 100, 1000}, 1)}), AnswerKind::integer,
                  "largest absolute coefficient or solution"},
                 {{{"question", {"variable", "equation"}}}, {}}) {}

  static std::string equation(std::int64_t a, std::int64_t b, std::int64_t c, const std::string& var) {
    std::string lhs;
    if (a == 1) lhs = var;
    else if (a == -1) lhs = "-" + var;
    else lhs = std::to_string(a) + "*" + var;
    if (b > 0) lhs += " + " + std::to_string(b);
    else if (b < 0) lhs += " - " + std::to_string(-b);
    return lhs + " = " + std::to_string(c);
  }

  Generated generate(Rng& rng, const ResolvedDifficulty& d) const override {
    static constexpr std::array<const char*, 8> kVariables = {"x", "y", "z", "n", "m", "k", "t", "u"};
    const auto m = d.integer("M");
    const auto x = rng.uniform(-m, m);
    auto a = rng.uniform(1, m);
    if (rng.chance(1, 2)) a = -a;
    const auto b = rng.uniform(-m, m);
    const std::string var = kVariables[static_cast<std::size_t>(rng.below(kVariables.size()))];
    return {{{"a", a}, {"b", b}, {"c", a * x + b}, {"variable", var}}};
  }

  [[nodiscard]] nlohmann::json solve(const nlohmann::json& p) const override {
    const auto a = p.at("a").get<std::int64_t>();
    return (p.at("c").get<std::int64_t>() - p.at("b").get<std::int64_t>()) / a;
  }

  [[nodiscard]] Bindings bindings(const nlohmann::json& p) const override {
    const auto var = p.at("variable").get<std::string>();
    return {{"variable", var},
            {"equation", equation(p.at("a").get<std::int64_t>(), p.at("b").get<std::int64_t>(),
                                  p.at("c").get<std::int64_t>(), var)}};
  }

  [[nodiscard]] double complexity(const nlohmann::json& p) const override {
    const auto x = solve(p).get<std::int64_t>();
    return static_cast<double>(std::max({std::llabs(p.at("a").get<std::int64_t>()),
                                         std::llabs(p.at("b").get<std::int64_t>()), std::llabs(x)}));
  }
};

}  // namespace polytask::tasks
