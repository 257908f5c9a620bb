#pragma once

#include "polytask/core/task.hpp"
#include "polytask/tasks/common.hpp"

namespace polytask::tasks {

/// k operands in [0, M] joined by + and -, evaluated left to right.
class ChainSum final : public TaskBase {
 public:
  ChainSum()
      : TaskBase({"chain_sum", Category::arithmetic, LocalizationFlag::fully_translated,
                  DifficultyCurriculum({int_param("k", {2, 3, 4, 5, 6}, 1), int_param("M", {10, 100, 1000}, 1)}),
                  AnswerKind::integer, "sum of operands"},
                 {{{"question", {"expression"}}}, {}}) {}

  static std::int64_t evaluate(const std::vector<std::int64_t>& operands, const std::vector<std::string>& ops) {
    std::int64_t acc = operands.at(0);
    for (std::size_t i = 1; i < operands.size(); ++i) acc += ops.at(i - 1) == "-" ? -operands[i] : operands[i];
    return acc;
  }

  static std::string expression(const std::vector<std::int64_t>& operands, const std::vector<std::string>& ops) {
    std::string out = std::to_string(operands.at(0));
    for (std::size_t i = 1; i < operands.size(); ++i) out += " " + ops.at(i - 1) + " " + std::to_string(operands[i]);
    return out;
  }

  Generated generate(Rng& rng, const ResolvedDifficulty& d) const override {
    const auto k = d.integer("k");
    const auto m = d.integer("M");
    std::vector<std::int64_t> operands;
    std::vector<std::string> ops;
    for (std::int64_t i = 0; i < k; ++i) {
      operands.push_back(rng.uniform(0, m));
      if (i) ops.emplace_back(rng.chance(1, 2) ? "+" : "-");
    }
    return {{{"operands", operands}, {"operators", ops}}};
  }

  [[nodiscard]] nlohmann::json solve(const nlohmann::json& p) const override {
    return evaluate(ints(p.at("operands")), strings(p.at("operators")));
  }

  [[nodiscard]] Bindings bindings(const nlohmann::json& p) const override {
    return {{"expression", expression(ints(p.at("operands")), strings(p.at("operators")))}};
  }

  [[nodiscard]] double complexity(const nlohmann::json& p) const override {
    double s = 0;
    for (auto v : ints(p.at("operands"))) s += static_cast<double>(v);
    return s;
  }
};

}  // namespace polytask::tasks
