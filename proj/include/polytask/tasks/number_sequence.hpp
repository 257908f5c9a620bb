#pragma once

#include "polytask/core/task.hpp"
#include "polytask/tasks/common.hpp"

namespace polytask::tasks {

/// Next term of an arithmetic (a + i*d) or geometric (a * r^i) progression.
class NumberSequence final : public TaskBase {
 public:
  NumberSequence()
      : TaskBase({"number_sequence", Category::cognition, LocalizationFlag::fully_translated,
                  DifficultyCurriculum({int_param("n", {5, 7, 9}, 1), text_param("family", {"arithmetic", "mixed"}, 0)}),
                  AnswerKind::integer, "number of shown terms"},
                 {{{"instruction", {}}, {"sequence", {"terms"}}}, {}}) {}

  static std::int64_t term(const nlohmann::json& p, std::int64_t i) {
    const auto a = p.at("a").get<std::int64_t>();
    if (p.at("family") == "geometric") {
      std::int64_t v = a;
      for (std::int64_t k = 0; k < i; ++k) v *= p.at("r").get<std::int64_t>();
      return v;
    }
    return a + i * p.at("d").get<std::int64_t>();
  }

  static std::vector<std::int64_t> shown_terms(const nlohmann::json& p) {
    std::vector<std::int64_t> out;
    for (std::int64_t i = 0; i < p.at("n").get<std::int64_t>(); ++i) out.push_back(term(p, i));
    return out;
  }

  Generated generate(Rng& rng, const ResolvedDifficulty& d) const override {
    const auto n = d.integer("n");
    const bool geometric = d.text("family") == "mixed" && rng.chance(1, 2);
    if (geometric) {
      return {{{"family", "geometric"}, {"n", n}, {"a", rng.uniform(1, 9)}, {"r", rng.uniform(2, 3)}}};
    }
    return {{{"family", "arithmetic"}, {"n", n}, {"a", rng.uniform(0, 50)}, {"d", rng.uniform(-10, 10)}}};
  }

  [[nodiscard]] nlohmann::json solve(const nlohmann::json& p) const override {
    return term(p, p.at("n").get<std::int64_t>());
  }

  [[nodiscard]] Bindings bindings(const nlohmann::json& p) const override { return {{"terms", shown_terms(p)}}; }

  [[nodiscard]] std::string render(const LanguagePack& pack, const nlohmann::json& p,
                                   std::uint64_t draw) const override {
    return render_question(pack, "instruction", {{}, draw}) + "\n" +
           render_question(pack, "sequence", {bindings(p), draw});
  }

  [[nodiscard]] double complexity(const nlohmann::json& p) const override { return p.at("n").get<double>(); }
};

}  // namespace polytask::tasks
