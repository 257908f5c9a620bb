#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "polytask/core/answer.hpp"
#include "polytask/core/difficulty.hpp"
#include "polytask/core/errors.hpp"
#include "polytask/core/rng.hpp"
#include "polytask/locale/lint.hpp"
#include "polytask/locale/pack.hpp"
#include "polytask/locale/render.hpp"

namespace polytask {

enum class Category { algebra, arithmetic, algorithmic, cognition, games, logic };

enum class LocalizationFlag { fully_translated, translated_with_english_data, english_only };

inline std::string_view to_string(Category c) {
  switch (c) {
    case Category::algebra:
      return "algebra";
    case Category::arithmetic:
      return "arithmetic";
    case Category::algorithmic:
      return "algorithmic";
    case Category::cognition:
      return "cognition";
    case Category::games:
      return "games";
    case Category::logic:
      return "logic";
  }
  return "arithmetic";
}

inline std::string_view to_string(LocalizationFlag f) {
  switch (f) {
    case LocalizationFlag::fully_translated:
      return "fully_translated";
    case LocalizationFlag::translated_with_english_data:
      return "translated_with_english_data";
    case LocalizationFlag::english_only:
      return "english_only";
  }
  return "fully_translated";
}

struct TaskSpec {
  std::string task_id;
  Category category = Category::arithmetic;
  LocalizationFlag localization = LocalizationFlag::fully_translated;
  DifficultyCurriculum curriculum;
  AnswerKind answer_kind = AnswerKind::integer;
  std::string complexity_proxy;  // what complexity() measures
};

/// Template key appended to questions of English-data tasks.
inline constexpr std::string_view kDataNoteKey = "data_note";

struct Generated {
  nlohmann::json payload;
  nlohmann::json metadata = nlohmann::json::object();
};

/// A procedural task: generator, reference solution, renderer and checker.
/// Implementations are stateless and safe to call concurrently.
class Task {
 public:
  virtual ~Task() = default;

  [[nodiscard]] virtual const TaskSpec& spec() const = 0;
  [[nodiscard]] virtual const PackContract& contract() const = 0;

  /// Builds a payload from `rng` only.
  virtual Generated generate(Rng& rng, const ResolvedDifficulty& difficulty) const = 0;

  /// Canonical answer for a payload.
  [[nodiscard]] virtual nlohmann::json solve(const nlohmann::json& payload) const = 0;

  [[nodiscard]] virtual Bindings bindings(const nlohmann::json& payload) const = 0;

  /// Question text. The default renders the "question" key.
  [[nodiscard]] virtual std::string render(const LanguagePack& pack, const nlohmann::json& payload,
                                           std::uint64_t variant_draw) const {
    return render_question(pack, "question", {bindings(payload), variant_draw});
  }

  [[nodiscard]] virtual bool check(const nlohmann::json& payload, const AnswerValue& candidate) const {
    return answers_match(spec().answer_kind, solve(payload), candidate);
  }

  /// The answer as a model would be expected to write it in `pack`'s language.
  [[nodiscard]] virtual std::string format_answer(const nlohmann::json& answer, const LanguagePack& pack) const {
    switch (spec().answer_kind) {
      case AnswerKind::integer:
        return std::to_string(answer.get<std::int64_t>());
      case AnswerKind::decimal:
        return format_decimal(answer.get<double>(), pack.conventions.decimal_point);
      case AnswerKind::text:
        return answer.get<std::string>();
      case AnswerKind::localized_boolean:
        return localize_token(pack, answer.get<std::string>());
      case AnswerKind::list_of_lists:
        return format_list_of_lists(answer.get<ListOfLists>());
      case AnswerKind::grid:
        return format_grid(answer.get<Grid>());
    }
    return answer.dump();
  }

  /// The task's documented complexity proxy for one payload.
  [[nodiscard]] virtual double complexity(const nlohmann::json& payload) const = 0;
};

/// Holds the spec and contract so concrete tasks only implement behaviour.
class TaskBase : public Task {
 public:
  TaskBase(TaskSpec spec, PackContract contract) : spec_(std::move(spec)), contract_(std::move(contract)) {
    contract_.english_data = spec_.localization == LocalizationFlag::translated_with_english_data;
    if (contract_.english_data) contract_.schema.emplace(std::string(kDataNoteKey), std::set<std::string>{});
  }

  [[nodiscard]] const TaskSpec& spec() const override { return spec_; }
  [[nodiscard]] const PackContract& contract() const override { return contract_; }

 private:
  TaskSpec spec_;
  PackContract contract_;
};

}  // namespace polytask
