#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "polytask/core/errors.hpp"

namespace polytask {

/// One curriculum level value: numeric parameters are integers, categorical ones strings.
using ParamValue = std::variant<std::int64_t, std::string>;

inline nlohmann::json to_json_value(const ParamValue& value) {
  return std::visit([](const auto& v) { return nlohmann::json(v); }, value);
}

struct CurriculumParam {
  std::string name;
  std::vector<ParamValue> levels;  // ascending difficulty
  std::size_t default_level = 0;
};

/// Ordered progression of generator parameter levels for one task.
class DifficultyCurriculum {
 public:
  DifficultyCurriculum() = default;
  explicit DifficultyCurriculum(std::vector<CurriculumParam> params) : params_(std::move(params)) {
    validate();
  }

  [[nodiscard]] const std::vector<CurriculumParam>& params() const { return params_; }

  [[nodiscard]] const CurriculumParam& param(const std::string& name) const {
    for (const auto& p : params_) {
      if (p.name == name) return p;
    }
    throw std::invalid_argument("unknown curriculum parameter: " + name);
  }

  void validate() const {
    for (std::size_t i = 0; i < params_.size(); ++i) {
      const auto& p = params_[i];
      if (p.levels.size() < 2) {
        throw std::invalid_argument("curriculum parameter '" + p.name + "' needs at least two levels");
      }
      if (p.default_level >= p.levels.size()) {
        throw std::invalid_argument("default level out of range for '" + p.name + "'");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (params_[j].name == p.name) throw std::invalid_argument("duplicate parameter '" + p.name + "'");
      }
    }
  }

 private:
  std::vector<CurriculumParam> params_;
};

/// Level index for a percentile: round-half-up of percentile/100 * (levels - 1).
inline std::size_t percentile_level(double percentile, std::size_t level_count) {
  if (!(percentile >= 0.0 && percentile <= 100.0)) {
    throw std::invalid_argument("percentile must lie in [0, 100]");
  }
  const double scaled = percentile / 100.0 * static_cast<double>(level_count - 1);
  return static_cast<std::size_t>(std::floor(scaled + 0.5));
}

/// Parameter values chosen for one dataset.
class ResolvedDifficulty {
 public:
  ResolvedDifficulty() = default;
  explicit ResolvedDifficulty(std::map<std::string, ParamValue> values) : values_(std::move(values)) {}

  [[nodiscard]] const std::map<std::string, ParamValue>& values() const { return values_; }

  [[nodiscard]] std::int64_t integer(const std::string& name) const {
    const auto& v = at(name);
    if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
    throw std::invalid_argument("parameter '" + name + "' is not numeric");
  }

  [[nodiscard]] const std::string& text(const std::string& name) const {
    const auto& v = at(name);
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    throw std::invalid_argument("parameter '" + name + "' is not categorical");
  }

  [[nodiscard]] nlohmann::json to_json() const {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [name, value] : values_) out[name] = to_json_value(value);
    return out;
  }

  static ResolvedDifficulty from_json(const nlohmann::json& j) {
    std::map<std::string, ParamValue> values;
    for (const auto& [name, value] : j.items()) {
      if (value.is_number_integer()) {
        values.emplace(name, value.get<std::int64_t>());
      } else if (value.is_string()) {
        values.emplace(name, value.get<std::string>());
      } else {
        throw ValidationError("difficulty value for '" + name + "' must be an integer or string");
      }
    }
    return ResolvedDifficulty(std::move(values));
  }

  friend bool operator==(const ResolvedDifficulty&, const ResolvedDifficulty&) = default;

 private:
  const ParamValue& at(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) throw std::invalid_argument("unresolved parameter: " + name);
    return it->second;
  }

  std::map<std::string, ParamValue> values_;
};

/// Selects levels by percentile, by each parameter's default, or by explicit level indices.
class Difficulty {
 public:
  struct Percentile {
    double value;
  };
  struct Defaults {};
  struct Levels {
    std::map<std::string, std::size_t> indices;  // unlisted params use their default
  };

  static Difficulty percentile(double value) { return Difficulty(Percentile{value}); }
  static Difficulty defaults() { return Difficulty(Defaults{}); }
  static Difficulty levels(std::map<std::string, std::size_t> indices) {
    return Difficulty(Levels{std::move(indices)});
  }

  [[nodiscard]] std::optional<double> as_percentile() const {
    if (const auto* p = std::get_if<Percentile>(&selector_)) return p->value;
    return std::nullopt;
  }

  [[nodiscard]] const std::variant<Percentile, Defaults, Levels>& selector() const { return selector_; }

 private:
  explicit Difficulty(std::variant<Percentile, Defaults, Levels> s) : selector_(std::move(s)) {}
  std::variant<Percentile, Defaults, Levels> selector_;
};

inline ResolvedDifficulty resolve_difficulty(const DifficultyCurriculum& curriculum, double percentile) {
  std::map<std::string, ParamValue> values;
  for (const auto& p : curriculum.params()) {
    values.emplace(p.name, p.levels[percentile_level(percentile, p.levels.size())]);
  }
  return ResolvedDifficulty(std::move(values));
}

inline ResolvedDifficulty resolve_difficulty(const DifficultyCurriculum& curriculum, const Difficulty& difficulty) {
  if (auto p = difficulty.as_percentile()) return resolve_difficulty(curriculum, *p);
  const auto* levels = std::get_if<Difficulty::Levels>(&difficulty.selector());
  if (levels) {
    for (const auto& [name, index] : levels->indices) {
      const auto& param = curriculum.param(name);
      if (index >= param.levels.size()) {
        throw std::invalid_argument("level " + std::to_string(index) + " out of range for '" + name + "'");
      }
    }
  }
  std::map<std::string, ParamValue> values;
  for (const auto& p : curriculum.params()) {
    std::size_t index = p.default_level;
    if (levels) {
      if (auto it = levels->indices.find(p.name); it != levels->indices.end()) index = it->second;
    }
    values.emplace(p.name, p.levels[index]);
  }
  return ResolvedDifficulty(std::move(values));
}

}  // namespace polytask
