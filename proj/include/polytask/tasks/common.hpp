#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "polytask/core/difficulty.hpp"

namespace polytask::tasks {

inline CurriculumParam int_param(std::string name, std::initializer_list<std::int64_t> levels,
                                 std::size_t default_level) {
  return {std::move(name), std::vector<ParamValue>(levels.begin(), levels.end()), default_level};
}

inline CurriculumParam text_param(std::string name, std::initializer_list<const char*> levels,
                                  std::size_t default_level) {
  std::vector<ParamValue> values;
  for (const char* v : levels) values.emplace_back(std::string(v));
  return {std::move(name), std::move(values), default_level};
}

inline std::vector<std::int64_t> ints(const nlohmann::json& j) { return j.get<std::vector<std::int64_t>>(); }

inline std::vector<std::string> strings(const nlohmann::json& j) { return j.get<std::vector<std::string>>(); }

inline std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

inline std::string lower_ascii(std::string s) {
  for (auto& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

}  // namespace polytask::tasks
