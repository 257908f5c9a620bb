#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "polytask/core/errors.hpp"
#include "polytask/locale/unicode.hpp"

namespace polytask {

enum class AnswerKind { integer, decimal, text, localized_boolean, list_of_lists, grid };

inline std::string_view to_string(AnswerKind k) {
  switch (k) {
    case AnswerKind::integer:
      return "integer";
    case AnswerKind::decimal:
      return "decimal";
    case AnswerKind::text:
      return "text";
    case AnswerKind::localized_boolean:
      return "localized_boolean";
    case AnswerKind::list_of_lists:
      return "list_of_lists";
    case AnswerKind::grid:
      return "grid";
  }
  return "text";
}

inline AnswerKind parse_answer_kind(std::string_view s) {
  for (auto k : {AnswerKind::integer, AnswerKind::decimal, AnswerKind::text, AnswerKind::localized_boolean,
                 AnswerKind::list_of_lists, AnswerKind::grid}) {
    if (to_string(k) == s) return k;
  }
  throw ValidationError("unknown answer kind: " + std::string(s));
}

using ListOfLists = std::vector<std::vector<std::string>>;
using Grid = std::vector<std::vector<int>>;

/// A normalized candidate answer. Localized booleans hold their canonical token.
using AnswerValue = std::variant<std::int64_t, double, std::string, ListOfLists, Grid>;

inline nlohmann::json to_json(const AnswerValue& v) {
  return std::visit([](const auto& x) { return nlohmann::json(x); }, v);
}

/// Typed view of a canonical answer stored as JSON.
inline AnswerValue answer_from_json(AnswerKind kind, const nlohmann::json& j) {
  try {
    switch (kind) {
      case AnswerKind::integer:
        return j.get<std::int64_t>();
      case AnswerKind::decimal:
        return j.get<double>();
      case AnswerKind::text:
      case AnswerKind::localized_boolean:
        return j.get<std::string>();
      case AnswerKind::list_of_lists:
        return j.get<ListOfLists>();
      case AnswerKind::grid:
        return j.get<Grid>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("answer does not match kind ") + std::string(to_string(kind)) + ": " +
                          e.what());
  }
  throw ValidationError("unknown answer kind");
}

inline ListOfLists canonical_groups(ListOfLists groups) {
  for (auto& g : groups) {
    for (auto& w : g) w = unicode::token_key(w);
    std::sort(g.begin(), g.end());
  }
  std::sort(groups.begin(), groups.end());
  return groups;
}

/// Kind-aware equality between a canonical answer and a normalized candidate.
inline bool answers_match(AnswerKind kind, const nlohmann::json& canonical, const AnswerValue& candidate) {
  switch (kind) {
    case AnswerKind::integer: {
      if (const auto* i = std::get_if<std::int64_t>(&candidate)) return *i == canonical.get<std::int64_t>();
      return false;
    }
    case AnswerKind::decimal: {
      double c = 0;
      if (const auto* d = std::get_if<double>(&candidate)) c = *d;
      else if (const auto* i = std::get_if<std::int64_t>(&candidate)) c = static_cast<double>(*i);
      else return false;
      const double expected = canonical.get<double>();
      return std::fabs(c - expected) <= 1e-9 * std::max(1.0, std::fabs(expected));
    }
    case AnswerKind::text: {
      if (const auto* s = std::get_if<std::string>(&candidate)) {
        return unicode::token_key(*s) == unicode::token_key(canonical.get<std::string>());
      }
      return false;
    }
    case AnswerKind::localized_boolean: {
      if (const auto* s = std::get_if<std::string>(&candidate)) return *s == canonical.get<std::string>();
      return false;
    }
    case AnswerKind::list_of_lists: {
      if (const auto* l = std::get_if<ListOfLists>(&candidate)) {
        return canonical_groups(*l) == canonical_groups(canonical.get<ListOfLists>());
      }
      return false;
    }
    case AnswerKind::grid: {
      if (const auto* g = std::get_if<Grid>(&candidate)) return *g == canonical.get<Grid>();
      return false;
    }
  }
  return false;
}

inline std::string format_decimal(double value, std::string_view decimal_point) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string s(buf, end);
  if (auto dot = s.find('.'); dot != std::string::npos) s.replace(dot, 1, decimal_point);
  return s;
}

inline std::string format_list_of_lists(const ListOfLists& groups) {
  std::string out = "[";
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i) out += ", ";
    out += "[";
    for (std::size_t k = 0; k < groups[i].size(); ++k) {
      if (k) out += ", ";
      out += nlohmann::json(groups[i][k]).dump();
    }
    out += "]";
  }
  return out + "]";
}

inline std::string format_grid(const Grid& grid) {
  std::string out;
  for (std::size_t r = 0; r < grid.size(); ++r) {
    if (r) out += "\n";
    for (std::size_t c = 0; c < grid[r].size(); ++c) {
      if (c) out += " ";
      out += std::to_string(grid[r][c]);
    }
  }
  return out;
}

}  // namespace polytask
