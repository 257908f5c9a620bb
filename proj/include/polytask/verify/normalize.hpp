#pragma once

// Typed normalization of an extracted answer span.
//
// Numbers: the last number in the span wins. Digits may be grouped by ",", ".",
// "'", "’", space, NBSP or U+202F in groups of three, except for the character
// the pack uses as decimal point. "-" and "−" are signs; full-width digits count.

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>
#include <unicode/uchar.h>

#include "polytask/core/answer.hpp"
#include "polytask/locale/pack.hpp"
#include "polytask/locale/render.hpp"
#include "polytask/locale/unicode.hpp"

namespace polytask {

struct Normalized {
  std::optional<AnswerValue> value;
  std::string error;  // set when value is empty
};

namespace detail {

inline char32_t fold_digit(char32_t c) {
  if (c < 0x80) return c;
  // any decimal digit (fullwidth, Bengali, Thai, Arabic-Indic, ...) to ASCII
  if (u_charType(static_cast<UChar32>(c)) == U_DECIMAL_DIGIT_NUMBER) {
    return U'0' + static_cast<char32_t>(u_charDigitValue(static_cast<UChar32>(c)));
  }
  if (c == 0xFF0D || c == 0x2212) return '-';
  return c;
}

inline bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

inline bool is_group_separator(char32_t c, char32_t decimal) {
  if (c == decimal) return false;
  return c == ',' || c == '.' || c == '\'' || c == 0x2019 || c == ' ' || c == 0xA0 || c == 0x202F;
}

/// Strips \boxed{...}, surrounding markdown emphasis, quotes and a trailing full stop.
inline std::string clean_span(std::string_view text) {
  std::string s(unicode::trim(text));
  if (auto at = s.rfind("\\boxed{"); at != std::string::npos) {
    const auto start = at + 7;
    int depth = 1;
    std::size_t i = start;
    for (; i < s.size() && depth > 0; ++i) {
      if (s[i] == '{') ++depth;
      else if (s[i] == '}') --depth;
    }
    if (depth == 0) s = s.substr(start, i - 1 - start);
  }
  const auto strip = [&](std::string_view chars) {
    bool changed = true;
    while (changed && !s.empty()) {
      changed = false;
      s = std::string(unicode::trim(s));
      for (const auto& piece : {std::string_view("**"), std::string_view("`"), std::string_view("\""),
                                std::string_view("*"), std::string_view("\xE2\x80\x9C"), std::string_view("\xE2\x80\x9D"),
                                std::string_view("\xE3\x80\x8C"), std::string_view("\xE3\x80\x8D")}) {
        if (chars.find(piece) == std::string_view::npos) continue;
        if (s.size() >= piece.size() && s.compare(0, piece.size(), piece) == 0) {
          s.erase(0, piece.size());
          changed = true;
        }
        if (s.size() >= piece.size() && s.compare(s.size() - piece.size(), piece.size(), piece) == 0) {
          s.erase(s.size() - piece.size());
          changed = true;
        }
      }
    }
  };
  strip("**`\"*\xE2\x80\x9C\xE2\x80\x9D\xE3\x80\x8C\xE3\x80\x8D");
  for (const auto& stop : {std::string_view("."), std::string_view("\xE3\x80\x82"), std::string_view("!"),
                           std::string_view("\xE0\xA5\xA4")}) {
    if (s.size() > stop.size() && s.compare(s.size() - stop.size(), stop.size(), stop) == 0) {
      s.erase(s.size() - stop.size());
      break;
    }
  }
  strip("**`\"*\xE2\x80\x9C\xE2\x80\x9D\xE3\x80\x8C\xE3\x80\x8D");
  return s;
}

struct ScannedNumber {
  std::string ascii;  // sign, digits and optional ".fraction"
  bool has_fraction = false;
};

inline std::optional<ScannedNumber> last_number(std::string_view text, std::string_view decimal_point) {
  std::vector<char32_t> cps;
  for (char32_t c : unicode::decode(text)) cps.push_back(fold_digit(c));
  const auto dp = unicode::decode(decimal_point);
  const char32_t decimal = dp.size() == 1 ? dp[0] : U'.';

  std::optional<ScannedNumber> last;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (!is_digit(cps[i])) {
      ++i;
      continue;
    }
    ScannedNumber n;
    if (i > 0 && cps[i - 1] == '-' && (i < 2 || !is_digit(cps[i - 2]))) n.ascii.push_back('-');
    while (true) {
      while (i < cps.size() && is_digit(cps[i])) n.ascii.push_back(static_cast<char>(cps[i++]));
      if (i + 3 < cps.size() && is_group_separator(cps[i], decimal) && is_digit(cps[i + 1]) &&
          is_digit(cps[i + 2]) && is_digit(cps[i + 3]) && (i + 4 >= cps.size() || !is_digit(cps[i + 4]))) {
        ++i;
        continue;
      }
      break;
    }
    if (i + 1 < cps.size() && cps[i] == decimal && is_digit(cps[i + 1])) {
      ++i;
      n.ascii.push_back('.');
      n.has_fraction = true;
      while (i < cps.size() && is_digit(cps[i])) n.ascii.push_back(static_cast<char>(cps[i++]));
    }
    last = std::move(n);
  }
  return last;
}

inline bool is_boundary(std::string_view folded, std::size_t at, bool before) {
  if (before) {
    if (at == 0) return true;
    const auto cps = unicode::decode(folded.substr(0, at));
    return !unicode::is_word_char(cps.back());
  }
  if (at >= folded.size()) return true;
  const auto cps = unicode::decode_spans(folded.substr(at));
  return !unicode::is_word_char(cps.front().value);
}

}  // namespace detail

/// Canonical token found in `text`: whole-span match first, then the occurrence
/// ending last (longest on ties), with word boundaries for space-delimited scripts.
inline std::optional<std::string> find_token(const LanguagePack& pack, std::string_view text) {
  if (auto whole = delocalize_token(pack, text)) return whole;
  const auto folded = unicode::fold(text);
  std::optional<std::string> best;
  std::size_t best_end = 0;
  std::size_t best_len = 0;
  for (const auto& [canonical, token] : pack.answer_tokens) {
    const auto needle = unicode::token_key(token);
    if (needle.empty()) continue;
    for (auto at = folded.find(needle); at != std::string::npos; at = folded.find(needle, at + 1)) {
      const auto end = at + needle.size();
      if (!detail::is_boundary(folded, at, true) || !detail::is_boundary(folded, end, false)) continue;
      if (!best || end > best_end || (end == best_end && needle.size() > best_len)) {
        best = canonical;
        best_end = end;
        best_len = needle.size();
      }
    }
  }
  return best;
}

inline std::optional<ListOfLists> parse_list_of_lists(std::string_view text) {
  const auto open = text.find('[');
  const auto close = text.rfind(']');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) return std::nullopt;
  const auto body = text.substr(open, close - open + 1);
  try {
    const auto j = nlohmann::json::parse(body);
    if (j.is_array()) {
      ListOfLists out;
      bool ok = true;
      for (const auto& g : j) {
        if (!g.is_array()) {
          ok = false;
          break;
        }
        std::vector<std::string> group;
        for (const auto& w : g) {
          if (!w.is_string()) {
            ok = false;
            break;
          }
          group.push_back(w.get<std::string>());
        }
        out.push_back(std::move(group));
      }
      if (ok) return out;
    }
  } catch (const nlohmann::json::exception&) {
  }
  // Permissive: inner [...] groups; elements split on commas, quotes stripped.
  ListOfLists out;
  std::size_t depth = 0;
  std::string item;
  std::vector<std::string> group;
  const auto push_item = [&] {
    auto t = std::string(unicode::trim(item));
    while (!t.empty() && (t.front() == '"' || t.front() == '\'')) t.erase(0, 1);
    while (!t.empty() && (t.back() == '"' || t.back() == '\'')) t.pop_back();
    t = std::string(unicode::trim(t));
    if (!t.empty()) group.push_back(t);
    item.clear();
  };
  for (char c : body) {
    if (c == '[') {
      ++depth;
      if (depth == 2) {
        group.clear();
        item.clear();
      }
    } else if (c == ']') {
      if (depth == 2) {
        push_item();
        out.push_back(group);
      }
      if (depth > 0) --depth;
    } else if (depth == 2) {
      if (c == ',') push_item();
      else item.push_back(c);
    }
  }
  if (out.empty()) return std::nullopt;
  return out;
}

inline std::optional<Grid> parse_grid(std::string_view text) {
  if (text.find('[') != std::string_view::npos) {
    const auto open = text.find('[');
    const auto close = text.rfind(']');
    try {
      const auto j = nlohmann::json::parse(text.substr(open, close - open + 1));
      return j.get<Grid>();
    } catch (const nlohmann::json::exception&) {
    }
  }
  // Rows: lines made only of 0/1 cells and separators; the last contiguous block wins.
  Grid block;
  Grid last;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = text.substr(start, nl - start);
    std::vector<int> row;
    bool is_row = true;
    for (char c : line) {
      if (c == '0' || c == '1') row.push_back(c - '0');
      else if (!(c == ' ' || c == '\t' || c == ',' || c == '|' || c == '\r' || c == '`')) is_row = false;
    }
    if (is_row && !row.empty()) {
      block.push_back(std::move(row));
    } else if (!block.empty()) {
      last = std::move(block);
      block.clear();
    }
    start = nl + 1;
  }
  if (!block.empty()) last = std::move(block);
  if (last.empty()) return std::nullopt;
  return last;
}

/// Typed value of an extracted span for `kind`, using `pack` for tokens and the decimal point.
inline Normalized normalize(AnswerKind kind, std::string_view text, const LanguagePack& pack) {
  const auto cleaned = detail::clean_span(text);
  switch (kind) {
    case AnswerKind::integer:
    case AnswerKind::decimal: {
      const auto n = detail::last_number(cleaned, pack.conventions.decimal_point);
      if (!n) return {std::nullopt, "no number in '" + cleaned + "'"};
      if (kind == AnswerKind::integer && !n->has_fraction) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(n->ascii.data(), n->ascii.data() + n->ascii.size(), v);
        if (ec != std::errc() || ptr != n->ascii.data() + n->ascii.size()) {
          return {std::nullopt, "integer out of range: " + n->ascii};
        }
        return {v, {}};
      }
      double d = 0;
      auto [ptr, ec] = std::from_chars(n->ascii.data(), n->ascii.data() + n->ascii.size(), d);
      if (ec != std::errc()) return {std::nullopt, "bad number: " + n->ascii};
      if (kind == AnswerKind::integer && d == std::floor(d) && std::fabs(d) < 9.0e18) {
        return {static_cast<std::int64_t>(d), {}};
      }
      return {d, {}};
    }
    case AnswerKind::text:
      if (cleaned.empty()) return {std::nullopt, "empty answer"};
      return {cleaned, {}};
    case AnswerKind::localized_boolean: {
      if (auto token = find_token(pack, cleaned)) return {*token, {}};
      return {std::nullopt, "no answer token in '" + cleaned + "'"};
    }
    case AnswerKind::list_of_lists: {
      if (auto groups = parse_list_of_lists(cleaned)) return {*groups, {}};
      return {std::nullopt, "no list of lists in '" + cleaned + "'"};
    }
    case AnswerKind::grid: {
      if (auto grid = parse_grid(cleaned)) return {*grid, {}};
      return {std::nullopt, "no grid in '" + cleaned + "'"};
    }
  }
  return {std::nullopt, "unknown answer kind"};
}

}  // namespace polytask
