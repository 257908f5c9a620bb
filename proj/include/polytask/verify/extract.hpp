#pragma once

// Final-answer extraction from a raw transcript. Strategies, in order:
//   1. tagged     content of the last <answer>...</answer> pair
//   2. marker     text after the last final-answer marker ("Final answer:", "答案：", ...)
//   3. last_line  the last non-empty line
// A tagged answer always wins, even when it is empty.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polytask/locale/unicode.hpp"

namespace polytask {

enum class ExtractionStrategy { tagged, marker, last_line };

inline std::string_view to_string(ExtractionStrategy s) {
  switch (s) {
    case ExtractionStrategy::tagged:
      return "tagged";
    case ExtractionStrategy::marker:
      return "marker";
    case ExtractionStrategy::last_line:
      return "last_line";
  }
  return "last_line";
}

struct ExtractedAnswer {
  std::string text;  // trimmed
  ExtractionStrategy strategy = ExtractionStrategy::last_line;
  std::size_t begin = 0;  // byte span of `text` in the transcript
  std::size_t end = 0;
};

namespace detail {

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

inline std::optional<ExtractedAnswer> trimmed_span(std::string_view transcript, std::size_t begin, std::size_t end,
                                                   ExtractionStrategy strategy) {
  const auto inner = transcript.substr(begin, end - begin);
  const auto [b, e] = unicode::trim_bounds(inner);
  if (b == e) return std::nullopt;
  return ExtractedAnswer{std::string(inner.substr(b, e - b)), strategy, begin + b, begin + e};
}

/// Marker spellings to search: as given, plus the other colon width.
inline std::vector<std::string> marker_variants(const std::vector<std::string>& markers) {
  std::vector<std::string> out;
  for (const auto& m : markers) {
    if (m.empty()) continue;
    out.push_back(m);
    const std::string_view full_colon = "\xEF\xBC\x9A";  // U+FF1A
    if (m.back() == ':') out.push_back(m.substr(0, m.size() - 1) + std::string(full_colon));
    else if (m.size() >= 3 && std::string_view(m).substr(m.size() - 3) == full_colon) out.push_back(m.substr(0, m.size() - 3) + ":");
  }
  return out;
}

}  // namespace detail

/// Tries the three strategies in order. `markers` are matched ASCII-case-insensitively.
/// Returns nullopt when nothing non-empty is found.
inline std::optional<ExtractedAnswer> extract_answer(std::string_view transcript, const std::vector<std::string>& markers) {
  const auto lower = detail::ascii_lower(transcript);

  const std::string_view open = "<answer>";
  const std::string_view close = "</answer>";
  if (auto close_at = lower.rfind(close); close_at != std::string::npos) {
    if (auto open_at = lower.rfind(open, close_at); open_at != std::string::npos) {
      return detail::trimmed_span(transcript, open_at + open.size(), close_at, ExtractionStrategy::tagged);
    }
  }

  std::size_t best_end = std::string::npos;
  for (const auto& marker : detail::marker_variants(markers)) {
    const auto needle = detail::ascii_lower(marker);
    if (auto at = lower.rfind(needle); at != std::string::npos) {
      const auto end = at + needle.size();
      if (best_end == std::string::npos || end > best_end) best_end = end;
    }
  }
  if (best_end != std::string::npos) {
    if (auto found = detail::trimmed_span(transcript, best_end, transcript.size(), ExtractionStrategy::marker)) {
      return found;
    }
  }

  std::size_t end = transcript.size();
  while (end > 0) {
    auto start = transcript.rfind('\n', end - 1);
    const std::size_t begin = start == std::string_view::npos ? 0 : start + 1;
    if (auto found = detail::trimmed_span(transcript, begin, end, ExtractionStrategy::last_line)) return found;
    if (begin == 0) break;
    end = begin - 1;
  }
  return std::nullopt;
}

}  // namespace polytask
