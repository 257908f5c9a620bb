#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "polytask/core/errors.hpp"

namespace polytask {

/// The fourteen supported query languages, in report column order.
enum class Language : std::uint8_t { en, zh, de, es, fr, it, pt, ru, ja, ko, th, bn, te, sw };

inline constexpr std::array<Language, 14> kAllLanguages = {
    Language::en, Language::zh, Language::de, Language::es, Language::fr, Language::it, Language::pt,
    Language::ru, Language::ja, Language::ko, Language::th, Language::bn, Language::te, Language::sw};

inline constexpr std::string_view to_string(Language lang) {
  constexpr std::array<std::string_view, 14> codes = {"en", "zh", "de", "es", "fr", "it", "pt",
                                                      "ru", "ja", "ko", "th", "bn", "te", "sw"};
  return codes[static_cast<std::size_t>(lang)];
}

inline std::optional<Language> try_parse_language(std::string_view code) {
  for (auto lang : kAllLanguages) {
    if (to_string(lang) == code) return lang;
  }
  return std::nullopt;
}

inline Language parse_language(std::string_view code) {
  if (auto lang = try_parse_language(code)) return *lang;
  throw ValidationError("unsupported language code: " + std::string(code));
}

/// True for languages whose native text is written outside the Latin script.
inline constexpr bool uses_non_latin_script(Language lang) {
  switch (lang) {
    case Language::zh:
    case Language::ja:
    case Language::ko:
    case Language::th:
    case Language::bn:
    case Language::te:
    case Language::ru:
      return true;
    default:
      return false;
  }
}

}  // namespace polytask
