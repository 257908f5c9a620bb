#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

namespace polytask::unicode {

struct CodePoint {
  char32_t value;
  std::size_t offset;  // byte offset of the sequence
  std::size_t length;  // byte length of the sequence
};

/// Decodes UTF-8 keeping byte spans; malformed bytes become U+FFFD of length 1.
inline std::vector<CodePoint> decode_spans(std::string_view text) {
  std::vector<CodePoint> out;
  out.reserve(text.size());
  std::size_t i = 0;
  const auto byte = [&](std::size_t k) { return static_cast<std::uint8_t>(text[k]); };
  while (i < text.size()) {
    const std::uint8_t lead = byte(i);
    std::size_t len = 0;
    char32_t cp = 0;
    if (lead < 0x80) {
      len = 1;
      cp = lead;
    } else if ((lead & 0xE0) == 0xC0 && lead >= 0xC2) {
      len = 2;
      cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
      len = 3;
      cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0 && lead <= 0xF4) {
      len = 4;
      cp = lead & 0x07;
    }
    bool ok = len > 0 && i + len <= text.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      if ((byte(i + k) & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (byte(i + k) & 0x3F);
    }
    if (ok && len == 3 && (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF))) ok = false;
    if (ok && len == 4 && (cp < 0x10000 || cp > 0x10FFFF)) ok = false;
    if (!ok) {
      out.push_back({0xFFFD, i, 1});
      ++i;
      continue;
    }
    out.push_back({cp, i, len});
    i += len;
  }
  return out;
}

inline std::vector<char32_t> decode(std::string_view text) {
  std::vector<char32_t> out;
  for (const auto& cp : decode_spans(text)) out.push_back(cp.value);
  return out;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode(const std::vector<char32_t>& cps) {
  std::string out;
  for (char32_t cp : cps) append_utf8(out, cp);
  return out;
}

inline constexpr bool is_space(char32_t cp) {
  return cp == ' ' || (cp >= 0x09 && cp <= 0x0D) || cp == 0x85 || cp == 0xA0 || cp == 0x1680 ||
         (cp >= 0x2000 && cp <= 0x200B) || cp == 0x2028 || cp == 0x2029 || cp == 0x202F || cp == 0x205F ||
         cp == 0x3000 || cp == 0xFEFF;
}

/// Byte offsets [begin, end) of `text` with leading and trailing Unicode whitespace removed.
inline std::pair<std::size_t, std::size_t> trim_bounds(std::string_view text) {
  const auto cps = decode_spans(text);
  std::size_t first = 0;
  std::size_t last = cps.size();
  while (first < last && is_space(cps[first].value)) ++first;
  while (last > first && is_space(cps[last - 1].value)) --last;
  if (first == last) return {0, 0};
  return {cps[first].offset, cps[last - 1].offset + cps[last - 1].length};
}

inline std::string_view trim(std::string_view text) {
  const auto [b, e] = trim_bounds(text);
  return text.substr(b, e - b);
}

/// NFC normalization (ICU).
inline std::string nfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  icu::UnicodeString source = icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  if (U_FAILURE(status)) return std::string(text);
  icu::UnicodeString normalized = normalizer->normalize(source, status);
  if (U_FAILURE(status)) return std::string(text);
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

/// Full Unicode case folding followed by NFC, for caseless comparison.
inline std::string fold(std::string_view text) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  s.foldCase(U_FOLD_CASE_DEFAULT);
  std::string folded;
  s.toUTF8String(folded);
  return nfc(folded);
}

/// Comparison key for answer tokens: trimmed, case-folded, NFC.
inline std::string token_key(std::string_view text) { return fold(trim(text)); }

enum class Script : std::uint8_t { none, latin, cyrillic, han, hiragana, katakana, hangul, thai, bengali, telugu, other };

/// Writing system of a letter; `none` for digits, punctuation, symbols and spaces.
inline constexpr Script script_of(char32_t cp) {
  if ((cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z')) return Script::latin;
  if (cp < 0xC0) return Script::none;
  if (cp == 0xD7 || cp == 0xF7) return Script::none;
  if (cp <= 0x24F || (cp >= 0x1E00 && cp <= 0x1EFF)) return Script::latin;
  if (cp >= 0x300 && cp <= 0x36F) return Script::none;  // combining marks
  if (cp >= 0x370 && cp <= 0x3FF) return Script::other;  // Greek
  if (cp >= 0x400 && cp <= 0x52F) return Script::cyrillic;
  if (cp == 0x964 || cp == 0x965) return Script::none;  // danda
  if (cp >= 0x980 && cp <= 0x9FF) return Script::bengali;
  if (cp >= 0xC00 && cp <= 0xC7F) return Script::telugu;
  if (cp >= 0xE00 && cp <= 0xE7F) return (cp >= 0xE50 && cp <= 0xE59) ? Script::none : Script::thai;
  if (cp >= 0x1100 && cp <= 0x11FF) return Script::hangul;
  if (cp >= 0x2000 && cp <= 0x2BFF) return Script::none;  // punctuation, math, arrows
  if (cp >= 0x3000 && cp <= 0x303F) return Script::none;  // CJK punctuation
  if (cp >= 0x3040 && cp <= 0x309F) return Script::hiragana;
  if (cp >= 0x30A0 && cp <= 0x30FF) return cp == 0x30FB ? Script::none : Script::katakana;
  if (cp >= 0x3130 && cp <= 0x318F) return Script::hangul;
  if (cp >= 0x3400 && cp <= 0x4DBF) return Script::han;
  if (cp >= 0x4E00 && cp <= 0x9FFF) return Script::han;
  if (cp >= 0xAC00 && cp <= 0xD7AF) return Script::hangul;
  if (cp >= 0xF900 && cp <= 0xFAFF) return Script::han;
  if (cp >= 0xFF00 && cp <= 0xFF65) {
    if ((cp >= 0xFF21 && cp <= 0xFF3A) || (cp >= 0xFF41 && cp <= 0xFF5A)) return Script::latin;
    return Script::none;
  }
  if (cp >= 0xFF66 && cp <= 0xFF9F) return Script::katakana;
  if (cp >= 0x20000 && cp <= 0x2FA1F) return Script::han;
  if (cp == 0xFFFD) return Script::none;
  return Script::other;
}

/// Letters that separate words in space-delimited scripts; used for token boundary checks.
inline constexpr bool is_word_char(char32_t cp) {
  if (cp >= '0' && cp <= '9') return true;
  switch (script_of(cp)) {
    case Script::latin:
    case Script::cyrillic:
    case Script::hangul:
    case Script::bengali:
    case Script::telugu:
    case Script::other:
      return true;
    default:
      return false;
  }
}

}  // namespace polytask::unicode
