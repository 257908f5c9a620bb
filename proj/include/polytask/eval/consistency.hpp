#pragma once

// Response-language heuristic.
//
// Letters are bucketed by writing system; digits, punctuation and math symbols
// are ignored. zh, ja, ko, th, bn, te, ru: consistent iff at least `threshold`
// of the letters are in the language's script set (ja: han + kana). Latin-script
// languages additionally need the Latin share, and then a stopword vote: the
// expected language must have hits and at least as many as any other language.

#include <algorithm>
#include <array>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "polytask/core/errors.hpp"
#include "polytask/core/language.hpp"
#include "polytask/locale/unicode.hpp"

namespace polytask {

struct ConsistencyDetail {
  std::size_t letters = 0;
  std::size_t expected_script_letters = 0;
  double script_share = 0.0;
  std::map<Language, std::size_t> stopword_hits;  // Latin-script languages only
  std::optional<Language> latin_guess;
  bool consistent = false;
};

class LanguageDetector {
 public:
  static constexpr double kDefaultThreshold = 0.5;

  LanguageDetector() = default;
  LanguageDetector(std::map<Language, std::set<std::string>> stopwords, double threshold = kDefaultThreshold)
      : stopwords_(std::move(stopwords)), threshold_(threshold) {
    if (!(threshold_ > 0.0 && threshold_ <= 1.0)) throw ConfigError("consistency threshold must be in (0, 1]");
  }

  /// {"languages": {"en": ["the", ...], ...}}
  static LanguageDetector from_json(const nlohmann::json& j, double threshold = kDefaultThreshold) {
    std::map<Language, std::set<std::string>> table;
    for (const auto& [code, words] : j.at("languages").items()) {
      const auto lang = parse_language(code);
      for (const auto& w : words) table[lang].insert(unicode::fold(w.get<std::string>()));
    }
    return LanguageDetector(std::move(table), threshold);
  }

  static LanguageDetector load(const std::filesystem::path& path, double threshold = kDefaultThreshold) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read stopword table " + path.string());
    try {
      return from_json(nlohmann::json::parse(in), threshold);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("bad stopword table " + path.string() + ": " + e.what());
    }
  }

  [[nodiscard]] double threshold() const { return threshold_; }

  [[nodiscard]] static bool in_script_set(Language lang, unicode::Script s) {
    using unicode::Script;
    switch (lang) {
      case Language::zh:
        return s == Script::han;
      case Language::ja:
        return s == Script::han || s == Script::hiragana || s == Script::katakana;
      case Language::ko:
        return s == Script::hangul;
      case Language::ru:
        return s == Script::cyrillic;
      case Language::th:
        return s == Script::thai;
      case Language::bn:
        return s == Script::bengali;
      case Language::te:
        return s == Script::telugu;
      default:
        return s == Script::latin;
    }
  }

  [[nodiscard]] ConsistencyDetail analyze(std::string_view text, Language expected) const {
    ConsistencyDetail d;
    for (char32_t cp : unicode::decode(text)) {
      const auto s = unicode::script_of(cp);
      if (s == unicode::Script::none) continue;
      ++d.letters;
      if (in_script_set(expected, s)) ++d.expected_script_letters;
    }
    if (d.letters == 0) return d;
    d.script_share = static_cast<double>(d.expected_script_letters) / static_cast<double>(d.letters);
    const bool script_ok = d.script_share >= threshold_;
    if (uses_non_latin_script(expected)) {
      d.consistent = script_ok;
      return d;
    }
    d.stopword_hits = stopword_hits(text);
    d.latin_guess = best_latin(d.stopword_hits);
    const auto mine = d.stopword_hits.contains(expected) ? d.stopword_hits.at(expected) : 0;
    std::size_t best_other = 0;
    for (const auto& [lang, n] : d.stopword_hits) {
      if (lang != expected) best_other = std::max(best_other, n);
    }
    d.consistent = script_ok && mine > 0 && mine >= best_other;
    return d;
  }

  [[nodiscard]] bool consistent(std::string_view text, Language expected) const {
    return analyze(text, expected).consistent;
  }

  /// Stopword counts per Latin-script language over lowercase word tokens.
  [[nodiscard]] std::map<Language, std::size_t> stopword_hits(std::string_view text) const {
    std::map<Language, std::size_t> hits;
    for (const auto& [lang, words] : stopwords_) hits[lang] = 0;
    const auto folded = unicode::fold(text);
    std::string word;
    const auto flush = [&] {
      if (word.empty()) return;
      for (const auto& [lang, words] : stopwords_) {
        if (words.contains(word)) ++hits[lang];
      }
      word.clear();
    };
    for (const auto& cp : unicode::decode_spans(folded)) {
      if (unicode::script_of(cp.value) == unicode::Script::latin) {
        word.append(folded, cp.offset, cp.length);
      } else {
        flush();
      }
    }
    flush();
    return hits;
  }

  /// Argmax of the stopword vote; ties resolve to the earlier language code in the table order.
  [[nodiscard]] static std::optional<Language> best_latin(const std::map<Language, std::size_t>& hits) {
    std::optional<Language> best;
    std::size_t best_n = 0;
    for (const auto& [lang, n] : hits) {
      if (n > best_n) {
        best = lang;
        best_n = n;
      }
    }
    return best;
  }

 private:
  std::map<Language, std::set<std::string>> stopwords_;
  double threshold_ = kDefaultThreshold;
};

}  // namespace polytask
