#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polytask/core/errors.hpp"
#include "polytask/core/language.hpp"
#include "polytask/locale/pack.hpp"

namespace polytask {

struct LanguageProfile {
  Language language = Language::en;
  std::string name;
  Conventions conventions;                  // defaults for packs that omit a field
  std::vector<std::string> answer_markers;  // "Final answer:" and friends
};

/// Per-language defaults shipped in data/languages.json.
class LanguageTable {
 public:
  LanguageTable() {
    for (auto lang : kAllLanguages) {
      auto& p = profiles_[static_cast<std::size_t>(lang)];
      p.language = lang;
      p.name = std::string(to_string(lang));
    }
    profiles_[0].answer_markers = {"Final answer:", "Answer:"};
  }

  static LanguageTable from_json(const nlohmann::json& j) {
    LanguageTable table;
    const auto& langs = j.at("languages");
    for (auto lang : kAllLanguages) {
      const auto code = std::string(to_string(lang));
      if (!langs.contains(code)) throw PackError("languages table is missing '" + code + "'");
      const auto& entry = langs.at(code);
      auto& p = table.profiles_[static_cast<std::size_t>(lang)];
      p.name = entry.value("name", code);
      if (entry.contains("conventions")) {
        const auto& c = entry.at("conventions");
        p.conventions.list_separator = c.value("list_separator", p.conventions.list_separator);
        p.conventions.question_mark = c.value("question_mark", p.conventions.question_mark);
        p.conventions.sentence_terminator = c.value("sentence_terminator", p.conventions.sentence_terminator);
        p.conventions.decimal_point = c.value("decimal_point", p.conventions.decimal_point);
      }
      p.answer_markers = entry.value("answer_markers", std::vector<std::string>{});
    }
    return table;
  }

  static LanguageTable load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw PackError("cannot open languages table " + path.string());
    try {
      return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw PackError("malformed languages table " + path.string() + ": " + e.what());
    }
  }

  [[nodiscard]] const LanguageProfile& profile(Language lang) const {
    return profiles_[static_cast<std::size_t>(lang)];
  }

  /// Markers for `lang`, followed by the English ones.
  [[nodiscard]] std::vector<std::string> markers_with_english(Language lang) const {
    auto out = profile(lang).answer_markers;
    if (lang != Language::en) {
      for (const auto& m : profile(Language::en).answer_markers) out.push_back(m);
    }
    return out;
  }

 private:
  std::array<LanguageProfile, kAllLanguages.size()> profiles_;
};

}  // namespace polytask
