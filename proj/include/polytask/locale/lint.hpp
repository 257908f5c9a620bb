#pragma once

// Mechanical pack checks. Error-severity findings make a pack unloadable;
// warnings are reported by `polytask lint` and never block generation.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "polytask/core/errors.hpp"
#include "polytask/locale/pack.hpp"
#include "polytask/locale/unicode.hpp"

namespace polytask {

enum class Severity { warning, error };

inline std::string_view to_string(Severity s) { return s == Severity::error ? "error" : "warning"; }

struct Finding {
  Severity severity = Severity::warning;
  std::string rule;
  std::string task_id;
  std::string language;
  std::string key;  // template key or answer token, empty for pack-level findings
  std::string message;
};

inline nlohmann::json to_json(const Finding& f) {
  return {{"severity", to_string(f.severity)}, {"rule", f.rule},         {"task_id", f.task_id},
          {"language", f.language},           {"key", f.key},           {"message", f.message}};
}

/// What a task requires of each of its packs.
struct PackContract {
  TemplateSchema schema;
  std::vector<std::string> answer_tokens;  // canonical tokens the task can emit
  bool english_data = false;               // translated_with_english_data
};

/// Suppressions for known, accepted findings. Fields may be "*".
class LintAllowlist {
 public:
  struct Entry {
    std::string task_id = "*";
    std::string language = "*";
    std::string key = "*";
    std::string rule = "*";
    std::string reason;
  };

  LintAllowlist() = default;
  explicit LintAllowlist(std::vector<Entry> entries) : entries_(std::move(entries)) {}

  static LintAllowlist load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return {};
    std::vector<Entry> entries;
    try {
      const auto j = nlohmann::json::parse(in);
      for (const auto& e : j.at("suppress")) {
        entries.push_back({e.value("task_id", "*"), e.value("language", "*"), e.value("key", "*"),
                           e.value("rule", "*"), e.value("reason", "")});
      }
    } catch (const nlohmann::json::exception& e) {
      throw PackError("malformed lint allowlist " + path.string() + ": " + e.what());
    }
    return LintAllowlist(std::move(entries));
  }

  [[nodiscard]] bool suppresses(const Finding& f) const {
    const auto match = [](const std::string& pattern, const std::string& value) {
      return pattern == "*" || pattern == value;
    };
    for (const auto& e : entries_) {
      if (match(e.task_id, f.task_id) && match(e.language, f.language) && match(e.key, f.key) &&
          match(e.rule, f.rule)) {
        return true;
      }
    }
    return false;
  }

  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

inline std::string describe(const std::set<std::string>& names) {
  std::string out = "{";
  for (const auto& n : names) {
    if (out.size() > 1) out += ", ";
    out += n;
  }
  return out + "}";
}

/// All findings for `pack`. `english` is the English pack of the same task, if known.
inline std::vector<Finding> lint_pack(const LanguagePack& pack, const PackContract& contract,
                                      const LanguagePack* english = nullptr,
                                      const LintAllowlist* allowlist = nullptr) {
  std::vector<Finding> out;
  const std::string lang(to_string(pack.language));
  const auto add = [&](Severity s, std::string rule, std::string key, std::string message) {
    Finding f{s, std::move(rule), pack.task_id, lang, std::move(key), std::move(message)};
    if (allowlist && allowlist->suppresses(f)) return;
    out.push_back(std::move(f));
  };

  for (const auto& [key, variants] : pack.templates) {
    auto declared = contract.schema.find(key);
    if (declared == contract.schema.end()) {
      add(Severity::error, "unknown_key", key, "template key is not declared by the task");
      continue;
    }
    if (variants.empty()) {
      add(Severity::error, "empty_variant_list", key, "template key has no variants");
      continue;
    }
    for (std::size_t i = 0; i < variants.size(); ++i) {
      const auto& v = variants[i];
      const auto where = "variant " + std::to_string(i);
      if (unicode::trim(v).empty()) {
        add(Severity::error, "empty_variant", key, where + " is empty");
        continue;
      }
      const auto found = placeholders_of(v);
      if (found != declared->second) {
        add(Severity::error, "placeholder_mismatch", key,
            where + " has placeholders " + describe(found) + ", expected " + describe(declared->second));
      }
    }
  }
  for (const auto& [key, names] : contract.schema) {
    if (!pack.templates.contains(key)) add(Severity::error, "missing_key", key, "declared template key is absent");
  }

  for (const auto& canonical : contract.answer_tokens) {
    auto it = pack.answer_tokens.find(canonical);
    if (it == pack.answer_tokens.end() || unicode::trim(it->second).empty()) {
      add(Severity::error, "missing_answer_token", canonical, "no localized token for '" + canonical + "'");
    }
  }
  for (const auto& [canonical, token] : pack.answer_tokens) {
    if (std::find(contract.answer_tokens.begin(), contract.answer_tokens.end(), canonical) ==
        contract.answer_tokens.end()) {
      add(Severity::warning, "unknown_answer_token", canonical, "token is not emitted by the task");
    }
    for (const auto& [other, other_token] : pack.answer_tokens) {
      if (other < canonical && unicode::token_key(other_token) == unicode::token_key(token)) {
        add(Severity::error, "ambiguous_answer_token", canonical,
            "'" + canonical + "' and '" + other + "' localize to the same token");
      }
    }
  }

  const std::pair<const char*, const std::string*> conventions[] = {
      {"list_separator", &pack.conventions.list_separator},
      {"question_mark", &pack.conventions.question_mark},
      {"sentence_terminator", &pack.conventions.sentence_terminator},
      {"decimal_point", &pack.conventions.decimal_point},
  };
  for (const auto& [name, value] : conventions) {
    if (value->empty()) add(Severity::error, "empty_convention", name, "convention must be non-empty");
  }
  for (const auto& name : pack.defaulted_conventions) {
    add(Severity::warning, "defaulted_convention", name, "convention not set by the pack, language default used");
  }

  if (english && pack.language != Language::en && pack.quality != PackQuality::english_fallback) {
    if (!contract.english_data) {
      for (const auto& [key, variants] : pack.templates) {
        auto en = english->templates.find(key);
        if (en == english->templates.end()) continue;
        for (const auto& v : variants) {
          if (std::find(en->second.begin(), en->second.end(), v) != en->second.end()) {
            add(Severity::warning, "untranslated_key", key, "variant is identical to the English text");
            break;
          }
        }
      }
    }
    for (const auto& [canonical, token] : pack.answer_tokens) {
      auto en = english->answer_tokens.find(canonical);
      if (en != english->answer_tokens.end() && en->second == token) {
        add(Severity::warning, "untranslated_token", canonical, "token is identical to the English token");
      }
    }
  }
  return out;
}

inline bool has_errors(const std::vector<Finding>& findings) {
  return std::any_of(findings.begin(), findings.end(), [](const Finding& f) { return f.severity == Severity::error; });
}

/// Throws PackError on the first error-severity finding.
inline void validate_pack(const LanguagePack& pack, const PackContract& contract) {
  for (const auto& f : lint_pack(pack, contract)) {
    if (f.severity == Severity::error) {
      throw PackError("invalid pack " + f.task_id + "/" + f.language + ": " + f.rule +
                      (f.key.empty() ? "" : " [" + f.key + "]") + ": " + f.message);
    }
  }
}

}  // namespace polytask
