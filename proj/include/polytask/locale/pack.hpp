#pragma once

// Language packs: per-(task, language) templates, answer tokens and punctuation
// conventions, stored as one UTF-8 JSON file each:
//
//   {
//     "schema_version": 1,
//     "task_id": "gcd",
//     "language": "de",
//     "quality": "native_validated" | "machine_translated" | "english_fallback",
//     "conventions": {"list_separator": ", ", "question_mark": "?",
//                     "sentence_terminator": ".", "decimal_point": ","},
//     "answer_tokens": {"True": "Wahr", ...},
//     "templates": {"question": ["variant 1", "variant 2"], ...}
//   }
//
// Template syntax: {name} is a placeholder, {?} {,} {.} are the question mark,
// list separator and sentence terminator of the pack, {{ and }} are literal braces.

#include <cctype>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "polytask/core/errors.hpp"
#include "polytask/core/language.hpp"

namespace polytask {

inline constexpr int kPackSchemaVersion = 1;

enum class PackQuality { native_validated, machine_translated, english_fallback };

inline std::string_view to_string(PackQuality q) {
  switch (q) {
    case PackQuality::native_validated:
      return "native_validated";
    case PackQuality::machine_translated:
      return "machine_translated";
    case PackQuality::english_fallback:
      return "english_fallback";
  }
  return "machine_translated";
}

inline PackQuality parse_pack_quality(std::string_view s) {
  if (s == "native_validated") return PackQuality::native_validated;
  if (s == "machine_translated") return PackQuality::machine_translated;
  if (s == "english_fallback") return PackQuality::english_fallback;
  throw PackError("unknown pack quality: " + std::string(s));
}

struct Conventions {
  std::string list_separator = ", ";
  std::string question_mark = "?";
  std::string sentence_terminator = ".";
  std::string decimal_point = ".";

  friend bool operator==(const Conventions&, const Conventions&) = default;
};

/// Declared placeholder set per template key.
using TemplateSchema = std::map<std::string, std::set<std::string>>;

struct LanguagePack {
  int schema_version = kPackSchemaVersion;
  std::string task_id;
  Language language = Language::en;
  PackQuality quality = PackQuality::machine_translated;
  Conventions conventions;
  std::map<std::string, std::string> answer_tokens;  // canonical -> localized
  std::map<std::string, std::vector<std::string>> templates;
  // Convention fields absent from the file and filled from language defaults.
  std::vector<std::string> defaulted_conventions;

  friend bool operator==(const LanguagePack& a, const LanguagePack& b) {
    return a.schema_version == b.schema_version && a.task_id == b.task_id && a.language == b.language &&
           a.quality == b.quality && a.conventions == b.conventions && a.answer_tokens == b.answer_tokens &&
           a.templates == b.templates;
  }
};

// --- template syntax ---------------------------------------------------------

struct TemplateSegment {
  enum class Kind { literal, placeholder, meta } kind;
  std::string text;  // literal text, placeholder name, or meta token ("?", ",", ".")
};

inline bool is_placeholder_name(std::string_view name) {
  if (name.empty()) return false;
  const auto head = static_cast<unsigned char>(name.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    if (!(std::isalnum(u) || u == '_')) return false;
  }
  return true;
}

/// Splits a template into literal text, placeholders and meta tokens. Braces that
/// do not form a valid token are kept as literal text.
inline std::vector<TemplateSegment> parse_template(std::string_view tmpl) {
  std::vector<TemplateSegment> out;
  std::string literal;
  const auto flush = [&] {
    if (!literal.empty()) out.push_back({TemplateSegment::Kind::literal, std::move(literal)});
    literal.clear();
  };
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    const char c = tmpl[i];
    if ((c == '{' || c == '}') && i + 1 < tmpl.size() && tmpl[i + 1] == c) {
      literal.push_back(c);
      ++i;
      continue;
    }
    if (c == '{') {
      const auto close = tmpl.find('}', i + 1);
      if (close != std::string_view::npos) {
        const auto inner = tmpl.substr(i + 1, close - i - 1);
        if (inner == "?" || inner == "," || inner == ".") {
          flush();
          out.push_back({TemplateSegment::Kind::meta, std::string(inner)});
          i = close;
          continue;
        }
        if (is_placeholder_name(inner)) {
          flush();
          out.push_back({TemplateSegment::Kind::placeholder, std::string(inner)});
          i = close;
          continue;
        }
      }
    }
    literal.push_back(c);
  }
  flush();
  return out;
}

inline std::set<std::string> placeholders_of(std::string_view tmpl) {
  std::set<std::string> names;
  for (const auto& seg : parse_template(tmpl)) {
    if (seg.kind == TemplateSegment::Kind::placeholder) names.insert(seg.text);
  }
  return names;
}

// --- JSON ---------------------------------------------------------------------

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end()) throw PackError(std::string("pack is missing field '") + field + "'");
  return *it;
}

inline std::string require_string(const nlohmann::json& j, const char* field) {
  const auto& v = require(j, field);
  if (!v.is_string()) throw PackError(std::string("pack field '") + field + "' must be a string");
  return v.get<std::string>();
}

}  // namespace detail

/// Structural parse of a pack document. Missing convention fields are filled
/// from `defaults` and recorded in `defaulted_conventions`.
inline LanguagePack parse_pack(const nlohmann::json& j, const Conventions& defaults = {}) {
  if (!j.is_object()) throw PackError("pack document must be a JSON object");
  static const std::set<std::string> allowed = {"schema_version", "task_id",       "language",
                                                "quality",        "conventions",   "answer_tokens",
                                                "templates"};
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) throw PackError("unknown pack field '" + key + "'");
  }
  LanguagePack pack;
  const auto& version = detail::require(j, "schema_version");
  if (!version.is_number_integer()) throw PackError("schema_version must be an integer");
  pack.schema_version = version.get<int>();
  if (pack.schema_version != kPackSchemaVersion) {
    throw PackError("unsupported pack schema_version " + std::to_string(pack.schema_version));
  }
  pack.task_id = detail::require_string(j, "task_id");
  const auto lang = try_parse_language(detail::require_string(j, "language"));
  if (!lang) throw PackError("pack language is not supported: " + detail::require_string(j, "language"));
  pack.language = *lang;
  pack.quality = parse_pack_quality(detail::require_string(j, "quality"));

  pack.conventions = defaults;
  const nlohmann::json conventions = j.value("conventions", nlohmann::json::object());
  if (!conventions.is_object()) throw PackError("conventions must be an object");
  const std::pair<const char*, std::string Conventions::*> fields[] = {
      {"list_separator", &Conventions::list_separator},
      {"question_mark", &Conventions::question_mark},
      {"sentence_terminator", &Conventions::sentence_terminator},
      {"decimal_point", &Conventions::decimal_point},
  };
  for (const auto& [key, _] : conventions.items()) {
    bool known = false;
    for (const auto& [name, member] : fields) known = known || key == name;
    if (!known) throw PackError("unknown conventions field '" + key + "'");
  }
  for (const auto& [name, member] : fields) {
    if (auto it = conventions.find(name); it != conventions.end()) {
      if (!it->is_string()) throw PackError(std::string("convention '") + name + "' must be a string");
      pack.conventions.*member = it->get<std::string>();
    } else {
      pack.defaulted_conventions.emplace_back(name);
    }
  }

  const nlohmann::json tokens = j.value("answer_tokens", nlohmann::json::object());
  if (!tokens.is_object()) throw PackError("answer_tokens must be an object");
  for (const auto& [canonical, localized] : tokens.items()) {
    if (!localized.is_string()) throw PackError("answer token '" + canonical + "' must map to a string");
    pack.answer_tokens.emplace(canonical, localized.get<std::string>());
  }

  const auto& templates = detail::require(j, "templates");
  if (!templates.is_object()) throw PackError("templates must be an object");
  for (const auto& [key, variants] : templates.items()) {
    if (!variants.is_array()) throw PackError("template '" + key + "' must be a list of variants");
    std::vector<std::string> list;
    for (const auto& v : variants) {
      if (!v.is_string()) throw PackError("template '" + key + "' has a non-string variant");
      list.push_back(v.get<std::string>());
    }
    pack.templates.emplace(key, std::move(list));
  }
  return pack;
}

inline nlohmann::json to_json(const LanguagePack& pack) {
  nlohmann::ordered_json j;
  j["schema_version"] = pack.schema_version;
  j["task_id"] = pack.task_id;
  j["language"] = to_string(pack.language);
  j["quality"] = to_string(pack.quality);
  j["conventions"] = {{"list_separator", pack.conventions.list_separator},
                      {"question_mark", pack.conventions.question_mark},
                      {"sentence_terminator", pack.conventions.sentence_terminator},
                      {"decimal_point", pack.conventions.decimal_point}};
  j["answer_tokens"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : pack.answer_tokens) j["answer_tokens"][k] = v;
  j["templates"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : pack.templates) j["templates"][k] = v;
  return nlohmann::json::parse(j.dump());
}

inline std::string dump_pack(const LanguagePack& pack) {
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(to_json(pack).dump());
  return j.dump(2) + "\n";
}

}  // namespace polytask
