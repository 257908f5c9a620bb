#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polytask/core/errors.hpp"
#include "polytask/locale/pack.hpp"
#include "polytask/locale/unicode.hpp"

namespace polytask {

/// Value bound to a placeholder. Lists are joined with the pack's list separator.
using Binding = std::variant<std::string, std::int64_t, std::vector<std::string>, std::vector<std::int64_t>>;
using Bindings = std::map<std::string, Binding, std::less<>>;

struct RenderContext {
  Bindings bindings;
  std::uint64_t variant_draw = 0;  // one Rng draw, shared by every key and language
};

inline std::string render_binding(const Binding& value, const Conventions& conventions) {
  struct Visitor {
    const Conventions& c;
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(const std::vector<std::string>& items) const {
      std::string out;
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += c.list_separator;
        out += items[i];
      }
      return out;
    }
    std::string operator()(const std::vector<std::int64_t>& items) const {
      std::string out;
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += c.list_separator;
        out += std::to_string(items[i]);
      }
      return out;
    }
  };
  return std::visit(Visitor{conventions}, value);
}

inline std::string render_template(std::string_view tmpl, const Conventions& conventions, const Bindings& bindings) {
  std::string out;
  for (const auto& seg : parse_template(tmpl)) {
    switch (seg.kind) {
      case TemplateSegment::Kind::literal:
        out += seg.text;
        break;
      case TemplateSegment::Kind::meta:
        if (seg.text == "?") out += conventions.question_mark;
        else if (seg.text == ",") out += conventions.list_separator;
        else out += conventions.sentence_terminator;
        break;
      case TemplateSegment::Kind::placeholder: {
        auto it = bindings.find(seg.text);
        if (it == bindings.end()) throw RenderError("unbound placeholder {" + seg.text + "}");
        out += render_binding(it->second, conventions);
        break;
      }
    }
  }
  return out;
}

inline const std::string& select_variant(const LanguagePack& pack, std::string_view key, std::uint64_t draw) {
  auto it = pack.templates.find(std::string(key));
  if (it == pack.templates.end()) {
    throw RenderError("template key '" + std::string(key) + "' not in pack " + pack.task_id + "/" +
                      std::string(to_string(pack.language)));
  }
  if (it->second.empty()) throw RenderError("template key '" + std::string(key) + "' has no variants");
  return it->second[static_cast<std::size_t>(draw % it->second.size())];
}

inline std::string render_question(const LanguagePack& pack, std::string_view key, const RenderContext& ctx) {
  return render_template(select_variant(pack, key, ctx.variant_draw), pack.conventions, ctx.bindings);
}

/// Localized form of a canonical answer token; identity for English packs.
inline std::string localize_token(const LanguagePack& pack, std::string_view canonical) {
  auto it = pack.answer_tokens.find(std::string(canonical));
  if (it == pack.answer_tokens.end()) {
    throw RenderError("unknown answer token '" + std::string(canonical) + "' for " + pack.task_id);
  }
  return it->second;
}

/// Canonical token whose localized form matches `localized` (trimmed, case-folded, NFC).
inline std::optional<std::string> delocalize_token(const LanguagePack& pack, std::string_view localized) {
  const auto key = unicode::token_key(localized);
  if (key.empty()) return std::nullopt;
  for (const auto& [canonical, token] : pack.answer_tokens) {
    if (unicode::token_key(token) == key) return canonical;
  }
  return std::nullopt;
}

}  // namespace polytask
