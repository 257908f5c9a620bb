#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "polytask/core/instance.hpp"
#include "polytask/core/registry.hpp"
#include "polytask/locale/language_table.hpp"
#include "polytask/locale/pack_store.hpp"
#include "polytask/verify/extract.hpp"
#include "polytask/verify/normalize.hpp"

namespace polytask {

enum class FailureReason { no_answer_found, parse_failure, wrong_answer, wrong_language_token };

inline std::string_view to_string(FailureReason r) {
  switch (r) {
    case FailureReason::no_answer_found:
      return "no_answer_found";
    case FailureReason::parse_failure:
      return "parse_failure";
    case FailureReason::wrong_answer:
      return "wrong_answer";
    case FailureReason::wrong_language_token:
      return "wrong_language_token";
  }
  return "parse_failure";
}

inline std::optional<FailureReason> parse_failure_reason(std::string_view s) {
  for (auto r : {FailureReason::no_answer_found, FailureReason::parse_failure, FailureReason::wrong_answer,
                 FailureReason::wrong_language_token}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

struct Verdict {
  bool correct = false;
  std::optional<ExtractedAnswer> extracted;
  std::optional<FailureReason> failure;
  std::string detail;  // parse error or offending span, informational
};

/// JSON dump that replaces invalid UTF-8 instead of throwing.
inline std::string safe_dump(const nlohmann::json& j, int indent = -1) {
  return j.dump(indent, ' ', false, nlohmann::json::error_handler_t::replace);
}

inline nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j;
  j["correct"] = v.correct;
  if (v.extracted) {
    j["extracted"] = {{"text", v.extracted->text},
                      {"strategy", to_string(v.extracted->strategy)},
                      {"begin", v.extracted->begin},
                      {"end", v.extracted->end}};
  } else {
    j["extracted"] = nullptr;
  }
  j["failure_reason"] = v.failure ? nlohmann::json(to_string(*v.failure)) : nlohmann::json();
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

struct VerifyOptions {
  // Accept English answer tokens for non-English localized_boolean questions.
  bool lenient_language_tokens = false;
};

/// Extract, normalize, check. Pure given its inputs; safe for concurrent use.
class Verifier {
 public:
  Verifier(const TaskRegistry& registry, PackStore& packs, VerifyOptions options = {})
      : registry_(registry), packs_(packs), options_(options) {}

  /// Never throws on transcript content. Throws UnknownTaskError for unregistered
  /// tasks and PackError when the instance's packs cannot be loaded.
  [[nodiscard]] Verdict verify(const ProblemInstance& inst, std::string_view transcript) const {
    const auto& task = registry_.get(inst.task_id);
    const bool fallback = inst.metadata.is_object() && inst.metadata.value("pack_quality", "") == "english_fallback";
    const auto pack = packs_.load(inst.task_id, fallback ? Language::en : inst.language, task.contract(), true);
    Verdict v;
    try {
      const auto markers = packs_.languages().markers_with_english(inst.language);
      v.extracted = extract_answer(transcript, markers);
      if (!v.extracted) {
        v.failure = FailureReason::no_answer_found;
        return v;
      }
      const auto kind = task.spec().answer_kind;
      auto normalized = normalize(kind, v.extracted->text, *pack);
      if (!normalized.value && kind == AnswerKind::localized_boolean && pack->language != Language::en) {
        const auto english = packs_.load(inst.task_id, Language::en, task.contract(), false);
        auto as_english = normalize(kind, v.extracted->text, *english);
        if (as_english.value) {
          if (!options_.lenient_language_tokens) {
            v.failure = FailureReason::wrong_language_token;
            v.detail = "English answer token in a " + std::string(to_string(inst.language)) + " question";
            return v;
          }
          normalized = std::move(as_english);
        }
      }
      if (!normalized.value) {
        v.failure = FailureReason::parse_failure;
        v.detail = normalized.error;
        return v;
      }
      v.correct = task.check(inst.payload, *normalized.value);
      if (!v.correct) v.failure = FailureReason::wrong_answer;
    } catch (const std::exception& e) {
      v.correct = false;
      v.failure = FailureReason::parse_failure;
      v.detail = e.what();
    }
    return v;
  }

 private:
  const TaskRegistry& registry_;
  PackStore& packs_;
  VerifyOptions options_;
};

}  // namespace polytask
