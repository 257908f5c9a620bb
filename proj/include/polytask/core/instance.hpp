#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "polytask/core/answer.hpp"
#include "polytask/core/difficulty.hpp"
#include "polytask/core/errors.hpp"
#include "polytask/core/language.hpp"

namespace polytask {

struct ProblemInstance {
  std::string task_id;
  Language language = Language::en;
  std::uint64_t dataset_seed = 0;
  std::uint64_t index = 0;
  std::optional<double> difficulty_percentile;
  ResolvedDifficulty difficulty;
  nlohmann::json payload;
  std::string question;
  nlohmann::json answer;
  AnswerKind answer_kind = AnswerKind::integer;
  nlohmann::json metadata = nlohmann::json::object();  // task metadata plus pack_quality, answer_localized

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

/// Dataset line: {task, language, dataset_seed, index, difficulty_percentile,
/// question, answer, answer_kind, metadata}. Payload and resolved difficulty
/// travel inside metadata.
inline nlohmann::ordered_json to_json(const ProblemInstance& inst) {
  nlohmann::ordered_json j;
  j["task"] = inst.task_id;
  j["language"] = to_string(inst.language);
  j["dataset_seed"] = inst.dataset_seed;
  j["index"] = inst.index;
  j["difficulty_percentile"] =
      inst.difficulty_percentile ? nlohmann::ordered_json(*inst.difficulty_percentile) : nlohmann::ordered_json();
  j["question"] = inst.question;
  j["answer"] = inst.answer;
  j["answer_kind"] = to_string(inst.answer_kind);
  nlohmann::json meta = inst.metadata;
  meta["payload"] = inst.payload;
  meta["difficulty"] = inst.difficulty.to_json();
  j["metadata"] = meta;
  return j;
}

inline std::string to_json_line(const ProblemInstance& inst) { return to_json(inst).dump(); }

inline ProblemInstance instance_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ValidationError("instance must be a JSON object");
    for (const char* field : {"task", "language", "dataset_seed", "index", "question", "answer", "answer_kind",
                              "metadata"}) {
      if (!j.contains(field)) throw ValidationError(std::string("instance is missing '") + field + "'");
    }
    ProblemInstance inst;
    inst.task_id = j.at("task").get<std::string>();
    inst.language = parse_language(j.at("language").get<std::string>());
    inst.dataset_seed = j.at("dataset_seed").get<std::uint64_t>();
    inst.index = j.at("index").get<std::uint64_t>();
    if (j.contains("difficulty_percentile") && !j.at("difficulty_percentile").is_null()) {
      inst.difficulty_percentile = j.at("difficulty_percentile").get<double>();
    }
    inst.question = j.at("question").get<std::string>();
    inst.answer = j.at("answer");
    inst.answer_kind = parse_answer_kind(j.at("answer_kind").get<std::string>());
    inst.metadata = j.at("metadata");
    if (!inst.metadata.is_object() || !inst.metadata.contains("payload")) {
      throw ValidationError("instance metadata must carry the payload");
    }
    inst.payload = inst.metadata.at("payload");
    inst.metadata.erase("payload");
    if (inst.metadata.contains("difficulty")) {
      inst.difficulty = ResolvedDifficulty::from_json(inst.metadata.at("difficulty"));
      inst.metadata.erase("difficulty");
    }
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed instance: ") + e.what());
  }
}

inline ProblemInstance instance_from_json_line(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("instance is not valid JSON: ") + e.what());
  }
  return instance_from_json(j);
}

}  // namespace polytask
