#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "polytask/core/errors.hpp"
#include "polytask/core/instance.hpp"
#include "polytask/core/language.hpp"
#include "polytask/verify/verifier.hpp"

namespace polytask {

inline constexpr int kLedgerSchemaVersion = 1;

struct InstanceKey {
  std::string task_id;
  Language language = Language::en;
  std::uint64_t dataset_seed = 0;
  std::uint64_t index = 0;

  auto operator<=>(const InstanceKey&) const = default;
  bool operator==(const InstanceKey&) const = default;
};

inline InstanceKey key_of(const ProblemInstance& inst) {
  return {inst.task_id, inst.language, inst.dataset_seed, inst.index};
}

inline std::string to_string(const InstanceKey& k) {
  return k.task_id + "/" + std::string(to_string(k.language)) + "/" + std::to_string(k.dataset_seed) + "/" +
         std::to_string(k.index);
}

struct EndpointInfo {
  std::string model;
  int attempts = 0;  // HTTP calls made for this slot, retries included
  int status = 0;    // last HTTP status, 0 for transport errors or fixtures
  std::string error;  // empty on success
};

/// One attempt on one instance. Immutable once appended to the ledger.
struct RunRecord {
  InstanceKey instance;
  int attempt = 0;
  std::string transcript;
  Verdict verdict;
  bool language_consistent = false;
  double latency_ms = 0.0;
  EndpointInfo endpoint;
};

inline Verdict verdict_from_json(const nlohmann::json& j) {
  Verdict v;
  v.correct = j.at("correct").get<bool>();
  if (const auto& e = j.at("extracted"); !e.is_null()) {
    ExtractedAnswer a;
    a.text = e.at("text").get<std::string>();
    const auto strategy = e.at("strategy").get<std::string>();
    if (strategy == "tagged") a.strategy = ExtractionStrategy::tagged;
    else if (strategy == "marker") a.strategy = ExtractionStrategy::marker;
    else if (strategy == "last_line") a.strategy = ExtractionStrategy::last_line;
    else throw ValidationError("unknown extraction strategy: " + strategy);
    a.begin = e.at("begin").get<std::size_t>();
    a.end = e.at("end").get<std::size_t>();
    v.extracted = std::move(a);
  }
  if (const auto& f = j.at("failure_reason"); !f.is_null()) {
    v.failure = parse_failure_reason(f.get<std::string>());
    if (!v.failure) throw ValidationError("unknown failure reason: " + f.get<std::string>());
  }
  v.detail = j.value("detail", "");
  return v;
}

inline nlohmann::ordered_json to_json(const RunRecord& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = kLedgerSchemaVersion;
  j["task"] = r.instance.task_id;
  j["language"] = to_string(r.instance.language);
  j["dataset_seed"] = r.instance.dataset_seed;
  j["index"] = r.instance.index;
  j["attempt"] = r.attempt;
  j["transcript"] = r.transcript;
  j["verdict"] = nlohmann::ordered_json::parse(safe_dump(to_json(r.verdict)));
  j["language_consistent"] = r.language_consistent;
  j["latency_ms"] = r.latency_ms;
  j["endpoint"] = {{"model", r.endpoint.model},
                   {"attempts", r.endpoint.attempts},
                   {"status", r.endpoint.status},
                   {"error", r.endpoint.error}};
  return j;
}

/// One JSONL line without the trailing newline. Invalid UTF-8 in transcripts is replaced.
inline std::string to_json_line(const RunRecord& r) {
  return to_json(r).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

inline RunRecord record_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema_version").get<int>() != kLedgerSchemaVersion) {
      throw ValidationError("unsupported ledger schema_version " + j.at("schema_version").dump());
    }
    RunRecord r;
    r.instance.task_id = j.at("task").get<std::string>();
    r.instance.language = parse_language(j.at("language").get<std::string>());
    r.instance.dataset_seed = j.at("dataset_seed").get<std::uint64_t>();
    r.instance.index = j.at("index").get<std::uint64_t>();
    r.attempt = j.at("attempt").get<int>();
    r.transcript = j.at("transcript").get<std::string>();
    r.verdict = verdict_from_json(j.at("verdict"));
    r.language_consistent = j.at("language_consistent").get<bool>();
    r.latency_ms = j.at("latency_ms").get<double>();
    const auto& e = j.at("endpoint");
    r.endpoint = {e.value("model", ""), e.value("attempts", 0), e.value("status", 0), e.value("error", "")};
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad run record: ") + e.what());
  }
}

inline RunRecord record_from_json_line(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad run record line: ") + e.what());
  }
  return record_from_json(j);
}

}  // namespace polytask
