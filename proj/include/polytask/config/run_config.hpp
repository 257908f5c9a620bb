#pragma once

// Declarative run description. Example:
//   {
//     "tasks": ["gcd", "syllogism"],          // or "all"
//     "languages": "all",                     // or ["en", "de"]
//     "dataset_seed": 42,
//     "count": 50,
//     "difficulty": {"percentile": 25},       // "default" | {"levels": {"gcd": {"m": 2}}}
//     "k": 8,
//     "endpoint": {"base_url": "fixture://oracle", "model": "m"},
//     "output": {"dataset_dir": "out/dataset", "ledger": "out/ledger.jsonl",
//                "report_json": "out/report.json", "report_text": "out/report.txt"},
//     "allow_fallback": true,
//     "threads": 1
//   }
// Unknown keys are rejected at every level.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "polytask/core/difficulty.hpp"
#include "polytask/core/errors.hpp"
#include "polytask/core/language.hpp"
#include "polytask/core/registry.hpp"
#include "polytask/eval/endpoint.hpp"

namespace polytask {

struct OutputPaths {
  std::filesystem::path dataset_dir = "out/dataset";
  std::filesystem::path ledger = "out/ledger.jsonl";
  std::filesystem::path report_json = "out/report.json";
  std::filesystem::path report_text = "out/report.txt";
};

struct DifficultyConfig {
  enum class Kind { defaults, percentile, levels } kind = Kind::defaults;
  double percentile = 0.0;
  std::map<std::string, std::map<std::string, std::size_t>> levels;  // task -> param -> level index

  [[nodiscard]] Difficulty for_task(const std::string& task_id) const {
    switch (kind) {
      case Kind::percentile:
        return Difficulty::percentile(percentile);
      case Kind::levels: {
        auto it = levels.find(task_id);
        return it == levels.end() ? Difficulty::defaults() : Difficulty::levels(it->second);
      }
      case Kind::defaults:
        break;
    }
    return Difficulty::defaults();
  }
};

struct RunConfig {
  std::vector<std::string> tasks;    // empty: every registered task
  std::vector<Language> languages;   // empty: all 14
  std::uint64_t dataset_seed = 0;
  std::uint64_t count = 50;
  DifficultyConfig difficulty;
  int k = 8;
  std::optional<ModelEndpointConfig> endpoint;
  OutputPaths output;
  std::optional<std::filesystem::path> data_dir;
  bool allow_fallback = true;
  unsigned threads = 1;

  [[nodiscard]] std::vector<std::string> resolved_tasks(const TaskRegistry& registry) const {
    return tasks.empty() ? registry.ids() : tasks;
  }

  [[nodiscard]] std::vector<Language> resolved_languages() const {
    return languages.empty() ? std::vector<Language>(kAllLanguages.begin(), kAllLanguages.end()) : languages;
  }

  /// Checks everything that can be checked before work starts.
  void validate(const TaskRegistry& registry) const {
    if (count < 1) throw ConfigError("count must be at least 1");
    if (k < 1) throw ConfigError("k must be at least 1");
    if (threads < 1) throw ConfigError("threads must be at least 1");
    for (const auto& t : tasks) {
      if (!registry.contains(t)) throw ConfigError("unknown task '" + t + "'");
    }
    if (difficulty.kind == DifficultyConfig::Kind::percentile &&
        !(difficulty.percentile >= 0.0 && difficulty.percentile <= 100.0)) {
      throw ConfigError("difficulty percentile must be in [0, 100]");
    }
    for (const auto& [task_id, params] : difficulty.levels) {
      if (!registry.contains(task_id)) throw ConfigError("difficulty.levels names unknown task '" + task_id + "'");
      try {
        (void)resolve_difficulty(registry.get(task_id).spec().curriculum, Difficulty::levels(params));
      } catch (const std::exception& e) {
        throw ConfigError("difficulty.levels." + task_id + ": " + e.what());
      }
    }
    if (endpoint) endpoint->validate();
  }

  static RunConfig from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> allowed = {"tasks", "languages", "dataset_seed", "count",         "difficulty",
                                                  "k",     "endpoint",  "output",       "data_dir",      "allow_fallback",
                                                  "threads"};
    reject_unknown(j, allowed, "");
    RunConfig c;
    try {
      if (j.contains("tasks")) c.tasks = string_list_or_all(j["tasks"], "tasks");
      if (j.contains("languages")) {
        for (const auto& code : string_list_or_all(j["languages"], "languages")) {
          const auto lang = try_parse_language(code);
          if (!lang) throw ConfigError("unsupported language '" + code + "'");
          c.languages.push_back(*lang);
        }
      }
      if (j.contains("dataset_seed")) c.dataset_seed = j["dataset_seed"].get<std::uint64_t>();
      if (j.contains("count")) {
        if (!j["count"].is_number_integer() || j["count"].get<std::int64_t>() < 1) {
          throw ConfigError("count must be a positive integer");
        }
        c.count = j["count"].get<std::uint64_t>();
      }
      if (j.contains("difficulty")) c.difficulty = parse_difficulty(j["difficulty"]);
      if (j.contains("k")) c.k = j["k"].get<int>();
      if (j.contains("endpoint")) c.endpoint = ModelEndpointConfig::from_json(j["endpoint"]);
      if (j.contains("output")) {
        const auto& o = j["output"];
        if (!o.is_object()) throw ConfigError("output must be an object");
        reject_unknown(o, {"dataset_dir", "ledger", "report_json", "report_text"}, "output.");
        c.output.dataset_dir = o.value("dataset_dir", c.output.dataset_dir.string());
        c.output.ledger = o.value("ledger", c.output.ledger.string());
        c.output.report_json = o.value("report_json", c.output.report_json.string());
        c.output.report_text = o.value("report_text", c.output.report_text.string());
      }
      if (j.contains("data_dir")) c.data_dir = j["data_dir"].get<std::string>();
      if (j.contains("allow_fallback")) c.allow_fallback = j["allow_fallback"].get<bool>();
      if (j.contains("threads")) c.threads = j["threads"].get<unsigned>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("bad config value: ") + e.what());
    }
    return c;
  }

  static RunConfig load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config " + path.string());
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return from_json(j);
  }

  [[nodiscard]] nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["tasks"] = tasks.empty() ? nlohmann::ordered_json("all") : nlohmann::ordered_json(tasks);
    if (languages.empty()) {
      j["languages"] = "all";
    } else {
      j["languages"] = nlohmann::ordered_json::array();
      for (auto l : languages) j["languages"].push_back(to_string(l));
    }
    j["dataset_seed"] = dataset_seed;
    j["count"] = count;
    switch (difficulty.kind) {
      case DifficultyConfig::Kind::defaults:
        j["difficulty"] = "default";
        break;
      case DifficultyConfig::Kind::percentile:
        j["difficulty"] = {{"percentile", difficulty.percentile}};
        break;
      case DifficultyConfig::Kind::levels:
        j["difficulty"] = {{"levels", difficulty.levels}};
        break;
    }
    j["k"] = k;
    j["allow_fallback"] = allow_fallback;
    return j;
  }

 private:
  static void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& prefix) {
    for (const auto& [key, _] : j.items()) {
      if (!allowed.contains(key)) throw ConfigError("unknown config key '" + prefix + key + "'");
    }
  }

  static std::vector<std::string> string_list_or_all(const nlohmann::json& v, const std::string& name) {
    if (v.is_string() && v.get<std::string>() == "all") return {};
    if (!v.is_array() || v.empty()) throw ConfigError(name + " must be \"all\" or a non-empty list");
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& e : v) {
      if (!e.is_string()) throw ConfigError(name + " entries must be strings");
      if (seen.insert(e.get<std::string>()).second) out.push_back(e.get<std::string>());
    }
    return out;
  }

  static DifficultyConfig parse_difficulty(const nlohmann::json& v) {
    DifficultyConfig d;
    if (v.is_string()) {
      if (v.get<std::string>() != "default") throw ConfigError("difficulty must be \"default\" or an object");
      return d;
    }
    if (v.is_number()) {
      d.kind = DifficultyConfig::Kind::percentile;
      d.percentile = v.get<double>();
      return d;
    }
    if (!v.is_object() || v.size() != 1) {
      throw ConfigError("difficulty must be \"default\", {\"percentile\": p} or {\"levels\": {...}}");
    }
    if (v.contains("percentile")) {
      d.kind = DifficultyConfig::Kind::percentile;
      d.percentile = v["percentile"].get<double>();
    } else if (v.contains("levels")) {
      d.kind = DifficultyConfig::Kind::levels;
      d.levels = v["levels"].get<std::map<std::string, std::map<std::string, std::size_t>>>();
    } else {
      throw ConfigError("unknown config key 'difficulty." + v.begin().key() + "'");
    }
    return d;
  }
};

}  // namespace polytask
