#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "polytask/core/errors.hpp"
#include "polytask/core/language.hpp"
#include "polytask/locale/language_table.hpp"
#include "polytask/locale/lint.hpp"
#include "polytask/locale/pack.hpp"

namespace polytask {

struct PackWarning {
  std::string task_id;
  Language requested = Language::en;
  std::string message;
};

inline LanguagePack read_pack_file(const std::filesystem::path& path, const Conventions& defaults) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PackError("cannot open pack " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw PackError("malformed pack " + path.string() + ": " + e.what());
  }
  return parse_pack(j, defaults);
}

inline void write_pack_file(const std::filesystem::path& path, const LanguagePack& pack) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PackError("cannot write pack " + path.string());
  out << dump_pack(pack);
}

/// Loads packs from <root>/<task_id>/<lang>.json, validates them against the
/// task contract and memoizes the result. Thread-safe.
class PackStore {
 public:
  PackStore(std::filesystem::path root, LanguageTable languages)
      : root_(std::move(root)), languages_(std::move(languages)) {}

  [[nodiscard]] const std::filesystem::path& root() const { return root_; }
  [[nodiscard]] const LanguageTable& languages() const { return languages_; }

  [[nodiscard]] std::filesystem::path pack_path(const std::string& task_id, Language lang) const {
    return root_ / task_id / (std::string(to_string(lang)) + ".json");
  }

  [[nodiscard]] bool has_pack(const std::string& task_id, Language lang) const {
    return std::filesystem::exists(pack_path(task_id, lang));
  }

  /// Pack for (task, lang). A missing non-English pack resolves to the English
  /// pack marked english_fallback when `allow_fallback` is set.
  std::shared_ptr<const LanguagePack> load(const std::string& task_id, Language lang, const PackContract& contract,
                                           bool allow_fallback) {
    const auto key = std::make_tuple(task_id, lang, allow_fallback);
    {
      std::shared_lock lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    auto pack = load_uncached(task_id, lang, contract, allow_fallback);
    std::unique_lock lock(mutex_);
    return cache_.emplace(key, std::move(pack)).first->second;
  }

  [[nodiscard]] std::vector<PackWarning> warnings() const {
    std::shared_lock lock(mutex_);
    return warnings_;
  }

 private:
  std::shared_ptr<const LanguagePack> load_uncached(const std::string& task_id, Language lang,
                                                    const PackContract& contract, bool allow_fallback) {
    const auto path = pack_path(task_id, lang);
    if (std::filesystem::exists(path)) {
      auto pack = read_pack_file(path, languages_.profile(lang).conventions);
      if (pack.task_id != task_id || pack.language != lang) {
        throw PackError("pack " + path.string() + " declares " + pack.task_id + "/" +
                        std::string(to_string(pack.language)));
      }
      validate_pack(pack, contract);
      return std::make_shared<const LanguagePack>(std::move(pack));
    }
    if (lang == Language::en || !allow_fallback) {
      throw PackError("no " + std::string(to_string(lang)) + " pack for task " + task_id +
                      (lang == Language::en ? "" : " and English fallback is disabled"));
    }
    auto english = *load(task_id, Language::en, contract, false);
    english.quality = PackQuality::english_fallback;
    {
      std::unique_lock lock(mutex_);
      warnings_.push_back({task_id, lang,
                           "no " + std::string(to_string(lang)) + " pack for " + task_id + ", using English"});
    }
    return std::make_shared<const LanguagePack>(std::move(english));
  }

  std::filesystem::path root_;
  LanguageTable languages_;
  mutable std::shared_mutex mutex_;
  std::map<std::tuple<std::string, Language, bool>, std::shared_ptr<const LanguagePack>> cache_;
  std::vector<PackWarning> warnings_;
};

}  // namespace polytask
