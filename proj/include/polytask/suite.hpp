#pragma once

// Everything wired together over one data directory:
//   <data>/corpus/{words_en,sentences_en}.txt
//   <data>/packs/<task>/<lang>.json, <data>/packs/languages.json
//   <data>/lint_allowlist.json, <data>/stopwords.json

#include <cstdlib>
#include <filesystem>
#include <memory>

#include "polytask/core/engine.hpp"
#include "polytask/core/registry.hpp"
#include "polytask/locale/language_table.hpp"
#include "polytask/locale/lint.hpp"
#include "polytask/locale/pack_store.hpp"
#include "polytask/tasks/builtin.hpp"
#include "polytask/tasks/corpus.hpp"
#include "polytask/verify/verifier.hpp"

namespace polytask {

/// $POLYTASK_DATA_DIR, else the build-time default, else ./data.
inline std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("POLYTASK_DATA_DIR"); env && *env) return env;
#ifdef POLYTASK_DEFAULT_DATA_DIR
  return POLYTASK_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

struct SuiteOptions {
  std::filesystem::path data_dir = default_data_dir();
  std::filesystem::path packs_dir;  // defaults to <data_dir>/packs
  bool allow_fallback = true;
  VerifyOptions verify;
};

class Suite {
 public:
  explicit Suite(SuiteOptions options = {})
      : options_(std::move(options)),
        corpus_(std::make_shared<const Corpus>(Corpus::load(options_.data_dir / "corpus"))),
        packs_(packs_root(), LanguageTable::load(packs_root() / "languages.json")),
        engine_(registry_, packs_, options_.allow_fallback),
        verifier_(registry_, packs_, options_.verify) {
    register_builtin_tasks(registry_, corpus_);
  }

  Suite(const Suite&) = delete;
  Suite& operator=(const Suite&) = delete;

  [[nodiscard]] const SuiteOptions& options() const { return options_; }
  [[nodiscard]] const std::filesystem::path& data_dir() const { return options_.data_dir; }
  [[nodiscard]] const std::shared_ptr<const Corpus>& corpus() const { return corpus_; }
  [[nodiscard]] const TaskRegistry& registry() const { return registry_; }
  [[nodiscard]] PackStore& packs() { return packs_; }
  [[nodiscard]] const Engine& engine() const { return engine_; }
  [[nodiscard]] const Verifier& verifier() const { return verifier_; }

  [[nodiscard]] LintAllowlist allowlist() const {
    const auto path = options_.data_dir / "lint_allowlist.json";
    return std::filesystem::exists(path) ? LintAllowlist::load(path) : LintAllowlist{};
  }

 private:
  [[nodiscard]] std::filesystem::path packs_root() const {
    return options_.packs_dir.empty() ? options_.data_dir / "packs" : options_.packs_dir;
  }

  SuiteOptions options_;
  std::shared_ptr<const Corpus> corpus_;
  TaskRegistry registry_;
  PackStore packs_;
  Engine engine_;
  Verifier verifier_;
};

}  // namespace polytask
