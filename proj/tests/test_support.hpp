#pragma once

#include <filesystem>
#include <string>

#include "polytask/suite.hpp"

namespace polytask::testing {

/// One suite over the shipped data directory, shared by every test in the binary.
inline Suite& shared_suite() {
  static Suite suite;
  return suite;
}

inline ProblemInstance make(const std::string& task, Language lang, std::uint64_t seed, std::uint64_t index,
                            Difficulty difficulty = Difficulty::defaults()) {
  GenerationRequest req;
  req.task_id = task;
  req.language = lang;
  req.dataset_seed = seed;
  req.index = index;
  req.difficulty = std::move(difficulty);
  return shared_suite().engine().generate_instance(req);
}

/// Instance built from a hand-written payload, rendered with variant 0.
inline ProblemInstance forced(const std::string& task, Language lang, nlohmann::json payload,
                              std::uint64_t variant_draw = 0) {
  auto& s = shared_suite();
  const auto& t = s.registry().get(task);
  return s.engine().materialize(t, lang, 0, 0, resolve_difficulty(t.spec().curriculum, Difficulty::defaults()),
                                std::nullopt, Generated{std::move(payload)}, variant_draw);
}

/// Fresh, empty scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("polytask_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline const std::filesystem::path& fixtures_dir() {
  static const std::filesystem::path dir = POLYTASK_TEST_FIXTURES;
  return dir;
}

}  // namespace polytask::testing
