#pragma once

#include "polytask/core/task.hpp"
#include "polytask/tasks/common.hpp"

namespace polytask::tasks {

/// Elements of an n x n matrix in clockwise spiral order from the top-left corner.
class SpiralMatrix final : public TaskBase {
 public:
  SpiralMatrix()
      : TaskBase({"spiral_matrix", Category::algorithmic, LocalizationFlag::fully_translated,
                  DifficultyCurriculum({int_param("n", {2, 3, 5, 7}, 1)}), AnswerKind::text, "matrix area"},
                 {{{"question", {"matrix"}}}, {}}) {}

  static std::vector<int> spiral(const Grid& m) {
    std::vector<int> out;
    if (m.empty()) return out;
    std::ptrdiff_t top = 0, left = 0;
    std::ptrdiff_t bottom = static_cast<std::ptrdiff_t>(m.size()) - 1;
    std::ptrdiff_t right = static_cast<std::ptrdiff_t>(m[0].size()) - 1;
    const auto at = [&](std::ptrdiff_t r, std::ptrdiff_t c) { return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; };
    while (top <= bottom && left <= right) {
      for (auto c = left; c <= right; ++c) out.push_back(at(top, c));
      for (auto r = top + 1; r <= bottom; ++r) out.push_back(at(r, right));
      if (top < bottom) {
        for (auto c = right - 1; c >= left; --c) out.push_back(at(bottom, c));
      }
      if (left < right) {
        for (auto r = bottom - 1; r > top; --r) out.push_back(at(r, left));
      }
      ++top, ++left, --bottom, --right;
    }
    return out;
  }

  /// Integers of a free-form answer in order; non-digit characters separate them.
  static std::vector<std::int64_t> scan_integers(std::string_view text) {
    std::vector<std::int64_t> out;
    std::size_t i = 0;
    while (i < text.size()) {
      if (text[i] >= '0' && text[i] <= '9') {
        const bool negative = i > 0 && text[i - 1] == '-';
        std::int64_t v = 0;
        std::size_t digits = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
          if (++digits <= 18) v = v * 10 + (text[i] - '0');
          ++i;
        }
        out.push_back(negative ? -v : v);
      } else {
        ++i;
      }
    }
    return out;
  }

  Generated generate(Rng& rng, const ResolvedDifficulty& d) const override {
    const auto n = static_cast<std::size_t>(d.integer("n"));
    Grid m(n, std::vector<int>(n));
    for (auto& row : m) {
      for (auto& v : row) v = static_cast<int>(rng.below(10));
    }
    return {{{"matrix", m}}};
  }

  [[nodiscard]] nlohmann::json solve(const nlohmann::json& p) const override {
    std::string out;
    for (int v : spiral(p.at("matrix").get<Grid>())) {
      if (!out.empty()) out += " ";
      out += std::to_string(v);
    }
    return out;
  }

  [[nodiscard]] Bindings bindings(const nlohmann::json& p) const override {
    return {{"matrix", format_grid(p.at("matrix").get<Grid>())}};
  }

  [[nodiscard]] bool check(const nlohmann::json& p, const AnswerValue& candidate) const override {
    const auto* text = std::get_if<std::string>(&candidate);
    if (!text) return false;
    const auto got = scan_integers(*text);
    const auto want = spiral(p.at("matrix").get<Grid>());
    return std::equal(got.begin(), got.end(), want.begin(), want.end());
  }

  [[nodiscard]] double complexity(const nlohmann::json& p) const override {
    const auto n = static_cast<double>(p.at("matrix").size());
    return n * n;
  }
};

}  // namespace polytask::tasks
