#pragma once

#include "polytask/core/task.hpp"
#include "polytask/tasks/common.hpp"

namespace polytask::tasks {

/// Conway's Game of Life on a bounded n x n board; cells outside the board are dead.
class GameOfLife final : public TaskBase {
 public:
  GameOfLife()
      : TaskBase({"game_of_life", Category::games, LocalizationFlag::fully_translated,
                  DifficultyCurriculum({int_param("n", {4, 6, 10}, 0), int_param("s", {1, 2, 4}, 0)}),
                  AnswerKind::grid, "board area"},
                 {{{"question", {"size", "steps", "board"}}}, {}}) {}

  static Grid step(const Grid& board) {
    const auto n = static_cast<std::ptrdiff_t>(board.size());
    Grid next = board;
    for (std::ptrdiff_t r = 0; r < n; ++r) {
      const auto cols = static_cast<std::ptrdiff_t>(board[static_cast<std::size_t>(r)].size());
      for (std::ptrdiff_t c = 0; c < cols; ++c) {
        int live = 0;
        for (std::ptrdiff_t dr = -1; dr <= 1; ++dr) {
          for (std::ptrdiff_t dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            const auto rr = r + dr;
            const auto cc = c + dc;
            if (rr < 0 || rr >= n || cc < 0 || cc >= cols) continue;
            live += board[static_cast<std::size_t>(rr)][static_cast<std::size_t>(cc)];
          }
        }
        const int alive = board[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        next[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = (live == 3 || (alive && live == 2)) ? 1 : 0;
      }
    }
    return next;
  }

  static Grid simulate(Grid board, std::int64_t steps) {
    for (std::int64_t i = 0; i < steps; ++i) board = step(board);
    return board;
  }

  // Initial density 35%.
  Generated generate(Rng& rng, const ResolvedDifficulty& d) const override {
    const auto n = static_cast<std::size_t>(d.integer("n"));
    Grid board(n, std::vector<int>(n));
    for (auto& row : board) {
      for (auto& v : row) v = rng.chance(35, 100) ? 1 : 0;
    }
    return {{{"board", board}, {"steps", d.integer("s")}}};
  }

  [[nodiscard]] nlohmann::json solve(const nlohmann::json& p) const override {
    return simulate(p.at("board").get<Grid>(), p.at("steps").get<std::int64_t>());
  }

  [[nodiscard]] Bindings bindings(const nlohmann::json& p) const override {
    return {{"size", static_cast<std::int64_t>(p.at("board").size())},
            {"steps", p.at("steps").get<std::int64_t>()},
            {"board", format_grid(p.at("board").get<Grid>())}};
  }

  [[nodiscard]] double complexity(const nlohmann::json& p) const override {
    const auto n = static_cast<double>(p.at("board").size());
    return n * n;
  }
};

}  // namespace polytask::tasks
