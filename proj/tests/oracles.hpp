#pragma once

// Reference solutions written without the task code: brute force, direct
// simulation or exhaustive model search. Each takes a payload and returns the
// canonical answer JSON.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polytask/core/answer.hpp"
#include "polytask/core/rng.hpp"

namespace polytask::oracle {

using nlohmann::json;

inline json gcd(const json& p) {
  std::vector<std::int64_t> n = p.at("numbers").get<std::vector<std::int64_t>>();
  const auto smallest = *std::min_element(n.begin(), n.end());
  for (std::int64_t d = smallest; d >= 1; --d) {
    if (std::all_of(n.begin(), n.end(), [&](std::int64_t v) { return v % d == 0; })) return d;
  }
  return 1;
}

inline json count_bits(const json& p) {
  auto n = p.at("number").get<std::uint64_t>();
  std::int64_t count = 0;
  while (n) {
    count += static_cast<std::int64_t>(n & 1u);
    n >>= 1;
  }
  return count;
}

inline json chain_sum(const json& p) {
  const auto& ops = p.at("operators");
  const auto& xs = p.at("operands");
  std::int64_t acc = xs.at(0).get<std::int64_t>();
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const auto v = xs.at(i).get<std::int64_t>();
    acc = ops.at(i - 1).get<std::string>() == "+" ? acc + v : acc - v;
  }
  return acc;
}

inline json leg_counting(const json& p) {
  static const std::map<std::string, int> legs = {{"spider", 8}, {"cow", 4},   {"duck", 2},    {"ant", 6},
                                                  {"dog", 4},    {"cat", 4},   {"chicken", 2}, {"horse", 4},
                                                  {"bee", 6},    {"crab", 10}, {"starfish", 5}, {"sheep", 4}};
  std::int64_t total = 0;
  for (const auto& a : p.at("animals")) total += legs.at(a.at("animal").get<std::string>()) * a.at("count").get<std::int64_t>();
  return total;
}

inline json number_sequence(const json& p) {
  const auto n = p.at("n").get<std::int64_t>();
  const auto a = p.at("a").get<std::int64_t>();
  if (p.at("family") == "geometric") {
    std::int64_t v = a;
    for (std::int64_t i = 0; i < n; ++i) v *= p.at("r").get<std::int64_t>();
    return v;
  }
  return a + n * p.at("d").get<std::int64_t>();
}

/// Searches the integer range for the root; the generator keeps |x| <= 1000.
inline json simple_equations(const json& p) {
  const auto a = p.at("a").get<std::int64_t>();
  const auto b = p.at("b").get<std::int64_t>();
  const auto c = p.at("c").get<std::int64_t>();
  for (std::int64_t x = -1000; x <= 1000; ++x) {
    if (a * x + b == c) return x;
  }
  return nullptr;
}

inline json isomorphic_strings(const json& p) {
  // Two strings are isomorphic iff their first-occurrence patterns agree.
  const auto pattern = [](const std::string& s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s.find(s[i]));
    return out;
  };
  const auto a = p.at("first").get<std::string>();
  const auto b = p.at("second").get<std::string>();
  return a.size() == b.size() && pattern(a) == pattern(b) ? "True" : "False";
}

inline json spell_backward(const json& p) {
  const auto w = p.at("word").get<std::string>();
  std::string out;
  for (std::size_t i = w.size(); i-- > 0;) out.push_back(w[i]);
  return out;
}

inline json letter_counting(const json& p) {
  const auto text = p.at("text").get<std::string>();
  const char letter = p.at("letter").get<std::string>().at(0);
  std::int64_t n = 0;
  for (char c : text) n += c == letter;
  return n;
}

inline json group_anagrams(const json& p) {
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& w : p.at("words")) {
    auto word = w.get<std::string>();
    auto key = word;
    std::sort(key.begin(), key.end());
    groups[key].push_back(word);
  }
  ListOfLists out;
  for (auto& [_, g] : groups) {
    std::sort(g.begin(), g.end());
    out.push_back(g);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return out;
}

inline json word_sorting(const json& p) {
  auto words = p.at("words").get<std::vector<std::string>>();
  const auto lower = [](std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };
  // insertion sort, stable by construction
  for (std::size_t i = 1; i < words.size(); ++i) {
    for (std::size_t j = i; j > 0 && lower(words[j]) < lower(words[j - 1]); --j) std::swap(words[j], words[j - 1]);
  }
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : ", ") + w;
  return out;
}

inline json spiral_matrix(const json& p) {
  const auto m = p.at("matrix").get<Grid>();
  const auto n = static_cast<int>(m.size());
  std::vector<std::vector<bool>> seen(m.size(), std::vector<bool>(m.size()));
  const int dr[] = {0, 1, 0, -1};
  const int dc[] = {1, 0, -1, 0};
  int r = 0, c = 0, dir = 0;
  std::string out;
  for (int step = 0; step < n * n; ++step) {
    out += (out.empty() ? "" : " ") + std::to_string(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    seen[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = true;
    const int nr = r + dr[dir], nc = c + dc[dir];
    if (nr < 0 || nr >= n || nc < 0 || nc >= n || seen[static_cast<std::size_t>(nr)][static_cast<std::size_t>(nc)]) {
      dir = (dir + 1) % 4;
    }
    r += dr[dir];
    c += dc[dir];
  }
  return out;
}

inline json game_of_life(const json& p) {
  auto board = p.at("board").get<Grid>();
  const auto n = board.size();
  for (std::int64_t s = 0; s < p.at("steps").get<std::int64_t>(); ++s) {
    // pad with a ring of dead cells
    Grid padded(n + 2, std::vector<int>(n + 2, 0));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) padded[r + 1][c + 1] = board[r][c];
    }
    Grid next(n, std::vector<int>(n, 0));
    for (std::size_t r = 1; r <= n; ++r) {
      for (std::size_t c = 1; c <= n; ++c) {
        const int around = padded[r - 1][c - 1] + padded[r - 1][c] + padded[r - 1][c + 1] + padded[r][c - 1] +
                           padded[r][c + 1] + padded[r + 1][c - 1] + padded[r + 1][c] + padded[r + 1][c + 1];
        next[r - 1][c - 1] = padded[r][c] ? (around == 2 || around == 3) : (around == 3);
      }
    }
    board = next;
  }
  return board;
}

// ---- syllogism by model search

/// A model assigns each element a membership bitmask over the three sets A, B, C.
/// Sets must be non-empty. Returns "Valid" iff no model of size `universe`
/// satisfies both premises and falsifies the conclusion.
inline json syllogism(const json& p, int universe = 3) {
  const auto bit = [](const std::string& s) { return s == "A" ? 1 : s == "B" ? 2 : 4; };
  const auto holds = [&](const json& prop, const std::vector<int>& model) {
    const auto mood = prop.at(0).get<std::string>();
    const int s = bit(prop.at(1).get<std::string>());
    const int q = bit(prop.at(2).get<std::string>());
    bool all_in = true, all_out = true, some_in = false, some_out = false;
    for (int e : model) {
      if (!(e & s)) continue;
      const bool in = e & q;
      all_in = all_in && in;
      all_out = all_out && !in;
      some_in = some_in || in;
      some_out = some_out || !in;
    }
    if (mood == "A") return all_in;
    if (mood == "E") return all_out;
    if (mood == "I") return some_in;
    return some_out;
  };
  std::vector<int> model(static_cast<std::size_t>(universe), 0);
  std::int64_t total = 1;
  for (int i = 0; i < universe; ++i) total *= 8;
  for (std::int64_t code = 0; code < total; ++code) {
    auto x = code;
    int covered = 0;
    for (auto& e : model) {
      e = static_cast<int>(x % 8);
      x /= 8;
      covered |= e;
    }
    if (covered != 7) continue;  // every set non-empty
    if (holds(p.at("premises").at(0), model) && holds(p.at("premises").at(1), model) &&
        !holds(p.at("conclusion"), model)) {
      return "Invalid";
    }
  }
  return "Valid";
}

inline const std::map<std::string, std::function<json(const json&)>>& all() {
  static const std::map<std::string, std::function<json(const json&)>> table = {
      {"gcd", gcd},
      {"count_bits", count_bits},
      {"chain_sum", chain_sum},
      {"leg_counting", leg_counting},
      {"number_sequence", number_sequence},
      {"simple_equations", simple_equations},
      {"isomorphic_strings", isomorphic_strings},
      {"spell_backward", spell_backward},
      {"letter_counting", letter_counting},
      {"group_anagrams", group_anagrams},
      {"word_sorting", word_sorting},
      {"spiral_matrix", spiral_matrix},
      {"game_of_life", game_of_life},
      {"syllogism", [](const json& p) { return syllogism(p); }},
  };
  return table;
}

// ---- perturbations

/// A wrong answer one edit away from `canonical`, or nullopt when none exists.
/// The caller still asserts the result differs semantically before expecting rejection.
inline std::optional<AnswerValue> perturb(AnswerKind kind, const json& canonical, Rng& rng) {
  switch (kind) {
    case AnswerKind::integer: {
      const auto v = canonical.get<std::int64_t>();
      const std::int64_t deltas[] = {1, -1, 10, -10, 2};
      return AnswerValue{v + deltas[rng.below(5)]};
    }
    case AnswerKind::decimal:
      return AnswerValue{canonical.get<double>() + 0.5};
    case AnswerKind::localized_boolean:
      return AnswerValue{std::string(canonical.get<std::string>() == "True"    ? "False"
                                     : canonical.get<std::string>() == "False" ? "True"
                                     : canonical.get<std::string>() == "Valid" ? "Invalid"
                                                                               : "Valid")};
    case AnswerKind::text: {
      auto s = canonical.get<std::string>();
      // digit change for number lists, element swap for word lists, letter change otherwise
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
          const auto start = static_cast<std::size_t>(rng.below(s.size()));
          for (std::size_t k = 0; k < s.size(); ++k) {
            auto& ch = s[(start + k) % s.size()];
            if (std::isdigit(static_cast<unsigned char>(ch))) {
              ch = static_cast<char>('0' + (ch - '0' + 1) % 10);
              return AnswerValue{s};
            }
          }
        }
      }
      if (s.find(", ") != std::string::npos) {
        std::vector<std::string> words;
        std::size_t pos = 0;
        while (true) {
          const auto next = s.find(", ", pos);
          words.push_back(s.substr(pos, next - pos));
          if (next == std::string::npos) break;
          pos = next + 2;
        }
        const auto i = static_cast<std::size_t>(rng.below(words.size() - 1));
        std::swap(words[i], words[i + 1]);
        std::string out;
        for (const auto& w : words) out += (out.empty() ? "" : ", ") + w;
        return AnswerValue{out};
      }
      if (s.empty()) return std::nullopt;
      const auto i = static_cast<std::size_t>(rng.below(s.size()));
      s[i] = s[i] == 'z' ? 'a' : static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])) + 1);
      return AnswerValue{s};
    }
    case AnswerKind::list_of_lists: {
      auto groups = canonical.get<ListOfLists>();
      if (groups.size() >= 2) {
        const auto i = static_cast<std::size_t>(rng.below(groups.size()));
        const auto j = (i + 1) % groups.size();
        groups[j].push_back(groups[i].back());
        groups[i].pop_back();
        if (groups[i].empty()) groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(i));
      } else if (!groups.empty() && groups[0].size() >= 2) {
        groups.push_back({groups[0].back()});
        groups[0].pop_back();
      } else {
        return std::nullopt;
      }
      return AnswerValue{groups};
    }
    case AnswerKind::grid: {
      auto g = canonical.get<Grid>();
      const auto r = static_cast<std::size_t>(rng.below(g.size()));
      const auto c = static_cast<std::size_t>(rng.below(g[r].size()));
      g[r][c] = 1 - g[r][c];
      return AnswerValue{g};
    }
  }
  return std::nullopt;
}

}  // namespace polytask::oracle
