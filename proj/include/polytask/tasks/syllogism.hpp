#pragma once

// Categorical syllogisms in set notation. Every set is non-empty (existential
// import), so the traditional 24 valid forms are valid, subalterns included.
//
//   A  ∀x∈S: x∈P      E  ∀x∈S: x∉P      I  ∃x∈S: x∈P      O  ∃x∈S: x∉P
//
// Validity is decided by the five classical rules; the first broken rule names
// the fallacy.

#include <array>
#include <optional>

#include "polytask/core/task.hpp"
#include "polytask/tasks/common.hpp"

namespace polytask::tasks {

struct Proposition {
  char mood = 'A';  // A, E, I or O
  std::string subject;
  std::string predicate;

  friend bool operator==(const Proposition&, const Proposition&) = default;
};

inline nlohmann::json to_json(const Proposition& p) { return {std::string(1, p.mood), p.subject, p.predicate}; }

inline Proposition proposition_from_json(const nlohmann::json& j) {
  const auto mood = j.at(0).get<std::string>();
  if (mood.size() != 1 || std::string_view("AEIO").find(mood[0]) == std::string_view::npos) {
    throw ValidationError("bad proposition mood: " + mood);
  }
  return {mood[0], j.at(1).get<std::string>(), j.at(2).get<std::string>()};
}

inline std::string notation(const Proposition& p) {
  const bool universal = p.mood == 'A' || p.mood == 'E';
  const bool negative = p.mood == 'E' || p.mood == 'O';
  return std::string(universal ? "∀" : "∃") + "x∈" + p.subject + ": x" + (negative ? "∉" : "∈") + p.predicate;
}

inline bool distributes_subject(char mood) { return mood == 'A' || mood == 'E'; }
inline bool distributes_predicate(char mood) { return mood == 'E' || mood == 'O'; }
inline bool is_negative(char mood) { return mood == 'E' || mood == 'O'; }

struct SyllogismForm {
  std::string moods;  // major, minor, conclusion, e.g. "AAA"
  int figure = 1;

  [[nodiscard]] std::string name() const { return moods + "-" + std::to_string(figure); }
};

/// Premises in major/minor order for a form over term names S, M, P.
inline std::array<Proposition, 3> instantiate(const SyllogismForm& f, const std::string& s, const std::string& m,
                                              const std::string& p) {
  Proposition major{f.moods[0], m, p};
  Proposition minor{f.moods[1], s, m};
  if (f.figure == 2 || f.figure == 4) major = {f.moods[0], p, m};
  if (f.figure == 3 || f.figure == 4) minor = {f.moods[1], m, s};
  return {major, minor, Proposition{f.moods[2], s, p}};
}

/// Null when valid, otherwise the first classical rule the argument breaks.
inline std::optional<std::string> syllogism_fallacy(const Proposition& major, const Proposition& minor,
                                                    const Proposition& conclusion) {
  const auto& s = conclusion.subject;
  const auto& p = conclusion.predicate;
  const auto distributed = [](const Proposition& q, const std::string& term) {
    return (q.subject == term && distributes_subject(q.mood)) || (q.predicate == term && distributes_predicate(q.mood));
  };
  const auto terms_of = [](const Proposition& q) { return std::array<std::string, 2>{q.subject, q.predicate}; };
  std::string m;
  for (const auto& t : terms_of(major)) {
    if (t != p) m = t;
  }
  if (!(distributed(major, m) || distributed(minor, m))) return "undistributed_middle";
  if (distributed(conclusion, p) && !distributed(major, p)) return "illicit_major";
  if (distributed(conclusion, s) && !distributed(minor, s)) return "illicit_minor";
  if (is_negative(major.mood) && is_negative(minor.mood)) return "exclusive_premises";
  if ((is_negative(major.mood) || is_negative(minor.mood)) && !is_negative(conclusion.mood)) {
    return "affirmative_conclusion_from_negative_premise";
  }
  if (!is_negative(major.mood) && !is_negative(minor.mood) && is_negative(conclusion.mood)) {
    return "negative_conclusion_from_affirmative_premises";
  }
  return std::nullopt;
}

inline std::vector<SyllogismForm> all_forms(bool universal_only) {
  const std::string moods = universal_only ? "AE" : "AEIO";
  std::vector<SyllogismForm> out;
  for (int figure = 1; figure <= 4; ++figure) {
    for (char a : moods) {
      for (char b : moods) {
        for (char c : moods) out.push_back({std::string{a, b, c}, figure});
      }
    }
  }
  return out;
}

inline bool form_valid(const SyllogismForm& f) {
  const auto props = instantiate(f, "S", "M", "P");
  return !syllogism_fallacy(props[0], props[1], props[2]);
}

class Syllogism final : public TaskBase {
 public:
  Syllogism()
      : TaskBase({"syllogism", Category::logic, LocalizationFlag::fully_translated,
                  DifficultyCurriculum({text_param("form_pool", {"basic", "full"}, 1)}), AnswerKind::localized_boolean,
                  "particular statements among premises and conclusion"},
                 {{{"question", {"premise1", "premise2", "conclusion"}}}, {"Valid", "Invalid"}}) {
    for (bool universal_only : {true, false}) {
      auto& pools = universal_only ? basic_ : full_;
      for (const auto& f : all_forms(universal_only)) (form_valid(f) ? pools.valid : pools.invalid).push_back(f);
    }
  }

  /// Major and minor premise (by term roles) of a payload, in that order.
  static std::pair<Proposition, Proposition> roles(const nlohmann::json& payload) {
    const auto a = proposition_from_json(payload.at("premises").at(0));
    const auto b = proposition_from_json(payload.at("premises").at(1));
    const auto conclusion = proposition_from_json(payload.at("conclusion"));
    const auto mentions = [](const Proposition& q, const std::string& t) { return q.subject == t || q.predicate == t; };
    if (mentions(a, conclusion.predicate)) return {a, b};
    return {b, a};
  }

  // Half valid, half invalid; the symbols A, B, C are assigned to S, M, P at random.
  Generated generate(Rng& rng, const ResolvedDifficulty& d) const override {
    const auto& pools = d.text("form_pool") == "basic" ? basic_ : full_;
    const bool valid = rng.chance(1, 2);
    const auto& pool = valid ? pools.valid : pools.invalid;
    const auto& form = pool[static_cast<std::size_t>(rng.below(pool.size()))];
    std::array<std::string, 3> symbols = {"A", "B", "C"};
    rng.shuffle(std::span<std::string>(symbols));
    auto props = instantiate(form, symbols[0], symbols[1], symbols[2]);
    if (rng.chance(1, 2)) std::swap(props[0], props[1]);
    const auto abstract = instantiate(form, "S", "M", "P");
    const auto fallacy = syllogism_fallacy(abstract[0], abstract[1], abstract[2]);
    return {{{"premises", {to_json(props[0]), to_json(props[1])}}, {"conclusion", to_json(props[2])}},
            {{"form", form.name()}, {"fallacy", fallacy ? nlohmann::json(*fallacy) : nlohmann::json()}}};
  }

  [[nodiscard]] nlohmann::json solve(const nlohmann::json& p) const override {
    const auto [major, minor] = roles(p);
    return syllogism_fallacy(major, minor, proposition_from_json(p.at("conclusion"))) ? "Invalid" : "Valid";
  }

  [[nodiscard]] Bindings bindings(const nlohmann::json& p) const override {
    return {{"premise1", notation(proposition_from_json(p.at("premises").at(0)))},
            {"premise2", notation(proposition_from_json(p.at("premises").at(1)))},
            {"conclusion", notation(proposition_from_json(p.at("conclusion")))}};
  }

  [[nodiscard]] double complexity(const nlohmann::json& p) const override {
    double particular = 0;
    for (const auto& q : {p.at("premises").at(0), p.at("premises").at(1), p.at("conclusion")}) {
      const auto mood = q.at(0).get<std::string>();
      if (mood == "I" || mood == "O") particular += 1;
    }
    return particular;
  }

 private:
  struct Pools {
    std::vector<SyllogismForm> valid;
    std::vector<SyllogismForm> invalid;
  };
  Pools basic_;
  Pools full_;
};

}  // namespace polytask::tasks
