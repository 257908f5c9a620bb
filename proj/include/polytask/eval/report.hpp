#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "polytask/core/errors.hpp"
#include "polytask/core/language.hpp"
#include "polytask/eval/metrics.hpp"

namespace polytask {

inline nlohmann::ordered_json to_json(const EvalReport& report) {
  if (report.empty()) throw ValidationError("cannot render an empty report");
  nlohmann::ordered_json j;
  j["k"] = report.k;
  j["cells"] = nlohmann::ordered_json::array();
  for (const auto& c : report.cells) {
    nlohmann::ordered_json failures = nlohmann::ordered_json::object();
    for (const auto& [reason, n] : c.failures) failures[reason] = n;
    j["cells"].push_back({{"task", c.task_id},
                          {"language", to_string(c.language)},
                          {"instances", c.instances},
                          {"attempts", c.attempts},
                          {"correct", c.correct},
                          {"passed", c.passed},
                          {"average", c.average},
                          {"pass", c.pass},
                          {"language_consistency", c.consistency},
                          {"failures", failures}});
  }
  nlohmann::ordered_json langs = nlohmann::ordered_json::object();
  for (auto lang : kAllLanguages) {
    auto it = report.languages.find(lang);
    if (it == report.languages.end()) continue;
    langs[std::string(to_string(lang))] = {{"tasks", it->second.cells},
                                           {"average", it->second.average},
                                           {"pass", it->second.pass},
                                           {"language_consistency", it->second.consistency}};
  }
  j["languages"] = langs;
  j["overall"] = {{"languages", report.overall.cells},
                  {"average", report.overall.average},
                  {"pass", report.overall.pass},
                  {"language_consistency", report.overall.consistency}};
  return j;
}

namespace detail {

inline std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string pad(std::string s, std::size_t width, bool left) {
  if (s.size() >= width) return s;
  return left ? s + std::string(width - s.size(), ' ') : std::string(width - s.size(), ' ') + s;
}

}  // namespace detail

/// One aligned table per metric: tasks as rows, languages (en..sw) as columns,
/// an Average column (mean over the row's languages) and an Average row.
inline std::string render_text(const EvalReport& report) {
  if (report.empty()) throw ValidationError("cannot render an empty report");
  std::vector<Language> langs;
  for (auto lang : kAllLanguages) {
    if (report.languages.contains(lang)) langs.push_back(lang);
  }
  std::vector<std::string> tasks;
  for (const auto& c : report.cells) {
    if (tasks.empty() || tasks.back() != c.task_id) tasks.push_back(c.task_id);
  }
  std::size_t name_width = 7;
  for (const auto& t : tasks) name_width = std::max(name_width, t.size());
  constexpr std::size_t kCol = 7;

  struct Metric {
    std::string title;
    double CellMetrics::*cell;
    double Rollup::*rollup;
  };
  const std::vector<Metric> metrics = {
      {"average@" + std::to_string(report.k), &CellMetrics::average, &Rollup::average},
      {"pass@" + std::to_string(report.k), &CellMetrics::pass, &Rollup::pass},
      {"language_consistency@" + std::to_string(report.k), &CellMetrics::consistency, &Rollup::consistency},
  };

  std::string out;
  for (const auto& m : metrics) {
    if (!out.empty()) out += "\n";
    out += m.title + "\n";
    std::string header = detail::pad("task", name_width, true);
    for (auto lang : langs) header += detail::pad(std::string(to_string(lang)), kCol, false);
    header += detail::pad("Average", kCol + 2, false);
    out += header + "\n";
    for (const auto& t : tasks) {
      std::string row = detail::pad(t, name_width, true);
      double sum = 0.0;
      std::size_t n = 0;
      for (auto lang : langs) {
        const auto* c = report.cell(t, lang);
        if (c) {
          row += detail::pad(detail::fixed3(c->*m.cell), kCol, false);
          sum += c->*m.cell;
          ++n;
        } else {
          row += detail::pad("-", kCol, false);
        }
      }
      row += detail::pad(detail::fixed3(sum / static_cast<double>(n)), kCol + 2, false);
      out += row + "\n";
    }
    std::string all = detail::pad("Average", name_width, true);
    for (auto lang : langs) all += detail::pad(detail::fixed3(report.languages.at(lang).*m.rollup), kCol, false);
    all += detail::pad(detail::fixed3(report.overall.*m.rollup), kCol + 2, false);
    out += all + "\n";
  }
  return out;
}

}  // namespace polytask
