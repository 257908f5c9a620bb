#pragma once

// average@k: mean correctness over all attempts. pass@k: share of instances
// with at least one correct attempt. Per (task, language) cell; a language
// roll-up is the mean over its task cells, the overall figure the mean over
// language roll-ups (the layout of a per-language results table).

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "polytask/core/errors.hpp"
#include "polytask/core/language.hpp"
#include "polytask/eval/records.hpp"

namespace polytask {

struct CellMetrics {
  std::string task_id;
  Language language = Language::en;
  std::size_t instances = 0;
  std::size_t attempts = 0;
  std::size_t correct = 0;
  std::size_t passed = 0;      // instances with >= 1 correct attempt
  std::size_t consistent = 0;  // attempts judged in the query language
  double average = 0.0;
  double pass = 0.0;
  double consistency = 0.0;
  std::map<std::string, std::size_t> failures;  // failure_reason -> attempts
};

struct Rollup {
  std::size_t cells = 0;
  double average = 0.0;
  double pass = 0.0;
  double consistency = 0.0;
};

struct EvalReport {
  int k = 0;
  std::vector<CellMetrics> cells;  // sorted by (task_id, language)
  std::map<Language, Rollup> languages;
  Rollup overall;

  [[nodiscard]] bool empty() const { return cells.empty(); }

  [[nodiscard]] const CellMetrics* cell(const std::string& task_id, Language lang) const {
    for (const auto& c : cells) {
      if (c.task_id == task_id && c.language == lang) return &c;
    }
    return nullptr;
  }
};

/// Pure; record order does not matter. Throws ValidationError unless every
/// instance has attempts 0..k-1 exactly once.
inline EvalReport compute_metrics(const std::vector<RunRecord>& records, int k) {
  if (k < 1) throw ValidationError("k must be at least 1");
  std::map<InstanceKey, std::vector<const RunRecord*>> by_instance;
  for (const auto& r : records) by_instance[r.instance].push_back(&r);

  std::map<std::pair<std::string, Language>, CellMetrics> cells;
  for (const auto& [key, attempts] : by_instance) {
    std::set<int> seen;
    for (const auto* r : attempts) {
      if (r->attempt < 0 || r->attempt >= k || !seen.insert(r->attempt).second) {
        throw ValidationError("instance " + to_string(key) + " has a duplicate or out-of-range attempt " +
                              std::to_string(r->attempt));
      }
    }
    if (static_cast<int>(seen.size()) != k) {
      throw ValidationError("instance " + to_string(key) + " has " + std::to_string(seen.size()) +
                            " attempts, expected " + std::to_string(k));
    }
    auto& cell = cells[{key.task_id, key.language}];
    cell.task_id = key.task_id;
    cell.language = key.language;
    ++cell.instances;
    bool any = false;
    for (const auto* r : attempts) {
      ++cell.attempts;
      if (r->verdict.correct) {
        ++cell.correct;
        any = true;
      } else if (r->verdict.failure) {
        ++cell.failures[std::string(to_string(*r->verdict.failure))];
      }
      if (r->language_consistent) ++cell.consistent;
    }
    if (any) ++cell.passed;
  }

  EvalReport report;
  report.k = k;
  for (auto& [_, c] : cells) {
    c.average = static_cast<double>(c.correct) / static_cast<double>(c.attempts);
    c.pass = static_cast<double>(c.passed) / static_cast<double>(c.instances);
    c.consistency = static_cast<double>(c.consistent) / static_cast<double>(c.attempts);
    auto& lang = report.languages[c.language];
    ++lang.cells;
    lang.average += c.average;
    lang.pass += c.pass;
    lang.consistency += c.consistency;
    report.cells.push_back(std::move(c));
  }
  for (auto& [_, r] : report.languages) {
    r.average /= static_cast<double>(r.cells);
    r.pass /= static_cast<double>(r.cells);
    r.consistency /= static_cast<double>(r.cells);
    ++report.overall.cells;
    report.overall.average += r.average;
    report.overall.pass += r.pass;
    report.overall.consistency += r.consistency;
  }
  if (report.overall.cells > 0) {
    const auto n = static_cast<double>(report.overall.cells);
    report.overall.average /= n;
    report.overall.pass /= n;
    report.overall.consistency /= n;
  }
  return report;
}

}  // namespace polytask
