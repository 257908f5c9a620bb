#pragma once

// k attempts per instance against a ChatClient. Slots already in the ledger are
// skipped, so a crashed run resumes without re-querying them. Workers share an
// atomic slot counter; ledger appends are serialized by the writer.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "polytask/core/errors.hpp"
#include "polytask/core/instance.hpp"
#include "polytask/eval/consistency.hpp"
#include "polytask/eval/endpoint.hpp"
#include "polytask/eval/ledger.hpp"
#include "polytask/eval/records.hpp"
#include "polytask/verify/verifier.hpp"

namespace polytask {

struct EvalOptions {
  int k = 8;
  std::filesystem::path ledger_path;  // empty: keep records in memory only
  int concurrency = 1;
  std::size_t stop_after = 0;  // stop after this many new slots; 0 runs to completion
  RetryPolicy retry;
  Sleeper sleeper = real_sleeper();
  std::string model;
  std::string system_prompt;
  std::function<void(const RunRecord&)> on_record;  // called under the writer lock
};

struct EvalSummary {
  std::vector<RunRecord> records;  // dataset order, then attempt; resumed and new
  std::size_t resumed = 0;         // slots found in the ledger
  std::size_t issued = 0;          // slots processed by this call
  std::size_t exhausted = 0;       // issued slots whose requests all failed
  std::size_t http_calls = 0;
  bool complete = false;  // every slot of the dataset has a record
};

inline ChatRequest make_chat_request(const ProblemInstance& inst, int attempt, const std::string& system_prompt) {
  ChatRequest req;
  if (!system_prompt.empty()) req.messages.push_back({"system", system_prompt});
  req.messages.push_back({"user", inst.question});
  req.instance = key_of(inst);
  req.attempt = attempt;
  return req;
}

inline EvalSummary run_eval(const std::vector<ProblemInstance>& dataset, ChatClient& client, const Verifier& verifier,
                            const LanguageDetector& detector, const EvalOptions& options) {
  if (options.k < 1) throw ConfigError("k must be at least 1");
  if (dataset.empty()) throw ValidationError("dataset is empty");
  if (options.concurrency < 1) throw ConfigError("concurrency must be at least 1");
  {
    std::set<InstanceKey> keys;
    for (const auto& inst : dataset) {
      if (!keys.insert(key_of(inst)).second) throw ValidationError("duplicate instance " + to_string(key_of(inst)));
    }
  }

  std::map<std::pair<InstanceKey, int>, RunRecord> done;
  std::optional<LedgerWriter> writer;
  if (!options.ledger_path.empty()) {
    for (auto& r : read_ledger(options.ledger_path).records) {
      auto slot = std::make_pair(r.instance, r.attempt);
      done.emplace(std::move(slot), std::move(r));
    }
    writer.emplace(options.ledger_path);
  }

  struct Slot {
    const ProblemInstance* inst;
    int attempt;
  };
  std::vector<Slot> pending;
  EvalSummary summary;
  for (const auto& inst : dataset) {
    for (int a = 0; a < options.k; ++a) {
      if (done.contains({key_of(inst), a})) ++summary.resumed;
      else pending.push_back({&inst, a});
    }
  }
  const std::size_t budget = options.stop_after == 0 ? pending.size() : std::min(options.stop_after, pending.size());

  std::mutex mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> calls{0};
  std::atomic<std::size_t> exhausted{0};
  std::exception_ptr failure;

  const auto work = [&] {
    for (std::size_t i = next++; i < budget; i = next++) {
      try {
        const auto& slot = pending[i];
        const auto request = make_chat_request(*slot.inst, slot.attempt, options.system_prompt);
        const auto t0 = std::chrono::steady_clock::now();
        const auto outcome = complete_with_retries(client, request, options.retry, options.sleeper);
        const auto t1 = std::chrono::steady_clock::now();
        calls += static_cast<std::size_t>(outcome.calls);

        RunRecord r;
        r.instance = key_of(*slot.inst);
        r.attempt = slot.attempt;
        r.transcript = outcome.response.ok ? outcome.response.content : std::string();
        if (!outcome.response.ok) ++exhausted;
        r.verdict = verifier.verify(*slot.inst, r.transcript);
        r.language_consistent = detector.consistent(r.transcript, slot.inst->language);
        r.latency_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        r.endpoint = {options.model, outcome.calls, outcome.response.status, outcome.response.error};

        std::lock_guard lock(mutex);
        if (writer) writer->append(r);
        if (options.on_record) options.on_record(r);
        done.emplace(std::make_pair(r.instance, r.attempt), std::move(r));
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        next = budget;
      }
    }
  };

  const auto threads = static_cast<std::size_t>(options.concurrency);
  if (threads == 1 || budget <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(threads, budget); ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  summary.issued = budget;
  summary.exhausted = exhausted;
  summary.http_calls = calls;
  summary.complete = true;
  for (const auto& inst : dataset) {
    for (int a = 0; a < options.k; ++a) {
      auto it = done.find({key_of(inst), a});
      if (it == done.end()) {
        summary.complete = false;
        continue;
      }
      summary.records.push_back(it->second);
    }
  }
  return summary;
}

}  // namespace polytask
