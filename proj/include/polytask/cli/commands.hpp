#pragma once

// polytask generate | lint | verify | eval | report
// Exit codes: 0 ok, 1 usage or config, 2 data, 3 endpoint.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polytask/config/run_config.hpp"
#include "polytask/eval/consistency.hpp"
#include "polytask/eval/fixture_client.hpp"
#include "polytask/eval/http_client.hpp"
#include "polytask/eval/ledger.hpp"
#include "polytask/eval/metrics.hpp"
#include "polytask/eval/report.hpp"
#include "polytask/eval/runner.hpp"
#include "polytask/suite.hpp"

namespace polytask::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kEndpoint = 3 };

namespace detail {

inline std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline std::string read_text(const std::filesystem::path& path) {
  if (path == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw ValidationError("cannot write " + path.string());
}

/// Flags shared by generate and eval; empty or negative means "keep the config value".
struct RunFlags {
  std::string config;
  std::string data_dir;
  std::string tasks;
  std::string languages;
  std::string out;
  long long seed = -1;
  long long count = -1;
  double percentile = -1;
  int k = 0;
  bool no_fallback = false;
  unsigned threads = 0;

  void attach(CLI::App& cmd, bool with_k) {
    cmd.add_option("-c,--config", config, "run config JSON file");
    cmd.add_option("--data-dir", data_dir, "data directory (packs, corpus, stopwords)");
    cmd.add_option("--tasks", tasks, "comma-separated task ids or 'all'");
    cmd.add_option("--languages", languages, "comma-separated language codes or 'all'");
    cmd.add_option("--seed", seed, "dataset seed");
    cmd.add_option("--count", count, "instances per (task, language)");
    cmd.add_option("--percentile", percentile, "difficulty percentile in [0, 100]");
    cmd.add_option("--out", out, with_k ? "output directory for ledger and reports" : "dataset directory");
    cmd.add_flag("--no-fallback", no_fallback, "fail instead of using English for missing packs");
    cmd.add_option("--threads", threads, "generation threads");
    if (with_k) cmd.add_option("--k", k, "attempts per instance");
  }

  [[nodiscard]] RunConfig resolve(bool eval) const {
    RunConfig c = config.empty() ? RunConfig{} : RunConfig::load(config);
    nlohmann::json patch = nlohmann::json::object();
    if (!tasks.empty()) {
      patch["tasks"] = tasks == "all" ? nlohmann::json("all") : nlohmann::json(split_csv(tasks));
    }
    if (!languages.empty()) {
      patch["languages"] = languages == "all" ? nlohmann::json("all") : nlohmann::json(split_csv(languages));
    }
    if (!patch.empty()) {
      const auto p = RunConfig::from_json(patch);
      if (patch.contains("tasks")) c.tasks = p.tasks;
      if (patch.contains("languages")) c.languages = p.languages;
    }
    if (seed >= 0) c.dataset_seed = static_cast<std::uint64_t>(seed);
    if (count >= 0) {
      if (count == 0) throw ConfigError("count must be at least 1");
      c.count = static_cast<std::uint64_t>(count);
    }
    if (percentile >= 0) {
      c.difficulty.kind = DifficultyConfig::Kind::percentile;
      c.difficulty.percentile = percentile;
      c.difficulty.levels.clear();
    }
    if (k > 0) c.k = k;
    if (!data_dir.empty()) c.data_dir = data_dir;
    if (no_fallback) c.allow_fallback = false;
    if (threads > 0) c.threads = threads;
    if (!out.empty()) {
      if (eval) {
        const std::filesystem::path dir = out;
        c.output.ledger = dir / "ledger.jsonl";
        c.output.report_json = dir / "report.json";
        c.output.report_text = dir / "report.txt";
      } else {
        c.output.dataset_dir = out;
      }
    }
    return c;
  }
};

inline std::unique_ptr<Suite> make_suite(const RunConfig& c) {
  SuiteOptions o;
  if (c.data_dir) o.data_dir = *c.data_dir;
  o.allow_fallback = c.allow_fallback;
  return std::make_unique<Suite>(o);
}

inline std::vector<ProblemInstance> build_dataset(const RunConfig& c, const Suite& suite, const std::string& task,
                                                  Language lang) {
  return suite.engine().generate_dataset(task, lang, c.dataset_seed, c.count, c.difficulty.for_task(task),
                                         c.threads);
}

inline std::vector<ProblemInstance> read_dataset_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("missing dataset file " + path.string());
  std::vector<ProblemInstance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(instance_from_json_line(line));
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------- generate

inline int cmd_generate(const RunConfig& c, std::ostream& out) {
  auto suite = detail::make_suite(c);
  c.validate(suite->registry());
  const auto& dir = c.output.dataset_dir;
  const auto tasks = c.resolved_tasks(suite->registry());
  const auto langs = c.resolved_languages();

  nlohmann::ordered_json manifest;
  manifest["schema_version"] = 1;
  manifest["config"] = c.to_json();
  manifest["config"]["tasks"] = tasks;
  manifest["corpus"] = {{"words_en.txt", suite->corpus()->words_hash()},
                        {"sentences_en.txt", suite->corpus()->sentences_hash()}};
  const auto languages_json = suite->packs().root() / "languages.json";
  manifest["languages_table"] = content_hash(detail::read_text(languages_json));
  manifest["packs"] = nlohmann::ordered_json::object();
  manifest["files"] = nlohmann::ordered_json::object();

  for (const auto& task : tasks) {
    nlohmann::ordered_json packs = nlohmann::ordered_json::object();
    for (auto lang : langs) {
      const auto data = detail::build_dataset(c, *suite, task, lang);
      std::string text;
      for (const auto& inst : data) text += to_json_line(inst) + "\n";
      const auto rel = std::filesystem::path(task) / (std::string(to_string(lang)) + ".jsonl");
      detail::write_text(dir / rel, text);
      manifest["files"][rel.generic_string()] = {{"lines", data.size()}, {"hash", content_hash(text)}};

      const auto pack_path = suite->packs().pack_path(task, lang);
      nlohmann::ordered_json p;
      p["quality"] = data.front().metadata.value("pack_quality", "");
      p["hash"] = std::filesystem::exists(pack_path) ? nlohmann::ordered_json(content_hash(detail::read_text(pack_path)))
                                                     : nlohmann::ordered_json();
      packs[std::string(to_string(lang))] = p;
    }
    manifest["packs"][task] = packs;
  }
  detail::write_text(dir / "manifest.json", manifest.dump(2) + "\n");
  for (const auto& w : suite->packs().warnings()) out << "warning: " << w.message << "\n";
  out << "wrote " << tasks.size() * langs.size() << " files of " << c.count << " instances to " << dir.string()
      << "\n";
  return kOk;
}

// ---------------------------------------------------------------- lint

struct LintArgs {
  std::vector<std::string> paths;  // pack files or directories; empty lints every shipped pack
  std::string data_dir;
  std::string allowlist;  // default <data>/lint_allowlist.json
  bool no_allowlist = false;
  bool json = false;
};

inline int cmd_lint(const LintArgs& a, std::ostream& out) {
  SuiteOptions o;
  if (!a.data_dir.empty()) o.data_dir = a.data_dir;
  Suite suite(o);
  LintAllowlist allow;
  if (!a.no_allowlist) {
    allow = a.allowlist.empty() ? suite.allowlist() : LintAllowlist::load(a.allowlist);
  }

  std::vector<std::filesystem::path> files;
  const auto collect = [&](const std::filesystem::path& p) {
    if (std::filesystem::is_directory(p)) {
      for (const auto& e : std::filesystem::recursive_directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == ".json" && e.path().filename() != "languages.json") {
          files.push_back(e.path());
        }
      }
    } else if (std::filesystem::exists(p)) {
      files.push_back(p);
    } else {
      throw ValidationError("no such pack path: " + p.string());
    }
  };
  if (a.paths.empty()) collect(suite.packs().root());
  for (const auto& p : a.paths) collect(p);
  std::sort(files.begin(), files.end());

  std::vector<Finding> findings;
  for (const auto& file : files) {
    const auto fail = [&](const std::string& rule, const std::string& message) {
      findings.push_back({Severity::error, rule, file.parent_path().filename().string(), file.stem().string(), "",
                          file.string() + ": " + message});
    };
    LanguagePack pack;
    try {
      const auto lang = try_parse_language(file.stem().string());
      pack = read_pack_file(file, lang ? suite.packs().languages().profile(*lang).conventions : Conventions{});
    } catch (const std::exception& e) {
      fail("malformed_pack", e.what());
      continue;
    }
    if (!suite.registry().contains(pack.task_id)) {
      fail("unknown_task", "pack declares unregistered task '" + pack.task_id + "'");
      continue;
    }
    const auto& task = suite.registry().get(pack.task_id);
    std::optional<LanguagePack> english;
    auto en_path = file.parent_path() / "en.json";
    if (!std::filesystem::exists(en_path)) en_path = suite.packs().root() / pack.task_id / "en.json";
    try {
      if (pack.language != Language::en && std::filesystem::exists(en_path)) {
        english = read_pack_file(en_path, suite.packs().languages().profile(Language::en).conventions);
      }
    } catch (const std::exception&) {
      english.reset();  // reported when en.json itself is linted
    }
    for (auto& f : lint_pack(pack, task.contract(), english ? &*english : nullptr, &allow)) {
      findings.push_back(std::move(f));
    }
  }

  std::size_t errors = 0;
  for (const auto& f : findings) errors += f.severity == Severity::error ? 1 : 0;
  if (a.json) {
    nlohmann::json j = {{"files", files.size()}, {"errors", errors}, {"findings", nlohmann::json::array()}};
    for (const auto& f : findings) j["findings"].push_back(to_json(f));
    out << safe_dump(j, 2) << "\n";
  } else {
    for (const auto& f : findings) {
      out << to_string(f.severity) << " " << f.rule << " " << f.task_id << "/" << f.language;
      if (!f.key.empty()) out << " [" << f.key << "]";
      out << ": " << f.message << "\n";
    }
    out << files.size() << " packs, " << errors << " errors, " << findings.size() - errors << " warnings\n";
  }
  return errors == 0 ? kOk : kData;
}

// ---------------------------------------------------------------- verify

inline int cmd_verify(const std::string& instance_path, const std::string& transcript_path,
                      const std::string& data_dir, std::ostream& out) {
  auto text = detail::read_text(instance_path);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  if (text.find('\n') != std::string::npos) {
    throw ValidationError(instance_path + " must hold exactly one instance");
  }
  const auto inst = instance_from_json_line(text);
  const auto transcript = detail::read_text(transcript_path);
  SuiteOptions o;
  if (!data_dir.empty()) o.data_dir = data_dir;
  Suite suite(o);
  if (!suite.registry().contains(inst.task_id)) throw ValidationError("instance names unknown task " + inst.task_id);
  out << safe_dump(to_json(suite.verifier().verify(inst, transcript)), 2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  detail::RunFlags flags;
  std::string dataset_dir;  // read generated files instead of generating in memory
  std::size_t stop_after = 0;
  int concurrency = 0;
  bool quiet = false;
};

inline std::unique_ptr<ChatClient> make_client(const ModelEndpointConfig& e, const std::vector<ProblemInstance>& data,
                                               Suite& suite) {
  if (e.base_url.rfind("fixture://", 0) == 0) {
    return std::make_unique<FixtureChatClient>(parse_fixture_mode(e.base_url), data, suite.registry(), suite.packs());
  }
  return std::make_unique<HttpChatClient>(e);
}

inline int write_report(const EvalReport& report, const OutputPaths& paths, std::ostream& out) {
  const auto text = render_text(report);
  if (!paths.report_json.empty()) detail::write_text(paths.report_json, to_json(report).dump(2) + "\n");
  if (!paths.report_text.empty()) detail::write_text(paths.report_text, text);
  out << text;
  return kOk;
}

inline int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const auto c = a.flags.resolve(true);
  if (!c.endpoint) throw ConfigError("eval needs an 'endpoint' section in the config");
  auto suite = detail::make_suite(c);
  c.validate(suite->registry());

  std::vector<ProblemInstance> dataset;
  for (const auto& task : c.resolved_tasks(suite->registry())) {
    for (auto lang : c.resolved_languages()) {
      auto part = a.dataset_dir.empty()
                      ? detail::build_dataset(c, *suite, task, lang)
                      : detail::read_dataset_file(std::filesystem::path(a.dataset_dir) / task /
                                                  (std::string(to_string(lang)) + ".jsonl"));
      std::move(part.begin(), part.end(), std::back_inserter(dataset));
    }
  }

  auto client = make_client(*c.endpoint, dataset, *suite);
  const auto detector = LanguageDetector::load(suite->data_dir() / "stopwords.json");
  EvalOptions opt;
  opt.k = c.k;
  opt.ledger_path = c.output.ledger;
  opt.concurrency = a.concurrency > 0 ? a.concurrency : c.endpoint->max_concurrency;
  opt.stop_after = a.stop_after;
  opt.retry = RetryPolicy::from(*c.endpoint);
  opt.model = c.endpoint->model;
  opt.system_prompt = c.endpoint->system_prompt;
  const auto summary = run_eval(dataset, *client, suite->verifier(), detector, opt);

  const auto total = dataset.size() * static_cast<std::size_t>(c.k);
  err << "slots: " << total << " total, " << summary.resumed << " resumed, " << summary.issued << " issued, "
      << summary.exhausted << " exhausted after retries\n";
  if (summary.issued > 0 && summary.exhausted == summary.issued) {
    err << "error: every request to " << c.endpoint->base_url
        << " failed after retries; check base_url, model and credentials. Those attempts are recorded as failures in "
        << c.output.ledger.string() << ", so rerun against a fresh ledger.\n";
    return kEndpoint;
  }
  if (!summary.complete) {
    err << "partial run: " << summary.records.size() << "/" << total
        << " slots recorded in " << c.output.ledger.string() << "; rerun the same command to resume\n";
    return kOk;
  }
  std::ostringstream sink;
  write_report(compute_metrics(summary.records, c.k), c.output, a.quiet ? sink : out);
  return kOk;
}

// ---------------------------------------------------------------- report

inline int cmd_report(const std::string& ledger, int k, const OutputPaths& paths, std::ostream& out,
                      std::ostream& err) {
  if (!std::filesystem::exists(ledger)) throw ValidationError("no ledger at " + ledger);
  const auto contents = read_ledger(ledger);
  if (contents.truncated_tail) err << "warning: ignoring an incomplete final line in " << ledger << "\n";
  if (contents.duplicates) err << "warning: " << contents.duplicates << " duplicate records ignored\n";
  return write_report(compute_metrics(contents.records, k), paths, out);
}

// ---------------------------------------------------------------- entry

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Multilingual procedural reasoning tasks: generate, lint, verify, eval, report"};
  app.name("polytask");
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "write <out>/<task>/<lang>.jsonl and manifest.json");
  detail::RunFlags gen_flags;
  gen_flags.attach(*gen, false);

  auto* lint = app.add_subcommand("lint", "lint language packs; exit 2 on error findings");
  LintArgs lint_args;
  lint->add_option("paths", lint_args.paths, "pack files or directories (default: every shipped pack)");
  lint->add_option("--data-dir", lint_args.data_dir, "data directory");
  lint->add_option("--allowlist", lint_args.allowlist, "suppression file");
  lint->add_flag("--no-allowlist", lint_args.no_allowlist, "report suppressed findings too");
  lint->add_flag("--json", lint_args.json, "machine-readable output");

  auto* ver = app.add_subcommand("verify", "grade one transcript against one instance");
  std::string instance_path, transcript_path, verify_data;
  ver->add_option("-i,--instance", instance_path, "file holding one dataset line")->required();
  ver->add_option("-t,--transcript", transcript_path, "transcript file, '-' for stdin")->required();
  ver->add_option("--data-dir", verify_data, "data directory");

  auto* ev = app.add_subcommand("eval", "query an endpoint k times per instance, write ledger and reports");
  EvalArgs eval_args;
  eval_args.flags.attach(*ev, true);
  ev->add_option("--dataset", eval_args.dataset_dir, "use files written by generate");
  ev->add_option("--stop-after", eval_args.stop_after, "issue at most N new slots, then stop (resumable)");
  ev->add_option("--concurrency", eval_args.concurrency, "outstanding requests (default endpoint.max_concurrency)");
  ev->add_flag("-q,--quiet", eval_args.quiet, "do not print the report");

  auto* rep = app.add_subcommand("report", "recompute metrics from a ledger");
  std::string ledger;
  int report_k = 8;
  OutputPaths report_paths{{}, {}, {}, {}};
  std::string report_json, report_text;
  rep->add_option("-l,--ledger", ledger, "ledger JSONL")->required();
  rep->add_option("--k", report_k, "attempts per instance");
  rep->add_option("--json-out", report_json, "write the JSON report here");
  rep->add_option("--text-out", report_text, "write the table here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_generate(gen_flags.resolve(false), out);
    if (*lint) return cmd_lint(lint_args, out);
    if (*ver) return cmd_verify(instance_path, transcript_path, verify_data, out);
    if (*ev) return cmd_eval(eval_args, out, err);
    if (*rep) {
      report_paths.report_json = report_json;
      report_paths.report_text = report_text;
      return cmd_report(ledger, report_k, report_paths, out, err);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnknownTaskError& e) {
    err << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const EndpointError& e) {
    err << "endpoint error: " << e.what() << "\n";
    return kEndpoint;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}

}  // namespace polytask::cli
