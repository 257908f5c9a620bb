#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "polytask/cli/commands.hpp"
#include "test_support.hpp"

using namespace polytask;
using polytask::testing::fixtures_dir;
using polytask::testing::scratch_dir;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "polytask");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

std::size_t lines(const fs::path& p) {
  const auto s = slurp(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

fs::path eval_config(const fs::path& dir, const std::string& endpoint, const std::string& extra = "") {
  const auto path = dir / "run.json";
  spit(path, R"({"tasks": ["gcd", "isomorphic_strings"], "languages": ["en", "it"], "count": 4, "k": 2,)" + extra +
                 R"( "endpoint": {"base_url": ")" + endpoint + R"(", "model": "fixture", "max_retries": 1,
                 "backoff_initial_ms": 0, "backoff_max_ms": 0}})");
  return path;
}

}  // namespace

TEST(Cli, NoSubcommandIsUsageError) {
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, GenerateWritesEveryLanguageAndManifest) {
  const auto dir = scratch_dir("cli_generate");
  const auto r = run_cli({"generate", "--tasks", "gcd", "--seed", "42", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (auto lang : kAllLanguages) {
    const auto file = dir / "gcd" / (std::string(to_string(lang)) + ".jsonl");
    ASSERT_TRUE(fs::exists(file)) << file;
    EXPECT_EQ(lines(file), 50u);
  }
  const auto manifest = json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(manifest["config"]["dataset_seed"], 42);
  EXPECT_EQ(manifest["files"].size(), 14u);
  EXPECT_TRUE(manifest["packs"]["gcd"].contains("ja"));
  const auto first = json::parse(slurp(dir / "gcd" / "de.jsonl").substr(0, slurp(dir / "gcd" / "de.jsonl").find('\n')));
  EXPECT_EQ(first["task"], "gcd");
  EXPECT_EQ(first["language"], "de");
}

TEST(Cli, GenerateIsByteIdenticalOnRerun) {
  const auto a = scratch_dir("cli_gen_a");
  const auto b = scratch_dir("cli_gen_b");
  ASSERT_EQ(run_cli({"generate", "--tasks", "syllogism,word_sorting", "--languages", "en,ja,sw", "--count", "20",
                 "--percentile", "75", "--out", a.string()})
                .code,
            0);
  ASSERT_EQ(run_cli({"generate", "--tasks", "syllogism,word_sorting", "--languages", "en,ja,sw", "--count", "20",
                 "--percentile", "75", "--threads", "3", "--out", b.string()})
                .code,
            0);
  for (const auto* task : {"syllogism", "word_sorting"}) {
    for (const auto* lang : {"en", "ja", "sw"}) {
      const auto rel = fs::path(task) / (std::string(lang) + ".jsonl");
      EXPECT_EQ(slurp(a / rel), slurp(b / rel)) << rel;
    }
  }
  auto ma = json::parse(slurp(a / "manifest.json"));
  auto mb = json::parse(slurp(b / "manifest.json"));
  EXPECT_EQ(ma["files"], mb["files"]);
}

TEST(Cli, GenerateRejectsBadArguments) {
  const auto dir = scratch_dir("cli_gen_bad");
  EXPECT_EQ(run_cli({"generate", "--count", "0", "--out", dir.string()}).code, 1);
  EXPECT_EQ(run_cli({"generate", "--tasks", "word_ladder", "--out", dir.string()}).code, 1);
  EXPECT_EQ(run_cli({"generate", "--languages", "xx", "--out", dir.string()}).code, 1);
  EXPECT_EQ(run_cli({"generate", "--percentile", "150", "--out", dir.string()}).code, 1);
  EXPECT_EQ(run_cli({"generate", "--config", (dir / "missing.json").string()}).code, 1);
}

TEST(Cli, GenerateWithoutFallbackFailsOnMissingPack) {
  const auto data = scratch_dir("cli_nofallback");
  fs::copy(POLYTASK_DEFAULT_DATA_DIR, data, fs::copy_options::recursive);
  fs::remove(data / "packs" / "gcd" / "sw.json");
  const auto out = data / "out";
  const auto strict = run_cli({"generate", "--tasks", "gcd", "--languages", "sw", "--count", "2", "--no-fallback",
                           "--data-dir", data.string(), "--out", out.string()});
  EXPECT_EQ(strict.code, 2) << strict.err;
  const auto lenient = run_cli({"generate", "--tasks", "gcd", "--languages", "sw", "--count", "2", "--data-dir",
                            data.string(), "--out", out.string()});
  ASSERT_EQ(lenient.code, 0) << lenient.err;
  const auto manifest = json::parse(slurp(out / "manifest.json"));
  EXPECT_EQ(manifest["packs"]["gcd"]["sw"]["quality"], "english_fallback");
}

TEST(Cli, LintShippedPacksAreClean) {
  const auto r = run_cli({"lint"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(Cli, LintFlagsBrokenFixturePacks) {
  const auto broken = run_cli({"lint", (fixtures_dir() / "packs" / "gcd" / "fr.json").string()});
  EXPECT_EQ(broken.code, 2) << broken.out;
  EXPECT_NE(broken.out.find("placeholder_mismatch"), std::string::npos) << broken.out;
  const auto warn = run_cli({"lint", "--json", (fixtures_dir() / "packs" / "gcd" / "de.json").string()});
  EXPECT_EQ(warn.code, 0) << warn.out;
  const auto findings = json::parse(warn.out);
  EXPECT_NE(findings.dump().find("untranslated"), std::string::npos) << warn.out;
  const auto unknown = run_cli({"lint", (fixtures_dir() / "packs" / "word_ladder" / "en.json").string()});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.out.find("unknown_task"), std::string::npos) << unknown.out;
}

TEST(Cli, VerifyPrintsVerdict) {
  const auto dir = scratch_dir("cli_verify");
  ASSERT_EQ(run_cli({"generate", "--tasks", "gcd", "--languages", "de", "--count", "1", "--out", dir.string()}).code, 0);
  const auto inst_path = dir / "gcd" / "de.jsonl";
  const auto inst = instance_from_json_line(slurp(inst_path).substr(0, slurp(inst_path).size() - 1));
  spit(dir / "good.txt", "Endgültige Antwort: " + inst.metadata["answer_localized"].get<std::string>());
  spit(dir / "empty.txt", "");
  const auto good = run_cli({"verify", "-i", inst_path.string(), "-t", (dir / "good.txt").string()});
  ASSERT_EQ(good.code, 0) << good.err;
  EXPECT_EQ(json::parse(good.out)["correct"], true) << good.out;
  const auto empty = run_cli({"verify", "-i", inst_path.string(), "-t", (dir / "empty.txt").string()});
  ASSERT_EQ(empty.code, 0);
  EXPECT_EQ(json::parse(empty.out)["failure_reason"], "no_answer_found");
  spit(dir / "bad.jsonl", "{not json}\n");
  EXPECT_EQ(run_cli({"verify", "-i", (dir / "bad.jsonl").string(), "-t", (dir / "good.txt").string()}).code, 2);
  spit(dir / "two.jsonl", slurp(inst_path) + slurp(inst_path));
  EXPECT_EQ(run_cli({"verify", "-i", (dir / "two.jsonl").string(), "-t", (dir / "good.txt").string()}).code, 2);
}

TEST(Cli, EvalOracleAndEnglishFixtures) {
  const auto dir = scratch_dir("cli_eval");
  const auto oracle = run_cli({"eval", "--config", eval_config(dir, "fixture://oracle").string(), "--out",
                           (dir / "oracle").string()});
  ASSERT_EQ(oracle.code, 0) << oracle.err;
  const auto oj = json::parse(slurp(dir / "oracle" / "report.json"));
  EXPECT_EQ(oj["overall"]["average"], 1.0);
  EXPECT_EQ(oj["overall"]["pass"], 1.0);
  EXPECT_TRUE(fs::exists(dir / "oracle" / "report.txt"));
  EXPECT_EQ(lines(dir / "oracle" / "ledger.jsonl"), 32u);

  const auto english = run_cli({"eval", "--config", eval_config(dir, "fixture://english").string(), "--out",
                            (dir / "english").string(), "-q"});
  ASSERT_EQ(english.code, 0) << english.err;
  EXPECT_TRUE(english.out.empty());
  const auto ej = json::parse(slurp(dir / "english" / "report.json"));
  for (const auto& c : ej["cells"]) {
    if (c["task"] == "isomorphic_strings" && c["language"] == "it") {
      EXPECT_EQ(c["average"], 0.0);
      EXPECT_EQ(c["failures"]["wrong_language_token"], 8);
    }
    if (c["language"] == "en") EXPECT_EQ(c["average"], 1.0);
  }
  EXPECT_EQ(ej["languages"]["it"]["language_consistency"], 0.0);
}

TEST(Cli, EvalStopAndResumeMatchesSingleRun) {
  const auto dir = scratch_dir("cli_resume");
  const auto cfg = eval_config(dir, "fixture://mixed").string();
  ASSERT_EQ(run_cli({"eval", "--config", cfg, "--out", (dir / "once").string(), "-q"}).code, 0);
  const auto part = run_cli({"eval", "--config", cfg, "--out", (dir / "twice").string(), "--stop-after", "10"});
  ASSERT_EQ(part.code, 0) << part.err;
  EXPECT_NE(part.err.find("partial run"), std::string::npos) << part.err;
  EXPECT_FALSE(fs::exists(dir / "twice" / "report.json"));
  EXPECT_EQ(lines(dir / "twice" / "ledger.jsonl"), 10u);
  const auto rest = run_cli({"eval", "--config", cfg, "--out", (dir / "twice").string(), "-q"});
  ASSERT_EQ(rest.code, 0) << rest.err;
  EXPECT_NE(rest.err.find("10 resumed, 22 issued"), std::string::npos) << rest.err;
  EXPECT_EQ(slurp(dir / "once" / "report.json"), slurp(dir / "twice" / "report.json"));
}

TEST(Cli, EvalFromGeneratedDatasetMatchesInMemory) {
  const auto dir = scratch_dir("cli_eval_dataset");
  const auto cfg = eval_config(dir, "fixture://mixed").string();
  ASSERT_EQ(run_cli({"generate", "--config", cfg, "--out", (dir / "data").string()}).code, 0);
  ASSERT_EQ(run_cli({"eval", "--config", cfg, "--dataset", (dir / "data").string(), "--out", (dir / "a").string(), "-q"})
                .code,
            0);
  ASSERT_EQ(run_cli({"eval", "--config", cfg, "--out", (dir / "b").string(), "-q"}).code, 0);
  EXPECT_EQ(slurp(dir / "a" / "report.json"), slurp(dir / "b" / "report.json"));
}

TEST(Cli, EvalEndpointOutageExitsThree) {
  const auto dir = scratch_dir("cli_outage");
  const auto r = run_cli({"eval", "--config", eval_config(dir, "fixture://error").string(), "--out", dir.string()});
  EXPECT_EQ(r.code, 3) << r.err;
  EXPECT_NE(r.err.find("fresh ledger"), std::string::npos);
}

TEST(Cli, EvalNeedsEndpoint) {
  const auto dir = scratch_dir("cli_no_endpoint");
  spit(dir / "run.json", R"({"tasks": ["gcd"]})");
  EXPECT_EQ(run_cli({"eval", "--config", (dir / "run.json").string()}).code, 1);
  spit(dir / "typo.json", R"({"task": ["gcd"]})");
  EXPECT_EQ(run_cli({"eval", "--config", (dir / "typo.json").string()}).code, 1);
}

TEST(Cli, ReportRecomputesFromLedger) {
  const auto dir = scratch_dir("cli_report");
  ASSERT_EQ(run_cli({"eval", "--config", eval_config(dir, "fixture://mixed").string(), "--out", dir.string(), "-q"}).code,
            0);
  const auto r = run_cli({"report", "-l", (dir / "ledger.jsonl").string(), "--k", "2", "--json-out",
                      (dir / "again.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(dir / "again.json"), slurp(dir / "report.json"));
  EXPECT_NE(r.out.find("Average"), std::string::npos);
  EXPECT_EQ(run_cli({"report", "-l", (dir / "ledger.jsonl").string(), "--k", "3"}).code, 2);
  EXPECT_EQ(run_cli({"report", "-l", (dir / "nope.jsonl").string()}).code, 2);
}

TEST(Cli, BinaryRunsAsSubprocess) {
  const auto dir = scratch_dir("cli_binary");
  const std::string cmd = std::string("\"") + POLYTASK_CLI_PATH + "\" generate --tasks count_bits --languages ja " +
                          "--count 3 --out \"" + dir.string() + "\" > \"" + (dir / "log.txt").string() + "\" 2>&1";
  ASSERT_EQ(std::system(cmd.c_str()), 0) << slurp(dir / "log.txt");
  EXPECT_EQ(lines(dir / "count_bits" / "ja.jsonl"), 3u);
  const std::string bad = std::string("\"") + POLYTASK_CLI_PATH + "\" generate --count 0 > /dev/null 2>&1";
  const int status = std::system(bad.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 1);
}
