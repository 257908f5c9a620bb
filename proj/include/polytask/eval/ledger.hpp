#pragma once

// Append-only JSONL ledger of RunRecords. A final line without its newline is
// the trace of an interrupted write: it is ignored on read and cut off before
// the next append. Any other malformed line is an error.

#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "polytask/core/errors.hpp"
#include "polytask/eval/records.hpp"

namespace polytask {

struct LedgerContents {
  std::vector<RunRecord> records;  // first occurrence of each (instance, attempt), file order
  std::size_t duplicates = 0;
  bool truncated_tail = false;
  std::uintmax_t valid_bytes = 0;  // length of the well-formed prefix
};

inline LedgerContents read_ledger(const std::filesystem::path& path) {
  LedgerContents out;
  if (!std::filesystem::exists(path)) return out;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read ledger " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::set<std::pair<InstanceKey, int>> seen;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    const auto nl = text.find('\n', start);
    ++line_no;
    if (nl == std::string::npos) {
      // records are written with their newline in one call, so this is a torn write
      out.truncated_tail = true;
      break;
    }
    const auto line = std::string_view(text).substr(start, nl - start);
    if (!line.empty()) {
      RunRecord r;
      try {
        r = record_from_json_line(line);
      } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
      }
      if (seen.insert({r.instance, r.attempt}).second) out.records.push_back(std::move(r));
      else ++out.duplicates;
    }
    start = nl + 1;
    out.valid_bytes = start;
  }
  return out;
}

/// Serialized appender. One line per record, flushed per write.
class LedgerWriter {
 public:
  explicit LedgerWriter(std::filesystem::path path) : path_(std::move(path)) {
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    if (std::filesystem::exists(path_)) {
      const auto contents = read_ledger(path_);
      if (contents.truncated_tail) std::filesystem::resize_file(path_, contents.valid_bytes);
    }
    out_.open(path_, std::ios::binary | std::ios::app);
    if (!out_) throw ValidationError("cannot open ledger " + path_.string() + " for appending");
  }

  void append(const RunRecord& r) {
    const auto line = to_json_line(r) + "\n";
    std::lock_guard lock(mutex_);
    out_ << line;
    out_.flush();
    if (!out_) throw ValidationError("write to ledger " + path_.string() + " failed");
  }

  [[nodiscard]] const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::mutex mutex_;
};

}  // namespace polytask
