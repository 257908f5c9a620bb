#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "polytask/core/errors.hpp"
#include "polytask/core/rng.hpp"

namespace polytask {

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string content_hash(std::string_view bytes) { return "fnv1a64:" + hex64(Fnv1a64{}.update(bytes).digest()); }

/// English source data for the English-data tasks: a word list and a running
/// text built from a sentence corpus.
class Corpus {
 public:
  Corpus() = default;

  static Corpus from_text(std::string_view words_text, std::string_view sentences_text) {
    Corpus c;
    c.words_hash_ = content_hash(words_text);
    c.sentences_hash_ = content_hash(sentences_text);

    std::istringstream words_in{std::string(words_text)};
    std::string line;
    std::map<std::string, bool> seen;
    while (std::getline(words_in, line)) {
      std::string w;
      for (char ch : line) {
        if (ch >= 'a' && ch <= 'z') w.push_back(ch);
        else if (ch >= 'A' && ch <= 'Z') w.push_back(static_cast<char>(ch - 'A' + 'a'));
      }
      if (w.empty() || seen[w]) continue;
      seen[w] = true;
      c.words_.push_back(w);
    }

    // Running text: lowercase letter-only tokens, punctuation dropped.
    std::string token;
    const auto flush = [&] {
      if (!token.empty()) c.text_tokens_.push_back(token);
      token.clear();
    };
    for (char ch : sentences_text) {
      if (ch >= 'a' && ch <= 'z') token.push_back(ch);
      else if (ch >= 'A' && ch <= 'Z') token.push_back(static_cast<char>(ch - 'A' + 'a'));
      else if (ch == ' ' || ch == '\n' || ch == '\t' || ch == '\r') flush();
    }
    flush();

    std::map<std::string, std::vector<std::string>> by_signature;
    for (const auto& w : c.words_) by_signature[signature(w)].push_back(w);
    for (auto& [sig, members] : by_signature) {
      if (members.size() < 2) continue;
      std::sort(members.begin(), members.end());
      c.anagram_classes_.push_back(members);
    }
    return c;
  }

  static Corpus load(const std::filesystem::path& dir) {
    return from_text(read_file(dir / "words_en.txt"), read_file(dir / "sentences_en.txt"));
  }

  static std::string signature(std::string word) {
    std::sort(word.begin(), word.end());
    return word;
  }

  [[nodiscard]] const std::vector<std::string>& words() const { return words_; }
  [[nodiscard]] const std::vector<std::string>& text_tokens() const { return text_tokens_; }
  /// Sets of two or more words sharing a letter multiset, each sorted, in signature order.
  [[nodiscard]] const std::vector<std::vector<std::string>>& anagram_classes() const { return anagram_classes_; }
  [[nodiscard]] const std::string& words_hash() const { return words_hash_; }
  [[nodiscard]] const std::string& sentences_hash() const { return sentences_hash_; }

  [[nodiscard]] std::vector<std::string> words_with_length(std::size_t lo, std::size_t hi) const {
    std::vector<std::string> out;
    for (const auto& w : words_) {
      if (w.size() >= lo && w.size() <= hi) out.push_back(w);
    }
    return out;
  }

 private:
  static std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open corpus file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::vector<std::string> words_;
  std::vector<std::string> text_tokens_;
  std::vector<std::vector<std::string>> anagram_classes_;
  std::string words_hash_;
  std::string sentences_hash_;
};

}  // namespace polytask
