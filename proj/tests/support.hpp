#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "subword/subword.hpp"

#ifndef SUBWORD_TEST_DATA
#define SUBWORD_TEST_DATA "tests/data"
#endif

namespace testing_support {

inline std::string data_path(const std::string& name) { return std::string(SUBWORD_TEST_DATA) + "/" + name; }

inline const subword::Corpus& open_corpus() {
  static const subword::Corpus c = subword::ingest_file(data_path("open_corpus.txt"));
  return c;
}

// First `n` word tokens of the open corpus, in order.
inline std::vector<std::string> open_words(std::size_t n) {
  std::vector<std::string> out;
  for (const auto& u : open_corpus().utterances) {
    for (const auto& w : u.words) {
      if (out.size() == n) return out;
      out.push_back(w);
    }
  }
  return out;
}

inline const subword::BpeModel& open_bpe(std::size_t vocab = 1000) {
  static std::map<std::size_t, subword::BpeModel> cache;
  auto it = cache.find(vocab);
  if (it == cache.end()) {
    it = cache.emplace(vocab, subword::train_bpe(subword::word_counts(open_corpus()), vocab)).first;
  }
  return it->second;
}

inline const subword::UnigramModel& open_ulm() {
  static const subword::UnigramModel m = subword::train_ulm(subword::word_counts(open_corpus()), 1000);
  return m;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("subword-test-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline subword::WordCounts counts_of(const std::map<std::string, std::uint64_t>& m) {
  return subword::WordCounts(m);
}

}  // namespace testing_support
