#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "subword/error.hpp"
#include "subword/text_io.hpp"
#include "subword/utf8.hpp"

namespace subword {

enum class NormalizationForm { none, nfc, nfd, nfkc, nfkd };
enum class CasePolicy { preserve, lower, fold };

struct NormalizationConfig {
  NormalizationForm form = NormalizationForm::nfc;
  CasePolicy case_policy = CasePolicy::preserve;
};

struct IngestOptions {
  NormalizationConfig normalization;
  // Lines carry a leading "id<TAB>".
  bool id_mode = false;
  // Drop utterances longer than this many characters (after normalization).
  std::optional<std::size_t> max_chars;
};

struct Utterance {
  std::string id;
  std::vector<std::string> words;

  bool operator==(const Utterance&) const = default;
};

struct Corpus {
  std::vector<Utterance> utterances;
  // FNV-1a over the canonical dump; equal corpora have equal digests.
  std::string digest;

  std::size_t size() const noexcept { return utterances.size(); }
  bool empty() const noexcept { return utterances.empty(); }

  std::size_t total_words() const noexcept {
    std::size_t n = 0;
    for (const auto& u : utterances) n += u.words.size();
    return n;
  }

  bool operator==(const Corpus& other) const { return utterances == other.utterances; }
};

inline std::string normalize_text(std::string_view text, const NormalizationConfig& config) {
  if (config.form == NormalizationForm::none && config.case_policy == CasePolicy::preserve) {
    return std::string(text);
  }
  icu::UnicodeString us =
      icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = nullptr;
  switch (config.form) {
    case NormalizationForm::none: break;
    case NormalizationForm::nfc: normalizer = icu::Normalizer2::getNFCInstance(status); break;
    case NormalizationForm::nfd: normalizer = icu::Normalizer2::getNFDInstance(status); break;
    case NormalizationForm::nfkc: normalizer = icu::Normalizer2::getNFKCInstance(status); break;
    case NormalizationForm::nfkd: normalizer = icu::Normalizer2::getNFKDInstance(status); break;
  }
  if (U_FAILURE(status)) throw error("unicode normalizer unavailable");
  auto apply = [&](const icu::UnicodeString& in) {
    if (normalizer == nullptr) return in;
    icu::UnicodeString out = normalizer->normalize(in, status);
    if (U_FAILURE(status)) throw error("unicode normalization failed");
    return out;
  };
  us = apply(us);
  if (config.case_policy != CasePolicy::preserve) {
    if (config.case_policy == CasePolicy::lower) {
      us.toLower(icu::Locale::getRoot());
    } else {
      us.foldCase();
    }
    // Case mapping can leave the string outside the requested form.
    us = apply(us);
  }
  std::string out;
  us.toUTF8String(out);
  return out;
}

inline bool is_unicode_space(char32_t cp) noexcept {
  return u_isUWhiteSpace(static_cast<UChar32>(cp)) != 0;
}

// Splits valid UTF-8 on unicode whitespace.
inline std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    const char32_t cp = utf8::decode_one(text, pos);
    if (is_unicode_space(cp)) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current.append(text.substr(start, pos - start));
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

inline std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Canonical dump: one line per utterance, words joined by a single space,
// "id<TAB>" prefix in id mode. Ingesting the dump reproduces the corpus.
inline std::string serialize(const Corpus& corpus, bool id_mode = false) {
  std::string out;
  for (const auto& u : corpus.utterances) {
    if (id_mode) {
      out += u.id;
      out += '\t';
    }
    for (std::size_t i = 0; i < u.words.size(); ++i) {
      if (i) out += ' ';
      out += u.words[i];
    }
    out += '\n';
  }
  return out;
}

inline Corpus ingest(std::string_view text, const IngestOptions& options = {}) {
  utf8::validate(text);
  Corpus corpus;
  const std::string owned(text);
  for_each_line(owned, [&](std::string_view line, std::size_t, std::size_t line_no) {
    Utterance u;
    if (options.id_mode) {
      const auto tab = line.find('\t');
      if (tab == std::string_view::npos) {
        throw format_error("line " + std::to_string(line_no) + ": missing id<TAB> prefix");
      }
      u.id = std::string(line.substr(0, tab));
      line = line.substr(tab + 1);
    } else {
      u.id = std::to_string(line_no);
    }
    const std::string normalized = normalize_text(line, options.normalization);
    if (options.max_chars && utf8::length(normalized) > *options.max_chars) return;
    u.words = split_words(normalized);
    corpus.utterances.push_back(std::move(u));
  });
  corpus.digest = fnv1a_hex(serialize(corpus, true));
  return corpus;
}

inline Corpus ingest(std::istream& in, const IngestOptions& options = {}) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return ingest(text, options);
}

inline Corpus ingest_file(const std::string& path, const IngestOptions& options = {}) {
  return ingest(read_file(path), options);
}

// Word types with frequencies, ordered by descending count, ties lexicographic.
class WordCounts {
 public:
  WordCounts() = default;

  explicit WordCounts(const std::map<std::string, std::uint64_t>& counts) {
    for (const auto& [word, count] : counts) {
      if (count == 0) continue;
      entries_.emplace_back(word, count);
      total_ += count;
    }
    std::stable_sort(entries_.begin(), entries_.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (std::size_t i = 0; i < entries_.size(); ++i) index_.emplace(entries_[i].first, i);
  }

  const std::vector<std::pair<std::string, std::uint64_t>>& entries() const noexcept {
    return entries_;
  }

  std::uint64_t count(const std::string& word) const {
    auto it = index_.find(word);
    return it == index_.end() ? 0 : entries_[it->second].second;
  }

  std::uint64_t total() const noexcept { return total_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool operator==(const WordCounts& other) const { return entries_ == other.entries_; }

 private:
  std::vector<std::pair<std::string, std::uint64_t>> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  std::uint64_t total_ = 0;
};

inline WordCounts word_counts(const Corpus& corpus) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& u : corpus.utterances) {
    for (const auto& w : u.words) ++counts[w];
  }
  return WordCounts(counts);
}

inline std::set<std::string> train_word_set(const Corpus& corpus) {
  std::set<std::string> words;
  for (const auto& u : corpus.utterances) words.insert(u.words.begin(), u.words.end());
  return words;
}

}  // namespace subword
