#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "subword/corpus.hpp"
#include "subword/error.hpp"
#include "subword/rng.hpp"
#include "subword/text_io.hpp"
#include "subword/token_seq.hpp"

namespace subword {

struct MergeRule {
  std::string left;
  std::string right;
  std::size_t priority = 0;  // 0 = learned first

  std::string merged() const { return left + right; }
  bool operator==(const MergeRule&) const = default;
};

namespace detail {

struct PairHash {
  std::size_t operator()(const std::pair<std::string, std::string>& p) const noexcept {
    const std::size_t h1 = std::hash<std::string>{}(p.first);
    const std::size_t h2 = std::hash<std::string>{}(p.second);
    return h1 ^ (h2 + 0x9E3779B97F4A7C15ULL + (h1 << 6) + (h1 >> 2));
  }
};

using PairRankMap = std::unordered_map<std::pair<std::string, std::string>, std::size_t, PairHash>;

// Merges every non-overlapping (left, right) occurrence, scanning left to right.
inline bool merge_all(std::vector<std::string>& symbols, const std::string& left,
                      const std::string& right) {
  bool changed = false;
  std::vector<std::string> out;
  out.reserve(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i + 1 < symbols.size() && symbols[i] == left && symbols[i + 1] == right) {
      out.push_back(left + right);
      ++i;
      changed = true;
    } else {
      out.push_back(std::move(symbols[i]));
    }
  }
  symbols = std::move(out);
  return changed;
}

}  // namespace detail

// Ordered merge table plus token vocabulary. Immutable once built.
class BpeModel {
 public:
  BpeModel() = default;

  // `alphabet` lists the initial symbols (characters and their end-of-word
  // variants); merge outputs are appended to the vocabulary in priority order.
  BpeModel(std::vector<std::string> alphabet, std::vector<MergeRule> merges,
           std::string eow_mark = std::string(kDefaultEowMark))
      : merges_(std::move(merges)), eow_mark_(std::move(eow_mark)) {
    for (auto& s : alphabet) add_token(std::move(s));
    for (std::size_t i = 0; i < merges_.size(); ++i) {
      merges_[i].priority = i;
      auto key = std::make_pair(merges_[i].left, merges_[i].right);
      ranks_.emplace(std::move(key), i);
      add_token(merges_[i].merged());
    }
  }

  const std::vector<MergeRule>& merges() const noexcept { return merges_; }
  // Vocabulary in dump order: alphabet first, then merge outputs.
  const std::vector<std::string>& vocab() const noexcept { return vocab_; }
  const std::string& eow_mark() const noexcept { return eow_mark_; }
  std::size_t vocab_size() const noexcept { return vocab_.size(); }

  bool contains(const std::string& token) const { return vocab_set_.count(token) != 0; }

  std::optional<std::size_t> rank(const std::string& left, const std::string& right) const {
    auto it = ranks_.find(std::make_pair(left, right));
    if (it == ranks_.end()) return std::nullopt;
    return it->second;
  }

  bool operator==(const BpeModel& other) const {
    return merges_ == other.merges_ && vocab_ == other.vocab_ && eow_mark_ == other.eow_mark_;
  }

 private:
  void add_token(std::string token) {
    if (vocab_set_.insert(token).second) vocab_.push_back(std::move(token));
  }

  std::vector<MergeRule> merges_;
  std::vector<std::string> vocab_;
  std::unordered_set<std::string> vocab_set_;
  detail::PairRankMap ranks_;
  std::string eow_mark_;
};

struct BpeTrainOptions {
  std::string eow_mark = std::string(kDefaultEowMark);
  // Pairs seen fewer times than this are never merged.
  std::uint64_t min_pair_frequency = 2;
};

// Weighted pair frequency observed when each merge was chosen.
struct BpeTrainingTrace {
  std::vector<std::uint64_t> merge_frequencies;
};

// Initial symbol set: every observed character, bare and with the end-of-word mark.
inline std::vector<std::string> bpe_alphabet(const WordCounts& counts, std::string_view eow_mark) {
  std::set<std::string> chars;
  for (const auto& [word, _] : counts) {
    for (auto& c : utf8::split_chars(word)) chars.insert(std::move(c));
  }
  std::vector<std::string> alphabet;
  for (const auto& c : chars) alphabet.push_back(c);
  if (!eow_mark.empty()) {
    for (const auto& c : chars) alphabet.push_back(c + std::string(eow_mark));
  }
  return alphabet;
}

// Greedy agglomerative training. Ties on pair frequency go to the
// lexicographically smallest (left, right).
inline BpeModel train_bpe(const WordCounts& counts, std::size_t target_vocab_size,
                          const BpeTrainOptions& options = {}, BpeTrainingTrace* trace = nullptr) {
  if (!options.eow_mark.empty()) {
    for (const auto& [word, _] : counts) {
      if (word.find(options.eow_mark) != std::string::npos) {
        throw config_error("word '" + word + "' contains the end-of-word mark '" +
                           options.eow_mark + "'");
      }
    }
  }
  std::vector<std::string> alphabet = bpe_alphabet(counts, options.eow_mark);
  if (target_vocab_size < alphabet.size()) {
    throw config_error("target vocabulary size " + std::to_string(target_vocab_size) +
                       " is below the character vocabulary; minimum is " +
                       std::to_string(alphabet.size()));
  }

  using Pair = std::pair<std::string, std::string>;
  std::vector<std::vector<std::string>> words;
  std::vector<std::uint64_t> freqs;
  for (const auto& [word, count] : counts) {
    words.push_back(word_symbols(word, options.eow_mark));
    freqs.push_back(count);
  }

  std::unordered_map<Pair, std::uint64_t, detail::PairHash> pair_counts;
  std::unordered_map<Pair, std::set<std::size_t>, detail::PairHash> where;
  // Ordered by (-count, left, right): begin() is the next merge.
  std::set<std::tuple<std::int64_t, std::string, std::string>> queue;

  auto adjust = [&](const Pair& p, std::int64_t delta) {
    auto& c = pair_counts[p];
    if (c > 0) queue.erase({-static_cast<std::int64_t>(c), p.first, p.second});
    c = static_cast<std::uint64_t>(static_cast<std::int64_t>(c) + delta);
    if (c > 0) {
      queue.insert({-static_cast<std::int64_t>(c), p.first, p.second});
    } else {
      pair_counts.erase(p);
    }
  };
  auto account = [&](std::size_t w, std::int64_t sign) {
    const auto& sym = words[w];
    for (std::size_t i = 0; i + 1 < sym.size(); ++i) {
      Pair p{sym[i], sym[i + 1]};
      if (sign > 0) where[p].insert(w);
      adjust(p, sign * static_cast<std::int64_t>(freqs[w]));
    }
  };
  for (std::size_t w = 0; w < words.size(); ++w) account(w, +1);

  std::unordered_set<std::string> vocab(alphabet.begin(), alphabet.end());
  std::vector<MergeRule> merges;
  while (vocab.size() < target_vocab_size && !queue.empty()) {
    const auto [neg_count, left, right] = *queue.begin();
    const auto count = static_cast<std::uint64_t>(-neg_count);
    if (count < options.min_pair_frequency) break;
    merges.push_back({left, right, merges.size()});
    if (trace) trace->merge_frequencies.push_back(count);
    vocab.insert(left + right);

    const Pair chosen{left, right};
    const std::set<std::size_t> affected = where[chosen];
    for (std::size_t w : affected) {
      account(w, -1);
      detail::merge_all(words[w], left, right);
      account(w, +1);
    }
    where.erase(chosen);
  }
  return BpeModel(std::move(alphabet), std::move(merges), options.eow_mark);
}

namespace detail {

inline TokenSeq finish_seq(const BpeModel& model, std::vector<std::string> symbols) {
  TokenSeq seq(std::move(symbols));
  for (std::size_t i = 0; i < seq.tokens.size(); ++i) seq.unknown[i] = !model.contains(seq.tokens[i]);
  return seq;
}

}  // namespace detail

// Deterministic segmentation: repeatedly applies the best-ranked applicable
// merge (leftmost occurrence on ties) until no merge applies.
inline TokenSeq encode(const BpeModel& model, std::string_view word) {
  std::vector<std::string> sym = word_symbols(word, model.eow_mark());
  while (sym.size() > 1) {
    std::size_t best_pos = 0;
    std::size_t best_rank = SIZE_MAX;
    for (std::size_t i = 0; i + 1 < sym.size(); ++i) {
      if (auto r = model.rank(sym[i], sym[i + 1]); r && *r < best_rank) {
        best_rank = *r;
        best_pos = i;
      }
    }
    if (best_rank == SIZE_MAX) break;
    sym[best_pos] += sym[best_pos + 1];
    sym.erase(sym.begin() + static_cast<std::ptrdiff_t>(best_pos) + 1);
  }
  return detail::finish_seq(model, std::move(sym));
}

inline void check_dropout_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw config_error("dropout probability must lie in [0, 1], got " + std::to_string(p));
  }
}

// BPE-dropout. Each step draws one uniform per candidate occurrence, left to
// right; a candidate is suppressed when its draw is below p. The best-ranked
// surviving candidate is merged. A step without survivors ends segmentation.
inline TokenSeq encode_dropout(const BpeModel& model, std::string_view word, double p, Rng& rng) {
  check_dropout_probability(p);
  std::vector<std::string> sym = word_symbols(word, model.eow_mark());
  std::vector<std::pair<std::size_t, std::size_t>> candidates;  // (position, rank)
  while (sym.size() > 1) {
    candidates.clear();
    for (std::size_t i = 0; i + 1 < sym.size(); ++i) {
      if (auto r = model.rank(sym[i], sym[i + 1])) candidates.emplace_back(i, *r);
    }
    if (candidates.empty()) break;
    std::size_t best_pos = 0;
    std::size_t best_rank = SIZE_MAX;
    for (const auto& [pos, r] : candidates) {
      const bool suppressed = rng.uniform() < p;
      if (!suppressed && r < best_rank) {
        best_rank = r;
        best_pos = pos;
      }
    }
    if (best_rank == SIZE_MAX) break;
    sym[best_pos] += sym[best_pos + 1];
    sym.erase(sym.begin() + static_cast<std::ptrdiff_t>(best_pos) + 1);
  }
  return detail::finish_seq(model, std::move(sym));
}

inline TokenSeq encode_words(const BpeModel& model, const std::vector<std::string>& words) {
  TokenSeq out;
  for (const auto& w : words) out.append(encode(model, w));
  return out;
}

inline std::string detokenize(const BpeModel& model, const TokenSeq& seq) {
  return detokenize(seq, model.eow_mark());
}

// ---------------------------------------------------------------------------
// Files. Merge table: header line, then "left right" per line in priority
// order. Vocabulary: one token per line in dump order.

inline std::string bpe_header(const std::string& eow_mark) {
  return "#subword-bpe v" + std::to_string(kModelFormatVersion) + " eow=" + eow_mark;
}

inline std::string dump_merges(const BpeModel& model) {
  std::string out = bpe_header(model.eow_mark()) + "\n";
  for (const auto& m : model.merges()) out += m.left + " " + m.right + "\n";
  return out;
}

inline std::string dump_vocab(const BpeModel& model) {
  std::string out;
  for (const auto& t : model.vocab()) out += t + "\n";
  return out;
}

inline BpeModel parse_bpe(const std::string& merges_text, const std::string& vocab_text) {
  std::string eow_mark;
  std::vector<MergeRule> merges;
  bool header_seen = false;
  for_each_line(merges_text, [&](std::string_view line, std::size_t, std::size_t line_no) {
    if (!header_seen) {
      const std::string prefix = "#subword-bpe v" + std::to_string(kModelFormatVersion) + " eow=";
      if (line.substr(0, prefix.size()) != prefix) {
        throw format_error("merge table: unsupported header '" + std::string(line) + "'");
      }
      eow_mark = std::string(line.substr(prefix.size()));
      header_seen = true;
      return;
    }
    const auto space = line.find(' ');
    if (space == std::string_view::npos || space == 0 || space + 1 == line.size() ||
        line.find(' ', space + 1) != std::string_view::npos) {
      throw format_error("merge table line " + std::to_string(line_no) + ": expected 'left right'");
    }
    merges.push_back({std::string(line.substr(0, space)), std::string(line.substr(space + 1)),
                      merges.size()});
  });
  if (!header_seen) throw format_error("merge table: missing header");

  std::vector<std::string> vocab;
  for_each_line(vocab_text, [&](std::string_view line, std::size_t, std::size_t) {
    vocab.emplace_back(line);
  });
  std::unordered_set<std::string> merged_outputs;
  for (const auto& m : merges) merged_outputs.insert(m.merged());
  std::vector<std::string> alphabet;
  for (const auto& t : vocab) {
    if (!merged_outputs.count(t)) alphabet.push_back(t);
  }
  BpeModel model(std::move(alphabet), std::move(merges), eow_mark);
  if (model.vocab() != vocab) {
    throw format_error("vocabulary file does not match the merge table");
  }
  return model;
}

inline std::string bpe_vocab_path(const std::string& merges_path) { return merges_path + ".vocab"; }

inline void save_bpe(const BpeModel& model, const std::string& merges_path) {
  write_file_atomic(merges_path, dump_merges(model));
  write_file_atomic(bpe_vocab_path(merges_path), dump_vocab(model));
}

inline BpeModel load_bpe(const std::string& merges_path) {
  return parse_bpe(read_file(merges_path), read_file(bpe_vocab_path(merges_path)));
}

}  // namespace subword
