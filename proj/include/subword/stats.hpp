#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "subword/augment.hpp"
#include "subword/bpe.hpp"
#include "subword/corpus.hpp"
#include "subword/error.hpp"
#include "subword/token_seq.hpp"

namespace subword {

// Token occurrence statistics accumulated over simulated epochs. Context words
// are kept sparsely: each token stores the ids of the word types it appeared in.
struct TokenStats {
  struct Entry {
    std::uint64_t count = 0;
    std::unordered_set<std::uint32_t> words;
  };

  std::unordered_map<std::string, Entry> tokens;
  std::map<std::size_t, std::uint64_t> length_buckets;  // length without eow mark
  std::uint64_t total_occurrences = 0;
  std::size_t epochs = 0;
  std::size_t word_types = 0;
  std::string eow_mark;
  std::string config;  // fingerprint of the generating configuration

  std::uint64_t count(const std::string& token) const {
    auto it = tokens.find(token);
    return it == tokens.end() ? 0 : it->second.count;
  }

  std::size_t unique_words(const std::string& token) const {
    auto it = tokens.find(token);
    return it == tokens.end() ? 0 : it->second.words.size();
  }

  void add(const std::string& token, std::uint32_t word_id, std::uint64_t n = 1) {
    auto& e = tokens[token];
    e.count += n;
    e.words.insert(word_id);
    length_buckets[token_length(token, eow_mark)] += n;
    total_occurrences += n;
  }

  void merge(const TokenStats& other) {
    for (const auto& [tok, e] : other.tokens) {
      auto& mine = tokens[tok];
      mine.count += e.count;
      mine.words.insert(e.words.begin(), e.words.end());
    }
    for (const auto& [len, n] : other.length_buckets) length_buckets[len] += n;
    total_occurrences += other.total_occurrences;
  }
};

// Runs epochs 1..n_epochs of the augmentation stream and accumulates token
// counts, context word sets and the length histogram. Epochs run on up to
// `threads` workers; the result does not depend on the thread count.
inline TokenStats simulate_epochs(const Corpus& corpus, const SubwordModel& model,
                                  const AugmentConfig& config, std::size_t n_epochs,
                                  std::size_t threads = 1) {
  if (n_epochs < 1) throw config_error("at least one epoch is required");
  config.validate(model);

  std::unordered_map<std::string, std::uint32_t> word_ids;
  {
    const auto counts = word_counts(corpus);
    for (const auto& [w, _] : counts) word_ids.emplace(w, static_cast<std::uint32_t>(word_ids.size()));
  }

  TokenStats total;
  total.eow_mark = eow_mark(model);
  total.epochs = n_epochs;
  total.word_types = word_ids.size();
  total.config = config.fingerprint();

  std::mutex mu;
  parallel_for(n_epochs, threads, [&](std::size_t e) {
    TokenStats local;
    local.eow_mark = total.eow_mark;
    const std::uint64_t epoch = e + 1;
    for (std::size_t ord = 0; ord < corpus.size(); ++ord) {
      Rng rng(derive_seed(config.seed, epoch, ord));
      for (const auto& w : corpus.utterances[ord].words) {
        const auto seq = tokenize_word(model, config, w, rng);
        const std::uint32_t wid = word_ids.at(w);
        for (const auto& t : seq.tokens) local.add(t, wid);
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    total.merge(local);
  });
  return total;
}

// Percentage of token occurrences whose length (without eow mark) is <= max_len.
inline double short_token_share(const TokenStats& stats, std::size_t max_len) {
  if (max_len < 1) throw config_error("max_len must be at least 1");
  if (stats.total_occurrences == 0) throw error("short-token share of empty statistics is undefined");
  std::uint64_t n = 0;
  for (const auto& [len, c] : stats.length_buckets) {
    if (len <= max_len) n += c;
  }
  return 100.0 * static_cast<double>(n) / static_cast<double>(stats.total_occurrences);
}

inline std::map<std::size_t, std::uint64_t> length_histogram(const TokenStats& stats) {
  return stats.length_buckets;
}

struct OovLengthProfile {
  std::map<std::size_t, std::uint64_t> lengths;
  std::uint64_t total_tokens = 0;
  std::uint64_t words = 0;  // tp occurrences re-encoded

  bool empty() const noexcept { return total_tokens == 0; }

  // Share (percent) of tokens with length 1..3.
  double short_share_percent() const {
    if (total_tokens == 0) return 0.0;
    std::uint64_t n = 0;
    for (const auto& [len, c] : lengths) {
      if (len >= 1 && len <= 3) n += c;
    }
    return 100.0 * static_cast<double>(n) / static_cast<double>(total_tokens);
  }
};

// Re-encodes every correctly emitted OOV word (weighted by its tp count)
// with the deterministic model and buckets the token lengths.
inline OovLengthProfile oov_token_length_profile(const BpeModel& model,
                                                 const std::map<std::string, std::uint64_t>& tp_words) {
  OovLengthProfile prof;
  for (const auto& [word, n] : tp_words) {
    const auto seq = encode(model, word);
    prof.words += n;
    for (const auto& t : seq.tokens) {
      prof.lengths[token_length(t, model.eow_mark())] += n;
      prof.total_tokens += n;
    }
  }
  return prof;
}

// ---------------------------------------------------------------------------
// CSV reports: a "# config:" fingerprint line, a header row, then data.

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct StatsRow {
  std::string token;
  std::size_t length = 0;
  std::uint64_t count = 0;
  std::size_t unique_words = 0;
};

// Tokens ordered by descending count, ties lexicographic.
inline std::vector<StatsRow> ranked_rows(const TokenStats& stats) {
  std::vector<StatsRow> rows;
  for (const auto& [tok, e] : stats.tokens) {
    rows.push_back({tok, token_length(tok, stats.eow_mark), e.count, e.words.size()});
  }
  std::sort(rows.begin(), rows.end(), [](const StatsRow& a, const StatsRow& b) {
    return a.count != b.count ? a.count > b.count : a.token < b.token;
  });
  return rows;
}

inline std::string stats_fingerprint(const TokenStats& stats, const std::string& corpus_digest) {
  return "# config: " + stats.config + " epochs=" + std::to_string(stats.epochs) +
         " corpus=" + corpus_digest + "\n";
}

inline std::string freq_rank_csv(const TokenStats& stats, const std::string& corpus_digest) {
  std::string out = stats_fingerprint(stats, corpus_digest) + "rank,token,length,count,unique_words\n";
  std::size_t rank = 1;
  for (const auto& r : ranked_rows(stats)) {
    out += std::to_string(rank++) + "," + csv_field(r.token) + "," + std::to_string(r.length) + "," +
           std::to_string(r.count) + "," + std::to_string(r.unique_words) + "\n";
  }
  return out;
}

inline std::string context_scatter_csv(const TokenStats& stats, const std::string& corpus_digest) {
  auto rows = ranked_rows(stats);
  std::sort(rows.begin(), rows.end(), [](const StatsRow& a, const StatsRow& b) { return a.token < b.token; });
  std::string out = stats_fingerprint(stats, corpus_digest) + "token,length,count,unique_words\n";
  for (const auto& r : rows) {
    out += csv_field(r.token) + "," + std::to_string(r.length) + "," + std::to_string(r.count) + "," +
           std::to_string(r.unique_words) + "\n";
  }
  return out;
}

inline std::string length_hist_csv(const std::map<std::size_t, std::uint64_t>& hist,
                                   const std::string& fingerprint_line) {
  std::string out = fingerprint_line + "length,count\n";
  for (const auto& [len, c] : hist) out += std::to_string(len) + "," + std::to_string(c) + "\n";
  return out;
}

}  // namespace subword
