#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "subword/corpus.hpp"
#include "subword/error.hpp"
#include "subword/rng.hpp"
#include "subword/text_io.hpp"
#include "subword/token_seq.hpp"

namespace subword {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double log_add(double a, double b) noexcept {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

// Splits a piece into lattice symbols; a trailing end-of-word mark stays glued
// to the last character.
inline std::vector<std::string> piece_symbols(std::string_view piece, std::string_view eow_mark) {
  bool marked = !eow_mark.empty() && ends_with(piece, eow_mark) && piece.size() > eow_mark.size();
  if (marked) piece.remove_suffix(eow_mark.size());
  auto symbols = utf8::split_chars(piece);
  if (marked && !symbols.empty()) symbols.back() += eow_mark;
  return symbols;
}

// Piece -> log-probability map. Immutable once built.
class UnigramModel {
 public:
  UnigramModel() = default;

  UnigramModel(const std::vector<std::pair<std::string, double>>& log_probs, std::string eow_mark)
      : eow_mark_(std::move(eow_mark)) {
    for (const auto& [piece, lp] : log_probs) {
      if (piece.empty()) throw config_error("empty piece in unigram model");
      const auto parts = split_words(piece);
      if (parts.size() != 1 || parts.front() != piece) {
        throw config_error("piece '" + piece + "' contains whitespace");
      }
      if (!pieces_.emplace(piece, lp).second) throw config_error("duplicate piece '" + piece + "'");
      const auto symbols = piece_symbols(piece, eow_mark_);
      max_symbols_ = std::max(max_symbols_, symbols.size());
      if (symbols.size() == 1) required_.insert(piece);
      min_logprob_ = std::min(min_logprob_, lp);
    }
    ordered_ = log_probs;
    std::sort(ordered_.begin(), ordered_.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
  }

  static UnigramModel from_probabilities(const std::map<std::string, double>& probs,
                                         std::string eow_mark = "") {
    std::vector<std::pair<std::string, double>> lps;
    for (const auto& [piece, p] : probs) lps.emplace_back(piece, std::log(p));
    return UnigramModel(lps, std::move(eow_mark));
  }

  std::optional<double> logprob(const std::string& piece) const {
    auto it = pieces_.find(piece);
    if (it == pieces_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const std::string& piece) const { return pieces_.count(piece) != 0; }

  // Pieces in dump order: descending probability, ties lexicographic.
  const std::vector<std::pair<std::string, double>>& pieces() const noexcept { return ordered_; }
  const std::set<std::string>& required_chars() const noexcept { return required_; }
  const std::string& eow_mark() const noexcept { return eow_mark_; }
  std::size_t size() const noexcept { return ordered_.size(); }
  std::size_t max_piece_symbols() const noexcept { return max_symbols_; }
  double min_logprob() const noexcept { return min_logprob_; }

  double total_probability() const {
    double s = 0.0;
    for (const auto& [_, lp] : ordered_) s += std::exp(lp);
    return s;
  }

  bool operator==(const UnigramModel& other) const {
    return ordered_ == other.ordered_ && eow_mark_ == other.eow_mark_;
  }

 private:
  std::unordered_map<std::string, double> pieces_;
  std::vector<std::pair<std::string, double>> ordered_;
  std::set<std::string> required_;
  std::string eow_mark_;
  std::size_t max_symbols_ = 0;
  double min_logprob_ = 0.0;
};

// Score given to out-of-vocabulary single symbols, relative to the rarest piece.
inline constexpr double kUnknownPenalty = 10.0;

// Segmentation lattice over the symbols of one word. Node k spans symbols
// [begin, end).
class SegLattice {
 public:
  struct Node {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string piece;
    double logprob = 0.0;
    bool unknown = false;
  };

  SegLattice(const UnigramModel& model, const std::vector<std::string>& symbols)
      : size_(symbols.size()), ending_(symbols.size() + 1), starting_(symbols.size() + 1) {
    const std::size_t max_len = std::max<std::size_t>(1, model.max_piece_symbols());
    for (std::size_t b = 0; b < size_; ++b) {
      std::string piece;
      bool single_found = false;
      for (std::size_t e = b + 1; e <= std::min(size_, b + max_len); ++e) {
        piece += symbols[e - 1];
        if (auto lp = model.logprob(piece)) {
          add({b, e, piece, *lp, false});
          if (e == b + 1) single_found = true;
        }
      }
      if (!single_found) {
        add({b, b + 1, symbols[b], model.min_logprob() - kUnknownPenalty, true});
      }
    }
  }

  SegLattice(const UnigramModel& model, std::string_view word)
      : SegLattice(model, word_symbols(word, model.eow_mark())) {}

  std::size_t size() const noexcept { return size_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(std::size_t k) const { return nodes_[k]; }
  // Indices of nodes whose span ends at `pos`.
  const std::vector<std::size_t>& ending_at(std::size_t pos) const { return ending_[pos]; }

  // Log of the summed tempered path mass reaching each position:
  // forward[j] = log sum over paths to j of prod P(piece)^alpha.
  std::vector<double> forward(double alpha = 1.0) const {
    std::vector<double> f(size_ + 1, kNegInf);
    f[0] = 0.0;
    for (std::size_t j = 1; j <= size_; ++j) {
      for (std::size_t k : ending_[j]) {
        const Node& n = nodes_[k];
        if (f[n.begin] == kNegInf) continue;
        f[j] = log_add(f[j], f[n.begin] + alpha * n.logprob);
      }
    }
    return f;
  }

  std::vector<double> backward(double alpha = 1.0) const {
    std::vector<double> g(size_ + 1, kNegInf);
    g[size_] = 0.0;
    for (std::size_t j = size_; j-- > 0;) {
      for (std::size_t k : starting_[j]) {
        const Node& n = nodes_[k];
        if (g[n.end] == kNegInf) continue;
        g[j] = log_add(g[j], g[n.end] + alpha * n.logprob);
      }
    }
    return g;
  }

  TokenSeq to_seq(const std::vector<std::size_t>& path) const {
    TokenSeq seq;
    for (std::size_t k : path) {
      seq.tokens.push_back(nodes_[k].piece);
      seq.unknown.push_back(nodes_[k].unknown);
    }
    return seq;
  }

 private:
  void add(Node n) {
    ending_[n.end].push_back(nodes_.size());
    starting_[n.begin].push_back(nodes_.size());
    nodes_.push_back(std::move(n));
  }

  std::size_t size_;
  std::vector<Node> nodes_;
  std::vector<std::vector<std::size_t>> ending_;
  std::vector<std::vector<std::size_t>> starting_;
};

struct ScoredSeq {
  TokenSeq seq;
  double logprob = 0.0;
};

namespace detail {

struct Hyp {
  double score = 0.0;
  std::vector<std::size_t> path;
};

// Higher score first, then fewer tokens, then lexicographic on token strings.
inline bool hyp_better(const SegLattice& lat, const Hyp& a, const Hyp& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.path.size() != b.path.size()) return a.path.size() < b.path.size();
  return std::lexicographical_compare(
      a.path.begin(), a.path.end(), b.path.begin(), b.path.end(),
      [&](std::size_t x, std::size_t y) { return lat.node(x).piece < lat.node(y).piece; });
}

// k-best paths ending at every position; exact because the top-k paths to j
// extend top-k paths to each predecessor.
inline std::vector<Hyp> kbest(const SegLattice& lat, std::size_t k) {
  std::vector<std::vector<Hyp>> best(lat.size() + 1);
  best[0].push_back({0.0, {}});
  for (std::size_t j = 1; j <= lat.size(); ++j) {
    std::vector<Hyp> cands;
    for (std::size_t idx : lat.ending_at(j)) {
      const auto& n = lat.node(idx);
      for (const Hyp& h : best[n.begin]) {
        Hyp ext{h.score + n.logprob, h.path};
        ext.path.push_back(idx);
        cands.push_back(std::move(ext));
      }
    }
    std::sort(cands.begin(), cands.end(),
              [&](const Hyp& a, const Hyp& b) { return hyp_better(lat, a, b); });
    if (cands.size() > k) cands.resize(k);
    best[j] = std::move(cands);
  }
  return std::move(best[lat.size()]);
}

inline std::vector<ScoredSeq> to_scored(const SegLattice& lat, const std::vector<Hyp>& hyps) {
  std::vector<ScoredSeq> out;
  for (const auto& h : hyps) out.push_back({lat.to_seq(h.path), h.score});
  return out;
}

}  // namespace detail

// Most probable segmentation; ties go to fewer tokens, then lexicographic.
// Symbols absent from the model become single unknown-flagged tokens.
inline ScoredSeq viterbi_scored(const UnigramModel& model, std::string_view word) {
  if (word.empty()) return {};
  SegLattice lat(model, word);
  auto hyps = detail::kbest(lat, 1);
  return {lat.to_seq(hyps.front().path), hyps.front().score};
}

inline TokenSeq viterbi(const UnigramModel& model, std::string_view word) {
  return viterbi_scored(model, word).seq;
}

inline std::vector<ScoredSeq> nbest(const UnigramModel& model, std::string_view word, std::size_t n) {
  if (n == 0) throw config_error("n-best size must be at least 1");
  if (word.empty()) return {ScoredSeq{}};
  SegLattice lat(model, word);
  return detail::to_scored(lat, detail::kbest(lat, n));
}

struct SamplingConfig {
  double alpha = 0.1;
  std::optional<std::size_t> l;  // nullopt = infinity (whole lattice)

  void validate() const {
    if (!(alpha >= 0.0) || std::isinf(alpha)) {
      throw config_error("alpha must be a finite non-negative number");
    }
    if (l && *l < 1) throw config_error("l must be at least 1");
  }
};

// Draws a segmentation from P(x)^alpha / sum P(x')^alpha. Finite l draws over
// the l-best list; infinite l runs forward filtering and backward sampling on
// the full lattice, tempering each piece log-probability by alpha.
inline TokenSeq sample_segmentation(const UnigramModel& model, std::string_view word,
                                    const SamplingConfig& config, Rng& rng) {
  config.validate();
  if (word.empty()) return {};
  SegLattice lat(model, word);
  if (config.l) {
    const auto hyps = detail::kbest(lat, *config.l);
    double z = kNegInf;
    for (const auto& h : hyps) z = log_add(z, config.alpha * h.score);
    const double u = rng.uniform();
    double acc = 0.0;
    for (const auto& h : hyps) {
      acc += std::exp(config.alpha * h.score - z);
      if (u < acc) return lat.to_seq(h.path);
    }
    return lat.to_seq(hyps.back().path);
  }

  const auto f = lat.forward(config.alpha);
  std::vector<std::size_t> path;
  std::size_t pos = lat.size();
  while (pos > 0) {
    const auto& ending = lat.ending_at(pos);
    const double u = rng.uniform();
    double acc = 0.0;
    std::size_t chosen = ending.back();
    for (std::size_t k : ending) {
      const auto& n = lat.node(k);
      acc += std::exp(f[n.begin] + config.alpha * n.logprob - f[pos]);
      if (u < acc) {
        chosen = k;
        break;
      }
    }
    // Guard against rounding in the cumulative sum picking an unreachable node.
    while (f[lat.node(chosen).begin] == kNegInf) {
      auto it = std::find(ending.begin(), ending.end(), chosen);
      chosen = *(--it);
    }
    path.push_back(chosen);
    pos = lat.node(chosen).begin;
  }
  std::reverse(path.begin(), path.end());
  return lat.to_seq(path);
}

inline double seq_logprob(const UnigramModel& model, const TokenSeq& seq) {
  double s = 0.0;
  for (const auto& t : seq.tokens) {
    auto lp = model.logprob(t);
    if (!lp) throw unknown_token_error(t);
    s += *lp;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Training

struct SeedPiece {
  std::string piece;
  std::uint64_t count = 0;  // corpus occurrences, weighted by word frequency
  double score = 0.0;       // count x length
};

struct UlmTrainOptions {
  std::string eow_mark = std::string(kDefaultEowMark);
  std::size_t max_piece_len = 16;
  std::size_t max_seed_size = 1000000;
  double shrink_factor = 0.75;
  std::size_t em_subiters = 2;
};

// All substrings up to max_piece_len symbols, ranked by count x length and
// truncated to max_seed_size. Single symbols are always kept.
inline std::vector<SeedPiece> seed_candidates(const WordCounts& counts, std::size_t max_piece_len,
                                              std::size_t max_seed_size,
                                              std::string_view eow_mark = kDefaultEowMark) {
  if (max_piece_len < 1) throw config_error("max piece length must be at least 1");
  std::map<std::string, std::pair<std::uint64_t, std::size_t>> found;  // piece -> (count, length)
  for (const auto& [word, freq] : counts) {
    const auto sym = word_symbols(word, eow_mark);
    for (std::size_t b = 0; b < sym.size(); ++b) {
      std::string piece;
      for (std::size_t e = b + 1; e <= std::min(sym.size(), b + max_piece_len); ++e) {
        piece += sym[e - 1];
        auto& entry = found[piece];
        entry.first += freq;
        entry.second = e - b;
      }
    }
  }
  std::vector<SeedPiece> chars;
  std::vector<SeedPiece> longer;
  for (const auto& [piece, cl] : found) {
    SeedPiece sp{piece, cl.first, static_cast<double>(cl.first) * static_cast<double>(cl.second)};
    (cl.second == 1 ? chars : longer).push_back(std::move(sp));
  }
  auto by_score = [](const SeedPiece& a, const SeedPiece& b) {
    return a.score != b.score ? a.score > b.score : a.piece < b.piece;
  };
  std::sort(longer.begin(), longer.end(), by_score);
  const std::size_t room = max_seed_size > chars.size() ? max_seed_size - chars.size() : 0;
  if (longer.size() > room) longer.resize(room);
  std::vector<SeedPiece> out = std::move(chars);
  out.insert(out.end(), longer.begin(), longer.end());
  std::sort(out.begin(), out.end(), by_score);
  return out;
}

inline UnigramModel seed_model(const std::vector<SeedPiece>& seeds, std::string eow_mark) {
  double total = 0.0;
  for (const auto& s : seeds) total += s.score;
  std::vector<std::pair<std::string, double>> lps;
  for (const auto& s : seeds) lps.emplace_back(s.piece, std::log(s.score / total));
  return UnigramModel(lps, std::move(eow_mark));
}

struct EStepResult {
  std::map<std::string, double> expected_counts;
  double log_likelihood = 0.0;
};

// Expected piece counts under the posterior over segmentations, weighted by
// word frequency, plus the corpus log-likelihood.
inline EStepResult e_step(const UnigramModel& model, const WordCounts& counts) {
  EStepResult r;
  for (const auto& [p, _] : model.pieces()) r.expected_counts[p] = 0.0;
  for (const auto& [word, freq] : counts) {
    SegLattice lat(model, word);
    const auto f = lat.forward();
    const auto g = lat.backward();
    const double z = f[lat.size()];
    if (z == kNegInf) throw infeasible_error("word '" + word + "' has no segmentation");
    r.log_likelihood += static_cast<double>(freq) * z;
    for (const auto& n : lat.nodes()) {
      if (n.unknown) continue;
      const double post = std::exp(f[n.begin] + n.logprob + g[n.end] - z);
      r.expected_counts[n.piece] += static_cast<double>(freq) * post;
    }
  }
  return r;
}

// Maximum-likelihood re-estimate. Non-required pieces with zero expected count
// are dropped; required characters are floored at the smallest positive double.
inline UnigramModel m_step(const UnigramModel& model, const EStepResult& e) {
  double total = 0.0;
  for (const auto& [_, c] : e.expected_counts) total += c;
  std::vector<std::pair<std::string, double>> lps;
  for (const auto& [piece, c] : e.expected_counts) {
    const bool required = model.required_chars().count(piece) != 0;
    if (c <= 0.0 && !required) continue;
    const double p = std::max(c / total, std::numeric_limits<double>::min());
    lps.emplace_back(piece, std::log(p));
  }
  return UnigramModel(lps, model.eow_mark());
}

struct EmPassRecord {
  std::size_t round = 0;       // pruning round; EM passes in one round share a piece set
  std::size_t vocab_size = 0;
  double log_likelihood = 0.0;  // of the parameters entering this pass
};

struct UlmTrainingTrace {
  std::vector<EmPassRecord> passes;
};

namespace detail {

// Loss of removing each non-required piece: the corpus likelihood drop when
// its occurrences are replaced by its best alternative segmentation.
inline std::vector<std::pair<std::string, double>> pruning_losses(const UnigramModel& model,
                                                                  const WordCounts& counts) {
  std::unordered_map<std::string, double> freq;
  std::unordered_map<std::string, double> inverted;
  double vsum = 0.0;
  for (const auto& [word, wf] : counts) {
    vsum += static_cast<double>(wf);
    const auto seq = viterbi(model, word);
    std::set<std::string> seen;
    for (const auto& t : seq.tokens) {
      freq[t] += static_cast<double>(wf);
      if (seen.insert(t).second) inverted[t] += static_cast<double>(wf);
    }
  }
  double sum = 0.0;
  for (const auto& [_, f] : freq) sum += f;
  const double logsum = std::log(sum);

  std::vector<std::pair<std::string, double>> losses;
  for (const auto& [piece, lp] : model.pieces()) {
    if (model.required_chars().count(piece)) continue;
    const double f = freq.count(piece) ? freq[piece] : 0.0;
    if (f == 0.0) {
      losses.emplace_back(piece, 0.0);
      continue;
    }
    // Best segmentation of the piece that does not use the piece itself.
    SegLattice lat(model, piece_symbols(piece, model.eow_mark()));
    const auto hyps = kbest(lat, 2);
    const Hyp* alt = nullptr;
    for (const auto& h : hyps) {
      if (!(h.path.size() == 1 && lat.node(h.path[0]).piece == piece)) {
        alt = &h;
        break;
      }
    }
    if (alt == nullptr) {
      losses.emplace_back(piece, std::numeric_limits<double>::infinity());
      continue;
    }
    const double logprob_sp = std::log(f) - logsum;
    const double logsum_alt = std::log(sum + f * static_cast<double>(alt->path.size() - 1));
    double logprob_alt = 0.0;
    for (std::size_t k : alt->path) {
      const auto& t = lat.node(k).piece;
      const double ft = freq.count(t) ? freq[t] : 0.0;
      logprob_alt += std::log(ft + f) - logsum_alt;
    }
    const double share = inverted[piece] / vsum;
    losses.emplace_back(piece, share * (logprob_sp - logprob_alt));
  }
  return losses;
}

inline bool all_segmentable(const UnigramModel& model, const WordCounts& counts) {
  for (const auto& [word, _] : counts) {
    SegLattice lat(model, word);
    for (const auto& n : lat.nodes()) {
      if (n.unknown) return false;
    }
  }
  return true;
}

}  // namespace detail

inline UnigramModel train_ulm(const WordCounts& counts, std::size_t target_vocab_size,
                              const UlmTrainOptions& options = {}, UlmTrainingTrace* trace = nullptr) {
  if (!(options.shrink_factor > 0.0 && options.shrink_factor < 1.0)) {
    throw config_error("shrink factor must lie in (0, 1)");
  }
  if (options.em_subiters < 1) throw config_error("at least one EM sub-iteration is required");
  if (!options.eow_mark.empty()) {
    for (const auto& [word, _] : counts) {
      if (word.find(options.eow_mark) != std::string::npos) {
        throw config_error("word '" + word + "' contains the end-of-word mark");
      }
    }
  }
  const auto seeds = seed_candidates(counts, options.max_piece_len, options.max_seed_size,
                                     options.eow_mark);
  if (seeds.empty()) throw infeasible_error("cannot train a unigram model on an empty corpus");
  UnigramModel model = seed_model(seeds, options.eow_mark);
  if (target_vocab_size < model.required_chars().size()) {
    throw config_error("target vocabulary size " + std::to_string(target_vocab_size) +
                       " is below the character vocabulary; minimum is " +
                       std::to_string(model.required_chars().size()));
  }
  if (target_vocab_size > model.size()) {
    throw infeasible_error("target vocabulary size " + std::to_string(target_vocab_size) +
                           " exceeds the " + std::to_string(model.size()) + " seed candidates");
  }

  std::size_t round = 0;
  auto run_em = [&] {
    for (std::size_t it = 0; it < options.em_subiters; ++it) {
      const auto e = e_step(model, counts);
      if (trace) trace->passes.push_back({round, model.size(), e.log_likelihood});
      model = m_step(model, e);
    }
    if (trace) trace->passes.push_back({round, model.size(), e_step(model, counts).log_likelihood});
  };

  while (true) {
    run_em();
    if (model.size() <= target_vocab_size) break;
    const std::size_t current = model.size();
    std::size_t next = std::max(target_vocab_size,
                                static_cast<std::size_t>(static_cast<double>(current) * options.shrink_factor));
    if (next >= current) next = current - 1;

    auto losses = detail::pruning_losses(model, counts);
    std::sort(losses.begin(), losses.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    const std::size_t keep = next - model.required_chars().size();
    std::set<std::string> kept(model.required_chars().begin(), model.required_chars().end());
    for (std::size_t i = 0; i < losses.size() && i < keep; ++i) kept.insert(losses[i].first);

    std::vector<std::pair<std::string, double>> lps;
    double mass = 0.0;
    for (const auto& [piece, lp] : model.pieces()) {
      if (kept.count(piece)) mass += std::exp(lp);
    }
    for (const auto& [piece, lp] : model.pieces()) {
      if (kept.count(piece)) lps.emplace_back(piece, lp - std::log(mass));
    }
    UnigramModel pruned(lps, model.eow_mark());
    if (!detail::all_segmentable(pruned, counts)) {
      throw infeasible_error("pruning would leave a training word unsegmentable");
    }
    model = std::move(pruned);
    ++round;
  }
  return model;
}

// ---------------------------------------------------------------------------
// Vocabulary file: header line, then "piece<TAB>log-probability" in
// descending probability, 17 significant digits.

inline std::string ulm_header(const std::string& eow_mark) {
  return "#subword-ulm v" + std::to_string(kModelFormatVersion) + " eow=" + eow_mark;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string dump_ulm(const UnigramModel& model) {
  std::string out = ulm_header(model.eow_mark()) + "\n";
  for (const auto& [piece, lp] : model.pieces()) out += piece + "\t" + format_double(lp) + "\n";
  return out;
}

inline UnigramModel parse_ulm(const std::string& text) {
  std::string eow_mark;
  bool header_seen = false;
  std::vector<std::pair<std::string, double>> lps;
  for_each_line(text, [&](std::string_view line, std::size_t, std::size_t line_no) {
    if (!header_seen) {
      const std::string prefix = "#subword-ulm v" + std::to_string(kModelFormatVersion) + " eow=";
      if (line.substr(0, prefix.size()) != prefix) {
        throw format_error("unigram vocabulary: unsupported header '" + std::string(line) + "'");
      }
      eow_mark = std::string(line.substr(prefix.size()));
      header_seen = true;
      return;
    }
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw format_error("unigram vocabulary line " + std::to_string(line_no) +
                         ": expected 'piece<TAB>logprob'");
    }
    const std::string num(line.substr(tab + 1));
    char* end = nullptr;
    const double lp = std::strtod(num.c_str(), &end);
    if (end == num.c_str() || *end != '\0') {
      throw format_error("unigram vocabulary line " + std::to_string(line_no) + ": bad number");
    }
    lps.emplace_back(std::string(line.substr(0, tab)), lp);
  });
  if (!header_seen) throw format_error("unigram vocabulary: missing header");
  UnigramModel model(lps, eow_mark);
  if (std::abs(model.total_probability() - 1.0) > 1e-6) {
    throw format_error("unigram vocabulary: probabilities do not sum to 1");
  }
  return model;
}

inline void save_ulm(const UnigramModel& model, const std::string& path) {
  write_file_atomic(path, dump_ulm(model));
}

inline UnigramModel load_ulm(const std::string& path) { return parse_ulm(read_file(path)); }

}  // namespace subword
