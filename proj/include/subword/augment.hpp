#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "subword/bpe.hpp"
#include "subword/corpus.hpp"
#include "subword/error.hpp"
#include "subword/model.hpp"
#include "subword/rng.hpp"
#include "subword/token_seq.hpp"
#include "subword/ulm.hpp"

namespace subword {

enum class AugmentMode { deterministic_bpe, bpe_dropout, ulm_viterbi, ulm_sample };

inline std::string_view to_string(AugmentMode mode) {
  switch (mode) {
    case AugmentMode::deterministic_bpe: return "deterministic-bpe";
    case AugmentMode::bpe_dropout: return "bpe-dropout";
    case AugmentMode::ulm_viterbi: return "ulm-viterbi";
    case AugmentMode::ulm_sample: return "ulm-sample";
  }
  return "?";
}

inline AugmentMode parse_augment_mode(std::string_view name) {
  for (auto m : {AugmentMode::deterministic_bpe, AugmentMode::bpe_dropout, AugmentMode::ulm_viterbi,
                 AugmentMode::ulm_sample}) {
    if (to_string(m) == name) return m;
  }
  throw config_error("unknown augmentation mode '" + std::string(name) + "'");
}

inline bool is_bpe_mode(AugmentMode mode) {
  return mode == AugmentMode::deterministic_bpe || mode == AugmentMode::bpe_dropout;
}

inline bool is_stochastic(AugmentMode mode) {
  return mode == AugmentMode::bpe_dropout || mode == AugmentMode::ulm_sample;
}

// Deterministic counterpart used for evaluation data.
inline AugmentMode deterministic_counterpart(AugmentMode mode) {
  return is_bpe_mode(mode) ? AugmentMode::deterministic_bpe : AugmentMode::ulm_viterbi;
}

struct AugmentConfig {
  AugmentMode mode = AugmentMode::deterministic_bpe;
  double p = 0.1;            // bpe-dropout
  SamplingConfig sampling;   // ulm-sample
  std::uint64_t seed = 0;

  void validate() const {
    if (mode == AugmentMode::bpe_dropout) check_dropout_probability(p);
    if (mode == AugmentMode::ulm_sample) sampling.validate();
  }

  void validate(const SubwordModel& model) const {
    validate();
    const bool bpe = std::holds_alternative<BpeModel>(model);
    if (bpe != is_bpe_mode(mode)) {
      throw config_error(std::string("mode '") + std::string(to_string(mode)) + "' requires a " +
                         (is_bpe_mode(mode) ? "BPE" : "unigram") + " model");
    }
  }

  static std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
  }

  std::string fingerprint() const {
    std::string s = "mode=" + std::string(to_string(mode));
    if (mode == AugmentMode::bpe_dropout) s += " p=" + short_number(p);
    if (mode == AugmentMode::ulm_sample) {
      s += " alpha=" + short_number(sampling.alpha);
      s += " l=" + (sampling.l ? std::to_string(*sampling.l) : std::string("inf"));
    }
    if (is_stochastic(mode)) s += " seed=" + std::to_string(seed);
    return s;
  }
};

// Segments one word under the configured mode. Deterministic modes leave `rng` untouched.
inline TokenSeq tokenize_word(const SubwordModel& model, const AugmentConfig& config,
                              std::string_view word, Rng& rng) {
  switch (config.mode) {
    case AugmentMode::deterministic_bpe: return encode(std::get<BpeModel>(model), word);
    case AugmentMode::bpe_dropout: return encode_dropout(std::get<BpeModel>(model), word, config.p, rng);
    case AugmentMode::ulm_viterbi: return viterbi(std::get<UnigramModel>(model), word);
    case AugmentMode::ulm_sample:
      return sample_segmentation(std::get<UnigramModel>(model), word, config.sampling, rng);
  }
  return {};
}

inline TokenSeq tokenize_words(const SubwordModel& model, const AugmentConfig& config,
                               const std::vector<std::string>& words, Rng& rng) {
  TokenSeq out;
  for (const auto& w : words) out.append(tokenize_word(model, config, w, rng));
  return out;
}

// Dense token <-> id map. Reserved ids come first; model tokens follow in dump order.
class VocabIndex {
 public:
  static constexpr std::int32_t kUnk = 0;
  static constexpr std::int32_t kPad = 1;
  static constexpr std::int32_t kBos = 2;
  static constexpr std::int32_t kEos = 3;
  static constexpr std::size_t kReserved = 4;

  VocabIndex() = default;

  explicit VocabIndex(const std::vector<std::string>& tokens) {
    tokens_ = {"<unk>", "<pad>", "<s>", "</s>"};
    for (const auto& t : tokens) {
      if (ids_.emplace(t, static_cast<std::int32_t>(tokens_.size())).second) tokens_.push_back(t);
    }
  }

  // Id of a model token; anything else maps to the UNK id.
  std::int32_t id(const std::string& token) const {
    auto it = ids_.find(token);
    return it == ids_.end() ? kUnk : it->second;
  }

  bool contains(const std::string& token) const { return ids_.count(token) != 0; }

  const std::string& token(std::int32_t id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size()) {
      throw config_error("token id " + std::to_string(id) + " out of range");
    }
    return tokens_[static_cast<std::size_t>(id)];
  }

  std::size_t size() const noexcept { return tokens_.size(); }

  bool operator==(const VocabIndex& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::int32_t> ids_;
};

inline VocabIndex build_index(const BpeModel& model) { return VocabIndex(model.vocab()); }

inline VocabIndex build_index(const UnigramModel& model) {
  std::vector<std::string> tokens;
  for (const auto& [piece, _] : model.pieces()) tokens.push_back(piece);
  return VocabIndex(tokens);
}

inline VocabIndex build_index(const SubwordModel& model) {
  return std::visit([](const auto& m) { return build_index(m); }, model);
}

inline std::string dump_index(const VocabIndex& index) {
  std::string out;
  for (std::size_t i = 0; i < index.size(); ++i) {
    out += std::to_string(i) + "\t" + index.token(static_cast<std::int32_t>(i)) + "\n";
  }
  return out;
}

inline std::vector<std::int32_t> to_ids(const VocabIndex& index, const TokenSeq& seq) {
  std::vector<std::int32_t> ids;
  ids.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const bool unk = i < seq.unknown.size() && seq.unknown[i];
    ids.push_back(unk ? VocabIndex::kUnk : index.id(seq.tokens[i]));
  }
  return ids;
}

inline std::string detokenize_ids(const VocabIndex& index, const std::vector<std::int32_t>& ids,
                                  std::string_view eow_mark) {
  std::vector<std::string> tokens;
  for (auto id : ids) tokens.push_back(index.token(id));
  return detokenize(tokens, eow_mark);
}

struct StreamItem {
  std::string utterance_id;
  std::size_t ordinal = 0;
  TokenSeq tokens;
  std::vector<std::int32_t> ids;
};

// Tokenizes utterance `ordinal` for one epoch. The generator is derived from
// (seed, epoch, ordinal), so the result does not depend on who asks or when.
inline StreamItem tokenize_utterance(const Corpus& corpus, const SubwordModel& model,
                                     const VocabIndex& index, const AugmentConfig& config,
                                     std::uint64_t epoch, std::size_t ordinal) {
  const Utterance& u = corpus.utterances[ordinal];
  Rng rng(derive_seed(config.seed, epoch, ordinal));
  StreamItem item;
  item.utterance_id = u.id;
  item.ordinal = ordinal;
  item.tokens = tokenize_words(model, config, u.words, rng);
  item.ids = to_ids(index, item.tokens);
  return item;
}

// Pull-based stream over one epoch; holds one utterance at a time.
class EpochStream {
 public:
  EpochStream(const Corpus& corpus, const SubwordModel& model, const VocabIndex& index,
              AugmentConfig config, std::uint64_t epoch)
      : corpus_(&corpus), model_(&model), index_(&index), config_(std::move(config)), epoch_(epoch) {
    config_.validate(model);
  }

  std::optional<StreamItem> next() {
    if (next_ >= corpus_->size()) return std::nullopt;
    return tokenize_utterance(*corpus_, *model_, *index_, config_, epoch_, next_++);
  }

  std::size_t position() const noexcept { return next_; }

 private:
  const Corpus* corpus_;
  const SubwordModel* model_;
  const VocabIndex* index_;
  AugmentConfig config_;
  std::uint64_t epoch_;
  std::size_t next_ = 0;
};

inline EpochStream epoch_stream(const Corpus& corpus, const SubwordModel& model,
                                const VocabIndex& index, const AugmentConfig& config,
                                std::uint64_t epoch) {
  return EpochStream(corpus, model, index, config, epoch);
}

// Runs `fn(i)` for i in [0, n) over `threads` workers; each index runs exactly once.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Whole epoch, in corpus order, computed on `threads` workers.
inline std::vector<StreamItem> materialize_epoch(const Corpus& corpus, const SubwordModel& model,
                                                 const VocabIndex& index, const AugmentConfig& config,
                                                 std::uint64_t epoch, std::size_t threads = 1) {
  config.validate(model);
  std::vector<StreamItem> items(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t i) {
    items[i] = tokenize_utterance(corpus, model, index, config, epoch, i);
  });
  return items;
}

// "id<TAB>space-separated token ids" per utterance.
inline std::string format_ids_line(const StreamItem& item) {
  std::string line = item.utterance_id + "\t";
  for (std::size_t i = 0; i < item.ids.size(); ++i) {
    if (i) line += ' ';
    line += std::to_string(item.ids[i]);
  }
  return line + "\n";
}

// Human-readable sibling of format_ids_line with token strings.
inline std::string format_tokens_line(const StreamItem& item) {
  return item.utterance_id + "\t" + join(item.tokens.tokens) + "\n";
}

}  // namespace subword
