#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "subword/corpus.hpp"
#include "subword/error.hpp"
#include "subword/utf8.hpp"

namespace subword {

struct EvalPair {
  std::string id;
  std::vector<std::string> reference;
  std::vector<std::string> hypothesis;
};

enum class EditUnit { word, character };

struct EditCounts {
  std::uint64_t substitutions = 0;
  std::uint64_t insertions = 0;
  std::uint64_t deletions = 0;

  std::uint64_t total() const noexcept { return substitutions + insertions + deletions; }
  bool operator==(const EditCounts&) const = default;
};

struct WerReport {
  EditCounts edits;
  std::uint64_t reference_tokens = 0;

  // (S + I + D) / N in percent; 0 for an empty reference with no insertions.
  double rate_percent() const noexcept {
    if (reference_tokens == 0) return edits.total() == 0 ? 0.0 : 100.0;
    return 100.0 * static_cast<double>(edits.total()) / static_cast<double>(reference_tokens);
  }
};

// Minimum-edit alignment with unit costs. Among alignments of equal cost the
// one with the most substitutions is reported; I and D then follow from
// I - D = |hyp| - |ref| and S + I + D = cost.
template <typename T>
EditCounts align(const std::vector<T>& ref, const std::vector<T>& hyp) {
  struct Cell {
    std::uint64_t cost;
    std::uint64_t subs;
  };
  auto better = [](const Cell& a, const Cell& b) {
    return a.cost != b.cost ? a.cost < b.cost : a.subs > b.subs;
  };
  const std::size_t r = ref.size();
  const std::size_t h = hyp.size();
  std::vector<Cell> prev(h + 1);
  std::vector<Cell> cur(h + 1);
  for (std::size_t j = 0; j <= h; ++j) prev[j] = {j, 0};
  for (std::size_t i = 1; i <= r; ++i) {
    cur[0] = {i, 0};
    for (std::size_t j = 1; j <= h; ++j) {
      Cell diag = prev[j - 1];
      if (!(ref[i - 1] == hyp[j - 1])) {
        ++diag.cost;
        ++diag.subs;
      }
      Cell del{prev[j].cost + 1, prev[j].subs};
      Cell ins{cur[j - 1].cost + 1, cur[j - 1].subs};
      Cell best = diag;
      if (better(del, best)) best = del;
      if (better(ins, best)) best = ins;
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  const Cell end = prev[h];
  EditCounts c;
  c.substitutions = end.subs;
  const auto indel = static_cast<std::int64_t>(end.cost - end.subs);
  const auto diff = static_cast<std::int64_t>(h) - static_cast<std::int64_t>(r);
  c.insertions = static_cast<std::uint64_t>((indel + diff) / 2);
  c.deletions = static_cast<std::uint64_t>((indel - diff) / 2);
  return c;
}

// Character units: the words joined by single spaces, one unit per code point.
inline std::vector<char32_t> character_units(const std::vector<std::string>& words) {
  std::string joined;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) joined += ' ';
    joined += words[i];
  }
  return utf8::decode(joined);
}

inline WerReport edit_distance_report(const std::vector<EvalPair>& pairs, EditUnit unit) {
  WerReport report;
  for (const auto& p : pairs) {
    EditCounts c;
    if (unit == EditUnit::word) {
      c = align(p.reference, p.hypothesis);
      report.reference_tokens += p.reference.size();
    } else {
      const auto ref = character_units(p.reference);
      c = align(ref, character_units(p.hypothesis));
      report.reference_tokens += ref.size();
    }
    report.edits.substitutions += c.substitutions;
    report.edits.insertions += c.insertions;
    report.edits.deletions += c.deletions;
  }
  return report;
}

// Pairs reference and hypothesis utterances by line order, or by id.
inline std::vector<EvalPair> pair_corpora(const Corpus& ref, const Corpus& hyp, bool by_id = false) {
  std::vector<EvalPair> pairs;
  if (!by_id) {
    if (ref.size() != hyp.size()) {
      throw pairing_error("reference has " + std::to_string(ref.size()) +
                              " lines but hypothesis has " + std::to_string(hyp.size()),
                          std::min(ref.size(), hyp.size()) + 1);
    }
    for (std::size_t i = 0; i < ref.size(); ++i) {
      pairs.push_back({ref.utterances[i].id, ref.utterances[i].words, hyp.utterances[i].words});
    }
    return pairs;
  }
  std::unordered_map<std::string, std::size_t> hyp_by_id;
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    if (!hyp_by_id.emplace(hyp.utterances[i].id, i).second) {
      throw pairing_error("duplicate hypothesis id '" + hyp.utterances[i].id + "'", i + 1);
    }
  }
  std::set<std::string> ref_ids;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const auto& u = ref.utterances[i];
    if (!ref_ids.insert(u.id).second) throw pairing_error("duplicate reference id '" + u.id + "'", i + 1);
    auto it = hyp_by_id.find(u.id);
    if (it == hyp_by_id.end()) throw pairing_error("no hypothesis for id '" + u.id + "'", i + 1);
    pairs.push_back({u.id, u.words, hyp.utterances[it->second].words});
  }
  if (hyp.size() != ref.size()) {
    for (std::size_t i = 0; i < hyp.size(); ++i) {
      if (!ref_ids.count(hyp.utterances[i].id)) {
        throw pairing_error("no reference for id '" + hyp.utterances[i].id + "'", i + 1);
      }
    }
  }
  return pairs;
}

// ---------------------------------------------------------------------------
// OOV recognition

inline double precision_of(std::uint64_t tp, std::uint64_t fp) noexcept {
  return tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
}

inline double recall_of(std::uint64_t tp, std::uint64_t fn) noexcept {
  return tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
}

inline double fscore(double precision, double recall) noexcept {
  const double d = precision + recall;
  return d > 0.0 ? 2.0 * precision * recall / d : 0.0;
}

struct OovReport {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double fscore = 0.0;
  // OOV tokens in the references (tp + fn); zero means there was nothing to find.
  std::uint64_t reference_oov_tokens = 0;
  // Correctly emitted OOV words with their tp multiplicity.
  std::map<std::string, std::uint64_t> tp_words;
  std::map<std::string, std::uint64_t> fp_words;
};

struct OovOptions {
  // fp checks the hypothesis word against its own utterance's reference
  // instead of the whole evaluation reference vocabulary.
  bool per_utterance_fp = false;
};

inline std::set<std::string> oov_set(const std::set<std::string>& train_words,
                                     const std::vector<std::vector<std::string>>& references) {
  std::set<std::string> out;
  for (const auto& ref : references) {
    for (const auto& w : ref) {
      if (!train_words.count(w)) out.insert(w);
    }
  }
  return out;
}

inline std::set<std::string> oov_set(const std::set<std::string>& train_words,
                                     const std::vector<EvalPair>& pairs) {
  std::vector<std::vector<std::string>> refs;
  for (const auto& p : pairs) refs.push_back(p.reference);
  return oov_set(train_words, refs);
}

// OOV token rate of the references, counted with multiplicity, in percent.
inline double oov_token_rate_percent(const std::set<std::string>& train_words,
                                     const std::vector<EvalPair>& pairs) {
  std::uint64_t total = 0;
  std::uint64_t oov = 0;
  for (const auto& p : pairs) {
    for (const auto& w : p.reference) {
      ++total;
      if (!train_words.count(w)) ++oov;
    }
  }
  return total ? 100.0 * static_cast<double>(oov) / static_cast<double>(total) : 0.0;
}

// Per utterance: tp += min(ref count, hyp count) for every OOV reference word,
// fn += the shortfall, fp += hypothesis words found in neither the training
// words nor the reference vocabulary.
inline OovReport oov_score(const std::set<std::string>& train_words, const std::vector<EvalPair>& pairs,
                           const OovOptions& options = {}) {
  std::set<std::string> ref_vocab;
  for (const auto& p : pairs) ref_vocab.insert(p.reference.begin(), p.reference.end());

  OovReport r;
  for (const auto& p : pairs) {
    std::map<std::string, std::uint64_t> ref_oov;
    for (const auto& w : p.reference) {
      if (!train_words.count(w)) ++ref_oov[w];
    }
    std::map<std::string, std::uint64_t> hyp_counts;
    for (const auto& w : p.hypothesis) ++hyp_counts[w];
    for (const auto& [w, rc] : ref_oov) {
      auto it = hyp_counts.find(w);
      const std::uint64_t hc = it == hyp_counts.end() ? 0 : it->second;
      const std::uint64_t hit = std::min(rc, hc);
      r.tp += hit;
      r.fn += rc - hit;
      r.reference_oov_tokens += rc;
      if (hit) r.tp_words[w] += hit;
    }
    std::set<std::string> utt_ref;
    if (options.per_utterance_fp) utt_ref.insert(p.reference.begin(), p.reference.end());
    const auto& known = options.per_utterance_fp ? utt_ref : ref_vocab;
    for (const auto& w : p.hypothesis) {
      if (!train_words.count(w) && !known.count(w)) {
        ++r.fp;
        ++r.fp_words[w];
      }
    }
  }
  r.precision = precision_of(r.tp, r.fp);
  r.recall = recall_of(r.tp, r.fn);
  r.fscore = fscore(r.precision, r.recall);
  return r;
}

}  // namespace subword
