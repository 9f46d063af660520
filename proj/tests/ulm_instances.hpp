#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "subword/ulm.hpp"

namespace testing_support {

struct UlmInstance {
  subword::UnigramModel model;
  std::map<std::string, double> logprobs;
  std::string word;
  std::vector<oracle::Segmentation> segmentations;  // sorted best first
};

// Random unigram model over a small alphabet plus a word built from distinct
// letters, with between 2 and `max_segs` segmentations. No end-of-word mark.
inline std::vector<UlmInstance> random_ulm_instances(std::size_t n, std::uint64_t seed, std::size_t max_segs = 20) {
  std::mt19937_64 gen(seed);
  const std::string letters = "abcdefgh";
  std::vector<UlmInstance> out;
  while (out.size() < n) {
    std::string pool = letters;
    std::shuffle(pool.begin(), pool.end(), gen);
    const std::size_t len = 3 + gen() % 4;
    const std::string word = pool.substr(0, len);
    std::map<std::string, double> weights;
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    for (char c : letters) weights[std::string(1, c)] = unit(gen);
    for (std::size_t b = 0; b < len; ++b) {
      for (std::size_t e = b + 2; e <= len; ++e) {
        if (gen() % 2 == 0) weights[word.substr(b, e - b)] = unit(gen);
      }
    }
    for (int extra = 0; extra < 3; ++extra) {
      std::string piece;
      for (int k = 0; k < 2; ++k) piece += letters[gen() % letters.size()];
      weights.emplace(piece, unit(gen));
    }
    double z = 0.0;
    for (const auto& [_, w] : weights) z += w;
    std::map<std::string, double> probs;
    std::map<std::string, double> lps;
    for (const auto& [p, w] : weights) {
      probs[p] = w / z;
      lps[p] = std::log(w / z);
    }
    UlmInstance inst{subword::UnigramModel::from_probabilities(probs), {}, word, {}};
    for (const auto& [p, lp] : inst.model.pieces()) inst.logprobs[p] = lp;
    inst.segmentations = oracle::all_segmentations(inst.logprobs, oracle::chars_of(word));
    if (inst.segmentations.size() < 2 || inst.segmentations.size() > max_segs) continue;
    oracle::sort_segmentations(inst.segmentations);
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace testing_support
