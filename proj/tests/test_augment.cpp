#include <gtest/gtest.h>

#include "support.hpp"

using namespace subword;

namespace {

SubwordModel bpe_model() { return testing_support::open_bpe(); }
SubwordModel ulm_model() { return testing_support::open_ulm(); }

std::string stream_bytes(const Corpus& c, const SubwordModel& m, const AugmentConfig& cfg, std::uint64_t epoch,
                         std::size_t threads) {
  const auto index = build_index(m);
  std::string out;
  for (const auto& item : materialize_epoch(c, m, index, cfg, epoch, threads)) out += format_ids_line(item);
  return out;
}

std::string pulled_bytes(const Corpus& c, const SubwordModel& m, const AugmentConfig& cfg, std::uint64_t epoch) {
  const auto index = build_index(m);
  auto stream = epoch_stream(c, m, index, cfg, epoch);
  std::string out;
  while (auto item = stream.next()) out += format_ids_line(*item);
  return out;
}

AugmentConfig config(AugmentMode mode, std::uint64_t seed = 0) {
  AugmentConfig c;
  c.mode = mode;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(AugmentConfig, ModeNamesRoundTrip) {
  for (auto m : {AugmentMode::deterministic_bpe, AugmentMode::bpe_dropout, AugmentMode::ulm_viterbi,
                 AugmentMode::ulm_sample}) {
    EXPECT_EQ(parse_augment_mode(to_string(m)), m);
  }
  EXPECT_THROW(parse_augment_mode("bpe"), config_error);
}

TEST(AugmentConfig, ValidatesAgainstModel) {
  AugmentConfig c = config(AugmentMode::bpe_dropout);
  c.p = 2.0;
  EXPECT_THROW(c.validate(), config_error);
  EXPECT_THROW(config(AugmentMode::ulm_sample).validate(bpe_model()), config_error);
  EXPECT_THROW(config(AugmentMode::deterministic_bpe).validate(ulm_model()), config_error);
  EXPECT_NO_THROW(config(AugmentMode::ulm_viterbi).validate(ulm_model()));
}

TEST(VocabIndex, ReservedThenDumpOrder) {
  const auto& m = testing_support::open_bpe();
  const auto index = build_index(m);
  EXPECT_EQ(index.size(), m.vocab_size() + VocabIndex::kReserved);
  EXPECT_EQ(index.token(VocabIndex::kUnk), "<unk>");
  EXPECT_EQ(index.token(VocabIndex::kPad), "<pad>");
  EXPECT_EQ(index.token(4), m.vocab()[0]);
  for (const auto& t : m.vocab()) EXPECT_EQ(index.id(index.token(index.id(t))), index.id(t));
  EXPECT_EQ(index.id("never-a-token"), VocabIndex::kUnk);
  EXPECT_EQ(build_index(m), index);
  EXPECT_THROW(index.token(-1), config_error);
}

TEST(VocabIndex, UlmDumpOrder) {
  const auto& m = testing_support::open_ulm();
  const auto index = build_index(m);
  EXPECT_EQ(index.size(), m.size() + VocabIndex::kReserved);
  EXPECT_EQ(index.token(4), m.pieces()[0].first);
}

TEST(VocabIndex, UnknownCharactersMapToUnk) {
  const SubwordModel m = bpe_model();
  const auto index = build_index(m);
  const Corpus c = ingest("zebra ça\n");
  const auto item = tokenize_utterance(c, m, index, config(AugmentMode::deterministic_bpe), 1, 0);
  bool saw_unk = false;
  for (std::size_t i = 0; i < item.tokens.size(); ++i) {
    if (item.tokens.unknown[i]) {
      EXPECT_EQ(item.ids[i], VocabIndex::kUnk);
      saw_unk = true;
    } else {
      EXPECT_NE(item.ids[i], VocabIndex::kUnk);
    }
  }
  EXPECT_TRUE(saw_unk);
}

TEST(EpochStream, DeterministicModesIgnoreEpoch) {
  const auto& c = testing_support::open_corpus();
  for (const auto& [m, mode] : {std::pair{bpe_model(), AugmentMode::deterministic_bpe},
                                std::pair{ulm_model(), AugmentMode::ulm_viterbi}}) {
    EXPECT_EQ(stream_bytes(c, m, config(mode, 1), 1, 1), stream_bytes(c, m, config(mode, 2), 2, 1));
  }
}

TEST(EpochStream, DropoutZeroEqualsDeterministic) {
  const auto& c = testing_support::open_corpus();
  AugmentConfig d = config(AugmentMode::bpe_dropout, 5);
  d.p = 0.0;
  EXPECT_EQ(stream_bytes(c, bpe_model(), d, 3, 1),
            stream_bytes(c, bpe_model(), config(AugmentMode::deterministic_bpe), 3, 1));
}

TEST(EpochStream, ReproducibleAcrossRunsThreadsAndPulls) {
  const auto& c = testing_support::open_corpus();
  for (const auto& [m, mode] : {std::pair{bpe_model(), AugmentMode::bpe_dropout},
                                std::pair{ulm_model(), AugmentMode::ulm_sample}}) {
    const auto cfg = config(mode, 7);
    const auto a = stream_bytes(c, m, cfg, 3, 1);
    EXPECT_EQ(a, stream_bytes(c, m, cfg, 3, 1));
    EXPECT_EQ(a, stream_bytes(c, m, cfg, 3, 4));
    EXPECT_EQ(a, pulled_bytes(c, m, cfg, 3));
    EXPECT_NE(a, stream_bytes(c, m, cfg, 4, 1));
    EXPECT_NE(a, stream_bytes(c, m, config(mode, 8), 3, 1));
  }
}

TEST(EpochStream, OrderIndependentPerUtterance) {
  const auto& c = testing_support::open_corpus();
  const SubwordModel m = bpe_model();
  const auto index = build_index(m);
  const auto cfg = config(AugmentMode::bpe_dropout, 9);
  const auto late = tokenize_utterance(c, m, index, cfg, 2, 17);
  const auto all = materialize_epoch(c, m, index, cfg, 2);
  EXPECT_EQ(all[17].ids, late.ids);
}

TEST(EpochStream, DetokenizedStreamEqualsSource) {
  const auto& c = testing_support::open_corpus();
  for (const auto& [m, mode] : {std::pair{bpe_model(), AugmentMode::bpe_dropout},
                                std::pair{ulm_model(), AugmentMode::ulm_sample},
                                std::pair{bpe_model(), AugmentMode::deterministic_bpe},
                                std::pair{ulm_model(), AugmentMode::ulm_viterbi}}) {
    const auto index = build_index(m);
    const auto items = materialize_epoch(c, m, index, config(mode, 1), 1, 2);
    for (std::size_t i = 0; i < c.size(); ++i) {
      EXPECT_EQ(detokenize_ids(index, items[i].ids, eow_mark(m)), join(c.utterances[i].words));
      EXPECT_EQ(items[i].utterance_id, c.utterances[i].id);
    }
  }
}

TEST(EpochStream, LineFormats) {
  StreamItem item{"u1", 0, TokenSeq{"a", "b</w>"}, {5, 6}};
  EXPECT_EQ(format_ids_line(item), "u1\t5 6\n");
  EXPECT_EQ(format_tokens_line(item), "u1\ta b</w>\n");
}

TEST(Rng, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(0, 1, 0), derive_seed(0, 0, 1));
  EXPECT_NE(derive_seed(1, 0, 0), derive_seed(0, 0, 0));
  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}
