#pragma once

// Command-line front end: train / encode / sample / stream / score / stats / version.
// Exit codes: 0 ok, 1 I/O or input data error, 2 configuration error,
// 3 training infeasible or model/token mismatch.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "subword/subword.hpp"

namespace subword::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kIoError = 1, kConfigError = 2, kInfeasible = 3 };

inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const config_error*>(&e)) return kConfigError;
  if (dynamic_cast<const io_error*>(&e)) return kIoError;
  if (dynamic_cast<const decode_error*>(&e)) return kIoError;
  if (dynamic_cast<const pairing_error*>(&e)) return kIoError;
  if (dynamic_cast<const error*>(&e)) return kInfeasible;
  return kIoError;
}

inline std::size_t default_threads() {
  if (const char* env = std::getenv("SUBWORD_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

struct CommonInput {
  std::string normalize = "nfc";
  std::string case_policy = "preserve";
  bool id_mode = false;
  std::optional<std::size_t> max_chars;

  IngestOptions options() const {
    IngestOptions o;
    if (normalize == "nfc") o.normalization.form = NormalizationForm::nfc;
    else if (normalize == "nfd") o.normalization.form = NormalizationForm::nfd;
    else if (normalize == "nfkc") o.normalization.form = NormalizationForm::nfkc;
    else if (normalize == "nfkd") o.normalization.form = NormalizationForm::nfkd;
    else if (normalize == "none") o.normalization.form = NormalizationForm::none;
    else throw config_error("unknown normalization form '" + normalize + "'");
    if (case_policy == "preserve") o.normalization.case_policy = CasePolicy::preserve;
    else if (case_policy == "lower") o.normalization.case_policy = CasePolicy::lower;
    else if (case_policy == "fold") o.normalization.case_policy = CasePolicy::fold;
    else throw config_error("unknown case policy '" + case_policy + "'");
    o.id_mode = id_mode;
    o.max_chars = max_chars;
    return o;
  }

  void add_to(CLI::App* app, bool with_filter = false) {
    app->add_option("--normalize", normalize, "Unicode normalization: nfc, nfd, nfkc, nfkd, none")
        ->capture_default_str();
    app->add_option("--case", case_policy, "Case policy: preserve, lower, fold")->capture_default_str();
    app->add_flag("--id-mode", id_mode, "Input lines start with 'id<TAB>'");
    if (with_filter) {
      app->add_option("--max-chars", max_chars, "Drop utterances longer than this many characters");
    }
  }
};

inline Corpus read_corpus(const std::string& path, const IngestOptions& options) {
  if (path == "-") return ingest(std::cin, options);
  return ingest(read_file(path), options);
}

inline void emit(const std::string& text, const std::string& output, std::ostream& out) {
  if (output.empty() || output == "-") {
    out << text;
  } else {
    write_file_atomic(output, text);
  }
}

inline std::optional<std::size_t> parse_l(const std::string& text) {
  if (text == "inf" || text == "infinity") return std::nullopt;
  char* end = nullptr;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0' || v < 1) {
    throw config_error("--l must be a positive integer or 'inf', got '" + text + "'");
  }
  return static_cast<std::size_t>(v);
}

inline std::string fixed(double v, int digits) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << v;
  return ss.str();
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string kind;
  std::string input;
  std::string output;
  std::size_t vocab_size = 0;
  std::string eow = std::string(kDefaultEowMark);
  std::uint64_t min_frequency = 2;
  std::size_t max_piece_len = 16;
  std::size_t seed_size = 1000000;
  double shrink = 0.75;
  std::size_t em_iters = 2;
  CommonInput in;
};

inline int cmd_train(const TrainArgs& a, std::ostream& out) {
  if (a.kind != "bpe" && a.kind != "ulm") throw config_error("--kind must be 'bpe' or 'ulm'");
  if (a.vocab_size == 0) throw config_error("--vocab-size must be positive");
  if (a.kind == "ulm" && !(a.shrink > 0.0 && a.shrink < 1.0)) throw config_error("--shrink must lie in (0, 1)");
  if (a.kind == "ulm" && a.em_iters < 1) throw config_error("--em-iters must be at least 1");
  if (a.kind == "ulm" && a.max_piece_len < 1) throw config_error("--max-piece-len must be at least 1");
  const auto options = a.in.options();

  const Corpus corpus = read_corpus(a.input, options);
  const WordCounts counts = word_counts(corpus);
  if (a.kind == "bpe") {
    BpeTrainOptions o;
    o.eow_mark = a.eow;
    o.min_pair_frequency = a.min_frequency;
    const BpeModel model = train_bpe(counts, a.vocab_size, o);
    save_bpe(model, a.output);
    out << "trained BPE: " << model.merges().size() << " merges, vocabulary " << model.vocab_size()
        << " -> " << a.output << "\n";
  } else {
    UlmTrainOptions o;
    o.eow_mark = a.eow;
    o.max_piece_len = a.max_piece_len;
    o.max_seed_size = a.seed_size;
    o.shrink_factor = a.shrink;
    o.em_subiters = a.em_iters;
    const UnigramModel model = train_ulm(counts, a.vocab_size, o);
    save_ulm(model, a.output);
    out << "trained unigram model: " << model.size() << " pieces -> " << a.output << "\n";
  }
  return kOk;
}

struct EncodeArgs {
  std::string model;
  std::string input = "-";
  std::string output;
  std::optional<double> p;
  std::uint64_t seed = 0;
  bool ids = false;
  std::optional<std::size_t> nbest;
  CommonInput in;
};

inline std::string render(const StreamItem& item, bool ids) {
  if (!ids) return join(item.tokens.tokens) + "\n";
  std::string line;
  for (std::size_t i = 0; i < item.ids.size(); ++i) {
    if (i) line += ' ';
    line += std::to_string(item.ids[i]);
  }
  return line + "\n";
}

// Tokenizes every input line; line k draws from the generator for (seed, 0, k).
inline std::string tokenize_lines(const Corpus& corpus, const SubwordModel& model,
                                  const AugmentConfig& config, bool ids) {
  const VocabIndex index = build_index(model);
  std::string text;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    text += render(tokenize_utterance(corpus, model, index, config, 0, i), ids);
  }
  return text;
}

inline int cmd_encode(const EncodeArgs& a, std::ostream& out) {
  if (a.p) check_dropout_probability(*a.p);
  if (a.nbest && *a.nbest < 1) throw config_error("--nbest must be at least 1");
  const auto options = a.in.options();
  const SubwordModel model = load_model(a.model);
  if (a.p && !is_bpe(model)) throw config_error("--p applies to BPE models only; use 'sample' for unigram models");
  if (a.nbest && is_bpe(model)) throw config_error("--nbest applies to unigram models only");
  const Corpus corpus = read_corpus(a.input, options);

  if (a.nbest) {
    const auto& ulm = std::get<UnigramModel>(model);
    std::string text;
    for (const auto& u : corpus.utterances) {
      for (const auto& w : u.words) {
        const auto list = nbest(ulm, w, *a.nbest);
        for (std::size_t r = 0; r < list.size(); ++r) {
          text += w + "\t" + std::to_string(r + 1) + "\t" + format_double(list[r].logprob) + "\t" +
                  join(list[r].seq.tokens) + "\n";
        }
      }
    }
    emit(text, a.output, out);
    return kOk;
  }

  AugmentConfig config;
  config.seed = a.seed;
  if (is_bpe(model)) {
    config.mode = a.p ? AugmentMode::bpe_dropout : AugmentMode::deterministic_bpe;
    if (a.p) config.p = *a.p;
  } else {
    config.mode = AugmentMode::ulm_viterbi;
  }
  emit(tokenize_lines(corpus, model, config, a.ids), a.output, out);
  return kOk;
}

struct SampleArgs {
  std::string model;
  std::string input = "-";
  std::string output;
  double p = 0.1;
  double alpha = 0.1;
  std::string l = "inf";
  std::uint64_t seed = 0;
  bool ids = false;
  CommonInput in;
};

inline int cmd_sample(const SampleArgs& a, std::ostream& out) {
  check_dropout_probability(a.p);
  SamplingConfig sampling{a.alpha, parse_l(a.l)};
  sampling.validate();
  const auto options = a.in.options();
  const SubwordModel model = load_model(a.model);
  const Corpus corpus = read_corpus(a.input, options);
  AugmentConfig config;
  config.seed = a.seed;
  config.p = a.p;
  config.sampling = sampling;
  config.mode = is_bpe(model) ? AugmentMode::bpe_dropout : AugmentMode::ulm_sample;
  emit(tokenize_lines(corpus, model, config, a.ids), a.output, out);
  return kOk;
}

struct StreamArgs {
  std::string model;
  std::string input;
  std::string output;
  std::string index_output;
  std::string mode;  // empty: stochastic mode matching the model kind
  double p = 0.1;
  double alpha = 0.1;
  std::string l = "inf";
  std::uint64_t seed = 0;
  std::uint64_t epoch = 1;
  std::size_t threads = 1;
  bool eval = false;
  CommonInput in;
};

inline AugmentConfig stream_config(const std::string& mode, double p, double alpha, const std::string& l,
                                   std::uint64_t seed, bool eval, bool bpe_model) {
  AugmentConfig config;
  config.mode = mode.empty() ? (bpe_model ? AugmentMode::bpe_dropout : AugmentMode::ulm_sample)
                             : parse_augment_mode(mode);
  if (eval) config.mode = deterministic_counterpart(config.mode);
  config.p = p;
  config.sampling = {alpha, parse_l(l)};
  config.seed = seed;
  config.validate();
  return config;
}

inline int cmd_stream(const StreamArgs& a, std::ostream& out) {
  if (a.threads < 1) throw config_error("--threads must be at least 1");
  if (!a.mode.empty()) parse_augment_mode(a.mode);
  stream_config(a.mode, a.p, a.alpha, a.l, a.seed, a.eval, true);
  const auto options = a.in.options();
  const SubwordModel model = load_model(a.model);
  const AugmentConfig config = stream_config(a.mode, a.p, a.alpha, a.l, a.seed, a.eval, is_bpe(model));
  config.validate(model);
  const Corpus corpus = read_corpus(a.input, options);
  const VocabIndex index = build_index(model);
  const auto items = materialize_epoch(corpus, model, index, config, a.epoch, a.threads);
  std::string ids_text;
  std::string tokens_text;
  for (const auto& item : items) {
    ids_text += format_ids_line(item);
    tokens_text += format_tokens_line(item);
  }
  if (a.output.empty() || a.output == "-") {
    out << ids_text;
  } else {
    write_file_atomic(a.output, ids_text);
    write_file_atomic(a.output + ".tokens", tokens_text);
  }
  if (!a.index_output.empty()) write_file_atomic(a.index_output, dump_index(index));
  return kOk;
}

struct ScoreArgs {
  std::string train;
  std::string ref;
  std::string hyp;
  std::string output;
  std::string format = "text";
  std::string tp_words_output;
  bool per_utterance_fp = false;
  CommonInput in;
};

struct ScoreResult {
  WerReport wer;
  WerReport cer;
  OovReport oov;
};

inline ScoreResult score_files(const std::string& train, const std::string& ref, const std::string& hyp,
                               const IngestOptions& options, bool per_utterance_fp) {
  IngestOptions train_options = options;
  train_options.id_mode = options.id_mode;
  const auto train_words = train_word_set(read_corpus(train, train_options));
  const Corpus ref_c = read_corpus(ref, options);
  const Corpus hyp_c = read_corpus(hyp, options);
  const auto pairs = pair_corpora(ref_c, hyp_c, options.id_mode);
  ScoreResult r;
  r.wer = edit_distance_report(pairs, EditUnit::word);
  r.cer = edit_distance_report(pairs, EditUnit::character);
  r.oov = oov_score(train_words, pairs, {per_utterance_fp});
  return r;
}

inline std::string render_score(const ScoreResult& r, const std::string& format) {
  const bool no_oov = r.oov.reference_oov_tokens == 0;
  const char* note = "no OOV words in the references; fscore reported as 0";
  if (format == "json") {
    nlohmann::ordered_json j;
    j["wer_percent"] = r.wer.rate_percent();
    j["cer_percent"] = r.cer.rate_percent();
    j["tp"] = r.oov.tp;
    j["fp"] = r.oov.fp;
    j["fn"] = r.oov.fn;
    j["precision"] = r.oov.precision;
    j["recall"] = r.oov.recall;
    j["fscore"] = r.oov.fscore;
    j["substitutions"] = r.wer.edits.substitutions;
    j["insertions"] = r.wer.edits.insertions;
    j["deletions"] = r.wer.edits.deletions;
    j["reference_words"] = r.wer.reference_tokens;
    j["reference_oov_tokens"] = r.oov.reference_oov_tokens;
    if (no_oov) j["note"] = note;
    return j.dump(2) + "\n";
  }
  if (format == "kv") {
    std::string s;
    s += "wer_percent=" + fixed(r.wer.rate_percent(), 2) + "\n";
    s += "cer_percent=" + fixed(r.cer.rate_percent(), 2) + "\n";
    s += "tp=" + std::to_string(r.oov.tp) + "\n";
    s += "fp=" + std::to_string(r.oov.fp) + "\n";
    s += "fn=" + std::to_string(r.oov.fn) + "\n";
    s += "precision=" + fixed(r.oov.precision, 6) + "\n";
    s += "recall=" + fixed(r.oov.recall, 6) + "\n";
    s += "fscore=" + fixed(r.oov.fscore, 6) + "\n";
    if (no_oov) s += std::string("note=") + note + "\n";
    return s;
  }
  std::string s;
  s += "WER " + fixed(r.wer.rate_percent(), 2) + "% (S=" + std::to_string(r.wer.edits.substitutions) +
       " I=" + std::to_string(r.wer.edits.insertions) + " D=" + std::to_string(r.wer.edits.deletions) +
       " N=" + std::to_string(r.wer.reference_tokens) + ")\n";
  s += "CER " + fixed(r.cer.rate_percent(), 2) + "% (S=" + std::to_string(r.cer.edits.substitutions) +
       " I=" + std::to_string(r.cer.edits.insertions) + " D=" + std::to_string(r.cer.edits.deletions) +
       " N=" + std::to_string(r.cer.reference_tokens) + ")\n";
  s += "OOV tp=" + std::to_string(r.oov.tp) + " fp=" + std::to_string(r.oov.fp) +
       " fn=" + std::to_string(r.oov.fn) + " precision=" + fixed(r.oov.precision, 3) +
       " recall=" + fixed(r.oov.recall, 3) + " fscore=" + fixed(r.oov.fscore, 3) + "\n";
  if (no_oov) s += std::string("note: ") + note + "\n";
  return s;
}

inline int cmd_score(const ScoreArgs& a, std::ostream& out) {
  if (a.format != "text" && a.format != "kv" && a.format != "json") {
    throw config_error("--format must be text, kv or json");
  }
  const auto options = a.in.options();
  const ScoreResult r = score_files(a.train, a.ref, a.hyp, options, a.per_utterance_fp);
  emit(render_score(r, a.format), a.output, out);
  if (!a.tp_words_output.empty()) {
    std::string text;
    for (const auto& [w, n] : r.oov.tp_words) text += w + "\t" + std::to_string(n) + "\n";
    write_file_atomic(a.tp_words_output, text);
  }
  return kOk;
}

struct StatsArgs {
  std::string model;
  std::string input;
  std::string out_dir = ".";
  std::string mode;
  double p = 0.1;
  double alpha = 0.1;
  std::string l = "inf";
  std::uint64_t seed = 0;
  std::size_t epochs = 100;
  std::size_t threads = 1;
  std::string train;
  std::string ref;
  std::string hyp;
  CommonInput in;
};

inline int cmd_stats(const StatsArgs& a, std::ostream& out) {
  if (a.epochs < 1) throw config_error("--epochs must be at least 1");
  if (a.threads < 1) throw config_error("--threads must be at least 1");
  const bool want_oov = !a.train.empty() || !a.ref.empty() || !a.hyp.empty();
  if (want_oov && (a.train.empty() || a.ref.empty() || a.hyp.empty())) {
    throw config_error("--train, --ref and --hyp must be given together");
  }
  stream_config(a.mode, a.p, a.alpha, a.l, a.seed, false, true);
  const auto options = a.in.options();
  const SubwordModel model = load_model(a.model);
  const AugmentConfig config = stream_config(a.mode, a.p, a.alpha, a.l, a.seed, false, is_bpe(model));
  config.validate(model);
  if (want_oov && !is_bpe(model)) throw config_error("the OOV token-length profile needs a BPE model");
  const Corpus corpus = read_corpus(a.input, options);

  const TokenStats stats = simulate_epochs(corpus, model, config, a.epochs, a.threads);
  const std::filesystem::path dir(a.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw io_error("cannot create output directory '" + a.out_dir + "'");
  const std::string fp_line = stats_fingerprint(stats, corpus.digest);
  write_file_atomic(dir / "freq_rank.csv", freq_rank_csv(stats, corpus.digest));
  write_file_atomic(dir / "context_scatter.csv", context_scatter_csv(stats, corpus.digest));
  write_file_atomic(dir / "length_hist.csv", length_hist_csv(length_histogram(stats), fp_line));

  out << "epochs " << stats.epochs << "\n";
  out << "token_occurrences " << stats.total_occurrences << "\n";
  out << "distinct_tokens " << stats.tokens.size() << "\n";
  if (stats.total_occurrences > 0) {
    out << "short_share_len1_percent " << fixed(short_token_share(stats, 1), 2) << "\n";
    out << "short_share_len2_percent " << fixed(short_token_share(stats, 2), 2) << "\n";
  }
  if (want_oov) {
    const ScoreResult r = score_files(a.train, a.ref, a.hyp, options, false);
    const auto profile = oov_token_length_profile(std::get<BpeModel>(model), r.oov.tp_words);
    write_file_atomic(dir / "oov_length.csv", length_hist_csv(profile.lengths, fp_line));
    if (profile.empty()) {
      out << "oov_profile empty (no correctly emitted OOV words)\n";
    } else {
      out << "oov_short_share_len1to3_percent " << fixed(profile.short_share_percent(), 2) << "\n";
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Subword tokenization and evaluation toolkit", "subword"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Learn a BPE merge table or a unigram model");
  train_cmd->add_option("--kind", train.kind, "Model kind: bpe or ulm")->required();
  train_cmd->add_option("--input", train.input, "Training corpus, one utterance per line ('-' = stdin)")->required();
  train_cmd->add_option("--vocab-size", train.vocab_size, "Target vocabulary size")->required();
  train_cmd->add_option("--output", train.output, "Model path (BPE also writes <path>.vocab)")->required();
  train_cmd->add_option("--eow", train.eow, "End-of-word mark")->capture_default_str();
  train_cmd->add_option("--min-frequency", train.min_frequency, "BPE: minimum pair frequency to merge")
      ->capture_default_str();
  train_cmd->add_option("--max-piece-len", train.max_piece_len, "ULM: longest seed piece in characters")
      ->capture_default_str();
  train_cmd->add_option("--seed-size", train.seed_size, "ULM: seed candidate limit")->capture_default_str();
  train_cmd->add_option("--shrink", train.shrink, "ULM: vocabulary kept per pruning round")->capture_default_str();
  train_cmd->add_option("--em-iters", train.em_iters, "ULM: EM passes per round")->capture_default_str();
  train.in.add_to(train_cmd, true);

  EncodeArgs enc;
  auto* encode_cmd = app.add_subcommand("encode", "Segment text (deterministic unless --p is given)");
  encode_cmd->add_option("--model", enc.model, "Model path")->required();
  encode_cmd->add_option("--input", enc.input, "Input text ('-' = stdin)")->capture_default_str();
  encode_cmd->add_option("--output", enc.output, "Output path (default stdout)");
  encode_cmd->add_option("--p", enc.p, "BPE-dropout probability");
  encode_cmd->add_option("--seed", enc.seed, "Random seed")->capture_default_str();
  encode_cmd->add_flag("--ids", enc.ids, "Print token ids instead of tokens");
  encode_cmd->add_option("--nbest", enc.nbest, "ULM: print the N best segmentations of every word");
  enc.in.add_to(encode_cmd);

  SampleArgs smp;
  auto* sample_cmd = app.add_subcommand("sample", "Sample segmentations (BPE-dropout or unigram sampling)");
  sample_cmd->add_option("--model", smp.model, "Model path")->required();
  sample_cmd->add_option("--input", smp.input, "Input text ('-' = stdin)")->capture_default_str();
  sample_cmd->add_option("--output", smp.output, "Output path (default stdout)");
  sample_cmd->add_option("--p", smp.p, "BPE-dropout probability")->capture_default_str();
  sample_cmd->add_option("--alpha", smp.alpha, "ULM sampling temperature")->capture_default_str();
  sample_cmd->add_option("--l", smp.l, "ULM candidate list size, or 'inf' for the full lattice")
      ->capture_default_str();
  sample_cmd->add_option("--seed", smp.seed, "Random seed")->capture_default_str();
  sample_cmd->add_flag("--ids", smp.ids, "Print token ids instead of tokens");
  smp.in.add_to(sample_cmd);

  StreamArgs st;
  st.threads = default_threads();
  auto* stream_cmd = app.add_subcommand("stream", "Tokenize one training epoch (ids + .tokens sibling)");
  stream_cmd->add_option("--model", st.model, "Model path")->required();
  stream_cmd->add_option("--input", st.input, "Corpus ('-' = stdin)")->required();
  stream_cmd->add_option("--output", st.output, "Id stream path (default stdout; file output adds <path>.tokens)");
  stream_cmd->add_option("--index-output", st.index_output, "Write the id<TAB>token index here");
  stream_cmd->add_option("--mode", st.mode,
                         "deterministic-bpe, bpe-dropout, ulm-viterbi or ulm-sample "
                         "(default: the stochastic mode for the model kind)");
  stream_cmd->add_option("--p", st.p, "BPE-dropout probability")->capture_default_str();
  stream_cmd->add_option("--alpha", st.alpha, "ULM sampling temperature")->capture_default_str();
  stream_cmd->add_option("--l", st.l, "ULM candidate list size or 'inf'")->capture_default_str();
  stream_cmd->add_option("--seed", st.seed, "Random seed")->capture_default_str();
  stream_cmd->add_option("--epoch", st.epoch, "Epoch number")->capture_default_str();
  stream_cmd->add_option("--threads", st.threads, "Worker threads (default $SUBWORD_THREADS or 1)")
      ->capture_default_str();
  stream_cmd->add_flag("--eval", st.eval, "Evaluation data: force the deterministic counterpart of --mode");
  st.in.add_to(stream_cmd);

  ScoreArgs sc;
  auto* score_cmd = app.add_subcommand("score", "WER, CER and OOV precision/recall/F-score");
  score_cmd->add_option("--train", sc.train, "Training transcripts (defines OOV words)")->required();
  score_cmd->add_option("--ref", sc.ref, "Reference transcripts")->required();
  score_cmd->add_option("--hyp", sc.hyp, "Hypothesis transcripts")->required();
  score_cmd->add_option("--output", sc.output, "Report path (default stdout)");
  score_cmd->add_option("--format", sc.format, "text, kv or json")->capture_default_str();
  score_cmd->add_option("--tp-words", sc.tp_words_output, "Write correctly emitted OOV words here");
  score_cmd->add_flag("--per-utterance-fp", sc.per_utterance_fp,
                      "Count fp against the utterance's own reference instead of the whole set");
  sc.in.add_to(score_cmd);

  StatsArgs sa;
  sa.threads = default_threads();
  auto* stats_cmd = app.add_subcommand("stats", "Token statistics over simulated epochs (CSV reports)");
  stats_cmd->add_option("--model", sa.model, "Model path")->required();
  stats_cmd->add_option("--input", sa.input, "Training corpus")->required();
  stats_cmd->add_option("--out-dir", sa.out_dir, "Directory for the CSV reports")->capture_default_str();
  stats_cmd->add_option("--mode", sa.mode, "Augmentation mode (default: stochastic mode for the model)");
  stats_cmd->add_option("--p", sa.p, "BPE-dropout probability")->capture_default_str();
  stats_cmd->add_option("--alpha", sa.alpha, "ULM sampling temperature")->capture_default_str();
  stats_cmd->add_option("--l", sa.l, "ULM candidate list size or 'inf'")->capture_default_str();
  stats_cmd->add_option("--seed", sa.seed, "Random seed")->capture_default_str();
  stats_cmd->add_option("--epochs", sa.epochs, "Epochs to simulate")->capture_default_str();
  stats_cmd->add_option("--threads", sa.threads, "Worker threads")->capture_default_str();
  stats_cmd->add_option("--train", sa.train, "Training transcripts (OOV length profile)");
  stats_cmd->add_option("--ref", sa.ref, "Reference transcripts (OOV length profile)");
  stats_cmd->add_option("--hyp", sa.hyp, "Hypothesis transcripts (OOV length profile)");
  sa.in.add_to(stats_cmd);

  auto* version_cmd = app.add_subcommand("version", "Print tool and model-format versions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (*train_cmd) return cmd_train(train, out);
    if (*encode_cmd) return cmd_encode(enc, out);
    if (*sample_cmd) return cmd_sample(smp, out);
    if (*stream_cmd) return cmd_stream(st, out);
    if (*score_cmd) return cmd_score(sc, out);
    if (*stats_cmd) return cmd_stats(sa, out);
    if (*version_cmd) {
      out << "subword " << kVersion << "\nmodel-format v" << kModelFormatVersion << "\n";
      return kOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kConfigError;
}

}  // namespace subword::cli
