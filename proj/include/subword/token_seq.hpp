#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subword/utf8.hpp"

namespace subword {

inline constexpr std::string_view kDefaultEowMark = "</w>";
inline constexpr int kModelFormatVersion = 1;

// One segmentation of a word or utterance. `unknown[i]` marks tokens outside
// the model vocabulary (single characters never seen in training).
struct TokenSeq {
  std::vector<std::string> tokens;
  std::vector<bool> unknown;

  TokenSeq() = default;
  TokenSeq(std::initializer_list<std::string> init) : tokens(init), unknown(tokens.size(), false) {}
  explicit TokenSeq(std::vector<std::string> toks)
      : tokens(std::move(toks)), unknown(tokens.size(), false) {}

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }

  bool has_unknown() const noexcept {
    for (bool u : unknown) {
      if (u) return true;
    }
    return false;
  }

  void append(const TokenSeq& other) {
    tokens.insert(tokens.end(), other.tokens.begin(), other.tokens.end());
    unknown.insert(unknown.end(), other.unknown.begin(), other.unknown.end());
  }

  // Equality compares token strings only.
  bool operator==(const TokenSeq& other) const { return tokens == other.tokens; }
};

inline bool ends_with(std::string_view s, std::string_view suffix) noexcept {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Initial symbols of a word: one per code point, the end-of-word mark glued
// to the final one.
inline std::vector<std::string> word_symbols(std::string_view word, std::string_view eow_mark) {
  std::vector<std::string> symbols = utf8::split_chars(word);
  if (!symbols.empty()) symbols.back() += eow_mark;
  return symbols;
}

// Character length of a token, not counting a trailing end-of-word mark.
inline std::size_t token_length(std::string_view token, std::string_view eow_mark) {
  if (!eow_mark.empty() && ends_with(token, eow_mark)) token.remove_suffix(eow_mark.size());
  return utf8::length(token);
}

// Concatenates tokens; a token carrying the end-of-word mark closes a word.
// Words are joined by single spaces.
inline std::string detokenize(const std::vector<std::string>& tokens, std::string_view eow_mark) {
  std::string out;
  bool pending_space = false;
  for (const auto& t : tokens) {
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    if (!eow_mark.empty() && ends_with(t, eow_mark)) {
      out.append(t, 0, t.size() - eow_mark.size());
      pending_space = true;
    } else {
      out += t;
    }
  }
  return out;
}

inline std::string detokenize(const TokenSeq& seq, std::string_view eow_mark) {
  return detokenize(seq.tokens, eow_mark);
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace subword
