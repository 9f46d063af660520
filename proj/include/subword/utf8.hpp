#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "subword/error.hpp"

namespace subword::utf8 {

// Length of the sequence introduced by lead byte `c`, or 0 if `c` cannot start one.
inline std::size_t sequence_length(unsigned char c) noexcept {
  if (c < 0x80) return 1;
  if (c >= 0xC2 && c <= 0xDF) return 2;
  if (c >= 0xE0 && c <= 0xEF) return 3;
  if (c >= 0xF0 && c <= 0xF4) return 4;
  return 0;
}

// Decodes one code point starting at `pos`; advances `pos`. Throws decode_error
// on malformed input (overlong forms, surrogates, values above U+10FFFF).
inline char32_t decode_one(std::string_view s, std::size_t& pos) {
  const auto lead = static_cast<unsigned char>(s[pos]);
  const std::size_t len = sequence_length(lead);
  if (len == 0) throw decode_error("invalid UTF-8 lead byte", pos);
  if (pos + len > s.size()) throw decode_error("truncated UTF-8 sequence", pos);
  if (len == 1) {
    ++pos;
    return lead;
  }
  char32_t cp = lead & (0xFF >> (len + 1));
  for (std::size_t k = 1; k < len; ++k) {
    const auto c = static_cast<unsigned char>(s[pos + k]);
    if ((c & 0xC0) != 0x80) throw decode_error("invalid UTF-8 continuation byte", pos + k);
    cp = (cp << 6) | (c & 0x3F);
  }
  if ((len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000)) {
    throw decode_error("overlong UTF-8 sequence", pos);
  }
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    throw decode_error("UTF-8 sequence encodes an invalid code point", pos);
  }
  pos += len;
  return cp;
}

inline void validate(std::string_view s, std::size_t base_offset = 0) {
  std::size_t pos = 0;
  try {
    while (pos < s.size()) decode_one(s, pos);
  } catch (const decode_error& e) {
    throw decode_error("invalid UTF-8", base_offset + e.offset());
  }
}

inline std::vector<char32_t> decode(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) out.push_back(decode_one(s, pos));
  return out;
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode(const std::vector<char32_t>& cps) {
  std::string out;
  for (char32_t cp : cps) append(out, cp);
  return out;
}

// Splits valid UTF-8 into one string per code point.
inline std::vector<std::string> split_chars(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t start = pos;
    decode_one(s, pos);
    out.emplace_back(s.substr(start, pos - start));
  }
  return out;
}

inline std::size_t length(std::string_view s) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < s.size()) {
    decode_one(s, pos);
    ++n;
  }
  return n;
}

}  // namespace subword::utf8
