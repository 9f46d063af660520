#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subword {

// Base for every error raised by the library. The CLI maps the concrete
// types onto process exit codes.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters (vocab size below alphabet, p outside [0,1], ...).
class config_error : public error {
 public:
  using error::error;
};

// Training cannot reach the requested model (e.g. fewer candidates than target).
class infeasible_error : public error {
 public:
  using error::error;
};

class io_error : public error {
 public:
  using error::error;
};

// Malformed model / report file contents.
class format_error : public error {
 public:
  using error::error;
};

class decode_error : public error {
 public:
  decode_error(const std::string& what, std::size_t offset)
      : error(what + " at byte offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class unknown_token_error : public error {
 public:
  explicit unknown_token_error(const std::string& token)
      : error("unknown token '" + token + "'"), token_(token) {}

  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

// Reference / hypothesis files that cannot be paired line by line or by id.
class pairing_error : public error {
 public:
  pairing_error(const std::string& what, std::size_t line)
      : error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace subword
