#pragma once

#include <string>
#include <variant>

#include "subword/bpe.hpp"
#include "subword/error.hpp"
#include "subword/text_io.hpp"
#include "subword/ulm.hpp"

namespace subword {

using SubwordModel = std::variant<BpeModel, UnigramModel>;

inline const std::string& eow_mark(const SubwordModel& model) {
  return std::visit([](const auto& m) -> const std::string& { return m.eow_mark(); }, model);
}

inline bool is_bpe(const SubwordModel& model) { return std::holds_alternative<BpeModel>(model); }

// Loads either model kind, dispatching on the header line.
inline SubwordModel load_model(const std::string& path) {
  const std::string text = read_file(path);
  if (text.rfind("#subword-bpe ", 0) == 0) return parse_bpe(text, read_file(bpe_vocab_path(path)));
  if (text.rfind("#subword-ulm ", 0) == 0) return parse_ulm(text);
  throw format_error("'" + path + "' is not a subword model file");
}

inline void save_model(const SubwordModel& model, const std::string& path) {
  if (is_bpe(model)) {
    save_bpe(std::get<BpeModel>(model), path);
  } else {
    save_ulm(std::get<UnigramModel>(model), path);
  }
}

}  // namespace subword
