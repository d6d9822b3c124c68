#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace icpc {

/// A single token produced by the word-boundary tokenizer. Byte spans are
/// half-open [begin, end) offsets into the source string; spans of
/// consecutive tokens never overlap and increase strictly in source order.
/// Whitespace is never a token, so the bytes between two adjacent tokens
/// are exactly the skipped whitespace.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
  bool is_word = false;
  std::size_t sentence_index = 0;
};

/// Granularity of the removable lexical units.
enum class Granularity { kWord, kPhrase, kClause };

std::string_view to_string(Granularity g);

/// Parses "word" | "phrase" | "clause"; throws ConfigError otherwise.
Granularity granularity_from_string(std::string_view name);

/// A span of word tokens that forms one removable unit of compression.
/// Units partition the word-bearing tokens of a document and never straddle
/// a sentence boundary. `text` is the verbatim source slice
/// [char_begin, char_end), so interior punctuation and gaps are preserved.
struct LexicalUnit {
  std::size_t unit_id = 0;
  std::vector<std::size_t> token_indices;  // indices of word tokens, ascending
  Granularity granularity = Granularity::kWord;
  std::size_t char_begin = 0;
  std::size_t char_end = 0;
  std::string text;
};

}  // namespace icpc
