#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "icpc/token.hpp"

namespace icpc {

/// A case-folded set of words loaded from a one-entry-per-line UTF-8 file.
class WordSet {
 public:
  WordSet() = default;
  explicit WordSet(std::span<const std::string_view> entries);

  static WordSet from_file(const std::filesystem::path& path);

  /// Parses one-entry-per-line text; blank lines and '#' comments skipped.
  static WordSet from_text(std::string_view data);

  bool contains(std::string_view word) const;  // case-insensitive
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_set<std::string> entries_;
};

/// Bundled abbreviation list ("e.g.", "dr.", ...) used by split_sentences.
const WordSet& default_abbreviations();

/// Bundled closed-class function words (articles, prepositions,
/// conjunctions, auxiliaries) used by phrase segmentation.
const WordSet& default_stop_words();

/// Splits `text` at Unicode default word boundaries (UAX #29, root locale).
/// Whitespace is dropped; punctuation marks become their own tokens with
/// is_word=false. Empty text yields an empty list.
std::vector<Token> tokenize(std::string_view text);

/// Assigns sentence_index in place: the index increments after a run of
/// sentence-final ". ! ?" tokens, except when a "." closes an entry of the
/// abbreviation list (the abbreviation is matched against the preceding
/// word token plus the period, case-insensitively).
void split_sentences(std::vector<Token>& tokens,
                     const WordSet& abbreviations = default_abbreviations());

/// Groups word tokens into lexical units at the requested granularity.
/// `source` must be the string the tokens were produced from; unit text is
/// the verbatim source slice covering the unit's tokens.
///
///  - Word:   one unit per word token.
///  - Phrase: within a sentence, maximal runs of word tokens, split at every
///            punctuation token; a function word closes the current run and
///            opens a new unit together with the content words after it.
///  - Clause: within a sentence, split at "," ";" ":" and dashes; a
///            coordinating conjunction (and/but/or/so/yet) begins a new unit
///            when it follows a comma or starts a run.
std::vector<LexicalUnit> segment(std::string_view source,
                                 std::span<const Token> tokens,
                                 Granularity granularity,
                                 const WordSet& stop_words = default_stop_words());

}  // namespace icpc
