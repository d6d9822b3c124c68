#include "icpc/segmenter.hpp"

#include <unicode/ubrk.h>
#include <unicode/uchar.h>
#include <unicode/utext.h>

#include <array>
#include <memory>
#include <sstream>

#include "icpc/error.hpp"
#include "icpc/text.hpp"

namespace icpc {

namespace {

// Word-break rule status below UBRK_WORD_NUMBER means "no word": spaces and
// punctuation.
bool is_word_status(std::int32_t rule_status) {
  return rule_status >= UBRK_WORD_NUMBER;
}

bool all_whitespace(std::string_view segment) {
  for (const char32_t cp : decode_utf8(segment)) {
    if (!u_isUWhiteSpace(static_cast<UChar32>(cp))) return false;
  }
  return true;
}

UBreakIterator* word_break_iterator() {
  // One iterator per thread: ICU break iterators are cheap to reuse but not
  // safe to share. The root locale pins the Unicode default rules.
  thread_local std::unique_ptr<UBreakIterator, decltype(&ubrk_close)> iter{
      nullptr, &ubrk_close};
  if (!iter) {
    UErrorCode status = U_ZERO_ERROR;
    iter.reset(ubrk_open(UBRK_WORD, "root", nullptr, 0, &status));
    if (U_FAILURE(status)) {
      throw Error(std::string("failed to open ICU word break iterator: ") +
                  u_errorName(status));
    }
  }
  return iter.get();
}

const std::array<std::string_view, 5> kCoordinatingConjunctions = {
    "and", "but", "or", "so", "yet"};

bool is_coordinating_conjunction(std::string_view word) {
  const std::string folded = fold_case(word);
  for (const auto c : kCoordinatingConjunctions) {
    if (folded == c) return true;
  }
  return false;
}

bool is_clause_delimiter(std::string_view punct) {
  return punct == "," || punct == ";" || punct == ":" || punct == "—";
}

bool is_sentence_terminator(const Token& t) {
  return !t.is_word && (t.text == "." || t.text == "!" || t.text == "?");
}

}  // namespace

WordSet::WordSet(std::span<const std::string_view> entries) {
  for (const auto e : entries) entries_.insert(fold_case(e));
}

WordSet WordSet::from_file(const std::filesystem::path& path) {
  std::string data;
  {
    std::unique_ptr<FILE, decltype(&fclose)> f{fopen(path.string().c_str(), "rb"), &fclose};
    if (!f) throw IoError("cannot open word list: " + path.string());
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f.get())) > 0) data.append(buf.data(), n);
  }
  return from_text(data);
}

WordSet WordSet::from_text(std::string_view data) {
  WordSet set;
  std::istringstream in{std::string(data)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    set.entries_.insert(fold_case(line));
  }
  return set;
}

bool WordSet::contains(std::string_view word) const {
  return entries_.contains(fold_case(word));
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  if (text.empty()) return tokens;

  UErrorCode status = U_ZERO_ERROR;
  UText utext = UTEXT_INITIALIZER;
  utext_openUTF8(&utext, text.data(), static_cast<std::int64_t>(text.size()), &status);
  UBreakIterator* iter = word_break_iterator();
  ubrk_setUText(iter, &utext, &status);
  if (U_FAILURE(status)) {
    utext_close(&utext);
    throw Error(std::string("ICU word segmentation failed: ") + u_errorName(status));
  }

  // With a UTF-8 UText the boundary positions are byte offsets.
  std::int32_t start = ubrk_first(iter);
  for (std::int32_t end = ubrk_next(iter); end != UBRK_DONE;
       start = end, end = ubrk_next(iter)) {
    const auto begin_off = static_cast<std::size_t>(start);
    const auto end_off = static_cast<std::size_t>(end);
    const std::string_view segment = text.substr(begin_off, end_off - begin_off);
    const std::int32_t rule_status = ubrk_getRuleStatus(iter);
    if (!is_word_status(rule_status) && all_whitespace(segment)) continue;
    Token t;
    t.text.assign(segment);
    t.begin = begin_off;
    t.end = end_off;
    t.is_word = is_word_status(rule_status);
    tokens.push_back(std::move(t));
  }
  utext_close(&utext);
  return tokens;
}

void split_sentences(std::vector<Token>& tokens, const WordSet& abbreviations) {
  std::size_t sentence = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    tokens[i].sentence_index = sentence;
    if (!is_sentence_terminator(tokens[i])) continue;
    // A run of terminators ("?!", "...") counts as one sentence end.
    if (i + 1 < tokens.size() && is_sentence_terminator(tokens[i + 1])) continue;
    if (tokens[i].text == "." && i > 0) {
      const Token& prev = tokens[i - 1];
      if (prev.is_word && prev.end == tokens[i].begin &&
          abbreviations.contains(prev.text + ".")) {
        continue;
      }
    }
    if (i + 1 < tokens.size()) ++sentence;
  }
}

namespace {

class UnitBuilder {
 public:
  UnitBuilder(std::string_view source, std::span<const Token> tokens, Granularity g)
      : source_(source), tokens_(tokens), granularity_(g) {}

  void push(std::size_t token_index) { run_.push_back(token_index); }
  bool run_empty() const { return run_.empty(); }

  void close() {
    if (run_.empty()) return;
    LexicalUnit unit;
    unit.unit_id = units_.size();
    unit.token_indices = run_;
    unit.granularity = granularity_;
    unit.char_begin = tokens_[run_.front()].begin;
    unit.char_end = tokens_[run_.back()].end;
    unit.text.assign(source_.substr(unit.char_begin, unit.char_end - unit.char_begin));
    units_.push_back(std::move(unit));
    run_.clear();
  }

  std::vector<LexicalUnit> take() && {
    close();
    return std::move(units_);
  }

 private:
  std::string_view source_;
  std::span<const Token> tokens_;
  Granularity granularity_;
  std::vector<std::size_t> run_;
  std::vector<LexicalUnit> units_;
};

}  // namespace

std::vector<LexicalUnit> segment(std::string_view source,
                                 std::span<const Token> tokens,
                                 Granularity granularity,
                                 const WordSet& stop_words) {
  UnitBuilder builder(source, tokens, granularity);
  std::size_t current_sentence = 0;
  bool have_sentence = false;

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (have_sentence && t.sentence_index != current_sentence) builder.close();
    current_sentence = t.sentence_index;
    have_sentence = true;

    switch (granularity) {
      case Granularity::kWord:
        if (t.is_word) {
          builder.push(i);
          builder.close();
        }
        break;
      case Granularity::kPhrase:
        if (!t.is_word) {
          builder.close();
        } else if (stop_words.contains(t.text)) {
          builder.close();
          builder.push(i);
        } else {
          builder.push(i);
        }
        break;
      case Granularity::kClause:
        if (!t.is_word) {
          if (is_clause_delimiter(t.text)) builder.close();
          // Other punctuation stays inside the clause span.
        } else if (is_coordinating_conjunction(t.text) &&
                   (builder.run_empty() ||
                    (i > 0 && !tokens[i - 1].is_word && tokens[i - 1].text == ","))) {
          builder.close();
          builder.push(i);
        } else {
          builder.push(i);
        }
        break;
    }
  }
  return std::move(builder).take();
}

std::string_view to_string(Granularity g) {
  switch (g) {
    case Granularity::kWord: return "word";
    case Granularity::kPhrase: return "phrase";
    case Granularity::kClause: return "clause";
  }
  return "word";
}

Granularity granularity_from_string(std::string_view name) {
  const std::string folded = fold_case(name);
  if (folded == "word") return Granularity::kWord;
  if (folded == "phrase") return Granularity::kPhrase;
  if (folded == "clause") return Granularity::kClause;
  throw ConfigError("unknown granularity: " + std::string(name));
}

}  // namespace icpc
