#include "icpc/wordpiece.hpp"

#include <fstream>

#include "icpc/error.hpp"
#include "icpc/segmenter.hpp"
#include "icpc/text.hpp"

namespace icpc {

WordPieceVocab::WordPieceVocab(std::vector<std::string> tokens, bool lower_case)
    : tokens_(std::move(tokens)), lower_case_(lower_case) {
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    index_.emplace(tokens_[i], static_cast<std::int32_t>(i));
  }
  cls_id_ = require("[CLS]");
  sep_id_ = require("[SEP]");
  mask_id_ = require("[MASK]");
  unk_id_ = require("[UNK]");
  pad_id_ = require("[PAD]");
}

WordPieceVocab WordPieceVocab::from_file(const std::filesystem::path& path, bool lower_case) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open vocabulary file: " + path.string());
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    tokens.push_back(line);
  }
  if (tokens.empty()) throw BackendError("empty vocabulary file: " + path.string());
  return WordPieceVocab(std::move(tokens), lower_case);
}

std::int32_t WordPieceVocab::find(std::string_view token) const {
  const auto it = index_.find(token);
  return it == index_.end() ? -1 : it->second;
}

std::int32_t WordPieceVocab::require(std::string_view token) const {
  const std::int32_t id = find(token);
  if (id < 0) {
    throw BackendError("vocabulary mismatch: missing special token " + std::string(token));
  }
  return id;
}

std::vector<std::int32_t> WordPieceVocab::encode(std::string_view text) const {
  std::vector<std::int32_t> ids;
  // Basic tokenization (word boundaries, punctuation isolated), then greedy
  // longest-match WordPiece with "##" continuation pieces per word.
  for (const Token& t : tokenize(text)) {
    const std::string word = lower_case_ ? fold_case(t.text) : t.text;
    const std::size_t before = ids.size();
    std::size_t pos = 0;
    bool failed = false;
    while (pos < word.size()) {
      std::size_t len = word.size() - pos;
      std::int32_t match = -1;
      while (len > 0) {
        std::string candidate = pos > 0 ? "##" + word.substr(pos, len) : word.substr(pos, len);
        match = find(candidate);
        if (match >= 0) break;
        // Never split inside a UTF-8 sequence.
        do {
          --len;
        } while (len > 0 && (static_cast<unsigned char>(word[pos + len]) & 0xC0) == 0x80);
      }
      if (match < 0) {
        failed = true;
        break;
      }
      ids.push_back(match);
      pos += len;
    }
    if (failed) {
      ids.resize(before);
      ids.push_back(unk_id_);
    }
  }
  return ids;
}

}  // namespace icpc
