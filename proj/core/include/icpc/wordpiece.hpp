#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace icpc {

/// WordPiece vocabulary (BERT style): one token per line, line number = id,
/// "##" prefix marks continuation pieces. Encoding lower-cases the input,
/// isolates punctuation, then greedily matches the longest piece.
class WordPieceVocab {
 public:
  explicit WordPieceVocab(std::vector<std::string> tokens, bool lower_case = true);

  /// Throws IoError on unreadable files, BackendError when the required
  /// special tokens ([CLS] [SEP] [MASK] [UNK] [PAD]) are missing.
  static WordPieceVocab from_file(const std::filesystem::path& path, bool lower_case = true);

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(std::int32_t id) const { return tokens_.at(static_cast<std::size_t>(id)); }

  /// Sub-token ids for `text`, without any special tokens. Unknown words map
  /// to [UNK]. Empty text yields an empty sequence.
  std::vector<std::int32_t> encode(std::string_view text) const;

  std::int32_t cls_id() const { return cls_id_; }
  std::int32_t sep_id() const { return sep_id_; }
  std::int32_t mask_id() const { return mask_id_; }
  std::int32_t unk_id() const { return unk_id_; }
  std::int32_t pad_id() const { return pad_id_; }

 private:
  std::int32_t find(std::string_view token) const;
  std::int32_t require(std::string_view token) const;

  std::vector<std::string> tokens_;
  std::unordered_map<std::string_view, std::int32_t> index_;
  bool lower_case_ = true;
  std::int32_t cls_id_ = -1, sep_id_ = -1, mask_id_ = -1, unk_id_ = -1, pad_id_ = -1;
};

}  // namespace icpc
