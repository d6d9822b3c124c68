#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "icpc/scorer.hpp"
#include "icpc/wordpiece.hpp"

namespace icpc {

/// One forward pass of the encoder. Buffers are row-major:
/// logits[pos * vocab_size + v], hidden[pos * hidden_dim + d].
struct EncoderOutput {
  std::vector<float> logits;
  std::vector<float> hidden;
  std::size_t seq_len = 0;
  std::size_t vocab_size = 0;
  std::size_t hidden_dim = 0;
};

/// A loaded masked-language-model encoder. Inputs are token-id and
/// attention-mask sequences; outputs are per-position vocabulary logits and
/// per-position hidden states. A session serves one execution stream at a
/// time but may be moved between threads.
class EncoderSession {
 public:
  virtual ~EncoderSession() = default;

  virtual std::size_t vocab_size() const = 0;
  virtual std::size_t max_positions() const = 0;

  virtual EncoderOutput run(std::span<const std::int32_t> token_ids,
                            std::span<const std::int32_t> attention_mask) = 0;
};

/// ScorerBackend driving an EncoderSession.
///
/// masked_log_prob builds [CLS] ctx... target ctx... [SEP] from the units
/// within +-window_k of the target, replaces every sub-token of the target
/// with [MASK] simultaneously, and sums the natural-log softmax probability
/// of each original sub-token at its masked position. Masking the whole unit
/// at once keeps the model from copying the unit's own surface form.
///
/// embed runs the unmasked chunk once and mean-pools final hidden states
/// over each unit's sub-token positions, L2-normalized.
class EncoderBackend final : public ScorerBackend {
 public:
  EncoderBackend(std::shared_ptr<EncoderSession> session, WordPieceVocab vocab);

  std::vector<Embedding> embed(std::span<const std::string> unit_texts) override;
  double masked_log_prob(std::span<const std::string> unit_texts,
                         std::size_t target_index,
                         std::size_t window_k) override;

 private:
  void check_length(std::size_t seq_len) const;

  std::shared_ptr<EncoderSession> session_;
  WordPieceVocab vocab_;
};

/// Opens an ONNX model as an encoder session. Only available when the
/// library was built with ONNX Runtime support; otherwise throws
/// BackendError.
std::shared_ptr<EncoderSession> open_onnx_session(const std::string& model_path);

}  // namespace icpc
