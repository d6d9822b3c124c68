#include "icpc/encoder.hpp"

#include <algorithm>
#include <cmath>

#include "icpc/error.hpp"

namespace icpc {

namespace {

// Natural-log softmax probability of `index` within one logit row.
double log_softmax_at(std::span<const float> row, std::size_t index) {
  float max_logit = row[0];
  for (const float v : row) max_logit = std::max(max_logit, v);
  double sum = 0.0;
  for (const float v : row) sum += std::exp(static_cast<double>(v) - max_logit);
  return static_cast<double>(row[index]) - max_logit - std::log(sum);
}

}  // namespace

EncoderBackend::EncoderBackend(std::shared_ptr<EncoderSession> session, WordPieceVocab vocab)
    : session_(std::move(session)), vocab_(std::move(vocab)) {
  if (!session_) throw BackendError("encoder backend needs a session");
  if (vocab_.size() != session_->vocab_size()) {
    throw BackendError("vocabulary mismatch: vocab has " + std::to_string(vocab_.size()) +
                       " entries, model expects " + std::to_string(session_->vocab_size()));
  }
}

void EncoderBackend::check_length(std::size_t seq_len) const {
  if (seq_len > session_->max_positions()) {
    throw BackendError("sequence of " + std::to_string(seq_len) +
                       " sub-tokens exceeds the model's positional limit of " +
                       std::to_string(session_->max_positions()) +
                       "; lower chunk_size so chunks fit");
  }
}

std::vector<Embedding> EncoderBackend::embed(std::span<const std::string> unit_texts) {
  // One unmasked pass over the whole chunk; mean-pool each unit's positions.
  std::vector<std::int32_t> ids{vocab_.cls_id()};
  std::vector<std::pair<std::size_t, std::size_t>> unit_spans;
  for (const auto& text : unit_texts) {
    const std::vector<std::int32_t> sub = vocab_.encode(text);
    unit_spans.emplace_back(ids.size(), ids.size() + sub.size());
    ids.insert(ids.end(), sub.begin(), sub.end());
  }
  ids.push_back(vocab_.sep_id());
  check_length(ids.size());

  const std::vector<std::int32_t> attention(ids.size(), 1);
  const EncoderOutput out = session_->run(ids, attention);
  if (out.seq_len != ids.size() || out.hidden_dim == 0) {
    throw BackendError("encoder returned malformed hidden states");
  }

  std::vector<Embedding> embeddings;
  embeddings.reserve(unit_texts.size());
  for (const auto& [begin, end] : unit_spans) {
    Embedding e(out.hidden_dim, 0.0);
    if (end > begin) {
      for (std::size_t pos = begin; pos < end; ++pos) {
        for (std::size_t d = 0; d < out.hidden_dim; ++d) {
          e[d] += static_cast<double>(out.hidden[pos * out.hidden_dim + d]);
        }
      }
      const double inv = 1.0 / static_cast<double>(end - begin);
      for (double& v : e) v *= inv;
      l2_normalize(e);
    }
    embeddings.push_back(std::move(e));
  }
  return embeddings;
}

double EncoderBackend::masked_log_prob(std::span<const std::string> unit_texts,
                                       std::size_t target_index,
                                       std::size_t window_k) {
  if (target_index >= unit_texts.size()) {
    throw BackendError("masked_log_prob: target index out of range");
  }
  const std::size_t begin = target_index >= window_k ? target_index - window_k : 0;
  const std::size_t end = std::min(unit_texts.size(), target_index + window_k + 1);

  // Every sub-token of the target is masked simultaneously; the window
  // units on both sides provide the conditioning context.
  std::vector<std::int32_t> ids{vocab_.cls_id()};
  std::vector<std::pair<std::size_t, std::int32_t>> masked;  // position, original id
  for (std::size_t u = begin; u < end; ++u) {
    const std::vector<std::int32_t> sub = vocab_.encode(unit_texts[u]);
    if (u == target_index) {
      for (const std::int32_t original : sub) {
        masked.emplace_back(ids.size(), original);
        ids.push_back(vocab_.mask_id());
      }
    } else {
      ids.insert(ids.end(), sub.begin(), sub.end());
    }
  }
  ids.push_back(vocab_.sep_id());
  check_length(ids.size());
  if (masked.empty()) return 0.0;  // unit with no encodable sub-token

  const std::vector<std::int32_t> attention(ids.size(), 1);
  const EncoderOutput out = session_->run(ids, attention);
  if (out.seq_len != ids.size() || out.vocab_size != vocab_.size()) {
    throw BackendError("encoder returned malformed logits");
  }

  double total = 0.0;
  for (const auto& [pos, original] : masked) {
    const std::span<const float> row{out.logits.data() + pos * out.vocab_size,
                                     out.vocab_size};
    total += log_softmax_at(row, static_cast<std::size_t>(original));
  }
  return total;
}

}  // namespace icpc
