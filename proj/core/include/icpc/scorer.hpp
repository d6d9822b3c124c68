#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "icpc/embedding.hpp"
#include "icpc/frequency_table.hpp"
#include "icpc/token.hpp"

namespace icpc {

/// Supplies the two signals the unit loss consumes: one embedding per unit
/// for the neighbor-similarity term and a masked log-probability for the
/// prediction term. Both operations must be deterministic for a fixed
/// backend instance and input.
class ScorerBackend {
 public:
  virtual ~ScorerBackend() = default;

  virtual std::vector<Embedding> embed(std::span<const std::string> unit_texts) = 0;

  /// Natural-log probability (<= 0) of the target unit given the units
  /// within +-window_k around it.
  virtual double masked_log_prob(std::span<const std::string> unit_texts,
                                 std::size_t target_index,
                                 std::size_t window_k) = 0;
};

/// Deterministic backend used as a test oracle and for model-free runs:
/// hashed-trigram embeddings plus a Laplace-smoothed unigram estimate.
/// Context-independent by construction, so scores are hand-computable.
/// Pure and safe for concurrent use.
class ReferenceBackend final : public ScorerBackend {
 public:
  explicit ReferenceBackend(FrequencyTable table) : table_(std::move(table)) {}

  /// Builds the unigram table from the document's own units at the given
  /// granularity, so frequent in-document units score as predictable.
  static ReferenceBackend for_document(std::string_view text, Granularity granularity);

  std::vector<Embedding> embed(std::span<const std::string> unit_texts) override;
  double masked_log_prob(std::span<const std::string> unit_texts,
                         std::size_t target_index,
                         std::size_t window_k) override;

  const FrequencyTable& table() const { return table_; }

 private:
  FrequencyTable table_;
};

}  // namespace icpc
