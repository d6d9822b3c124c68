#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "icpc/scorer.hpp"
#include "icpc/token.hpp"

namespace icpc {

struct CompressionConfig {
  double alpha = 1.0;               // weight of the similarity term
  double ratio = 1.0;               // target keep fraction, (0, 1]
  std::size_t window_k = 3;         // neighbor units per side
  Granularity granularity = Granularity::kWord;
  std::size_t chunk_size = 512;     // encoder positional limit, in tokens
  std::size_t min_keep = 1;         // per-chunk floor on kept units
  std::uint64_t seed = 0;           // baselines only

  /// Throws ConfigError unless 0 < ratio <= 1, window_k >= 1 and
  /// chunk_size >= 2*window_k + 1.
  void validate() const;
};

/// Per-unit redundancy score. total = alpha * similarity_term +
/// log_prob_term; high totals mark units that are similar to their
/// neighbors and predictable from context, i.e. candidates for removal.
struct LossScore {
  std::size_t unit_id = 0;
  double similarity_term = 0.0;
  double log_prob_term = 0.0;
  double total = 0.0;
};

struct CompressionResult {
  std::string original_text;
  std::string compressed_text;
  std::vector<std::string> unit_texts;  // aligned with scores, source order
  std::vector<LossScore> scores;        // source order
  std::vector<std::size_t> kept;        // kept unit ids, ascending
  double achieved_ratio = 1.0;          // |kept| / |units|, 1.0 when no units
  double threshold = 0.0;               // percentile cut over all unit totals
};

/// Linear-interpolation percentile over a non-empty list: with the values
/// sorted ascending as a_0..a_{n-1} and h = (n-1)*p/100, returns
/// a_floor(h) + frac(h) * (a_floor(h)+1 - a_floor(h)). Matches the
/// numpy.percentile default. Throws ConfigError on empty input or p outside
/// [0, 100].
double percentile(std::span<const double> values, double p);

/// Scores unit i: the similarity term sums cosine over existing neighbors
/// within +-window_k (clipped at the ends, no padding); the log-prob term
/// comes from the backend. unit_id is the index within `unit_texts`.
LossScore unit_loss(std::size_t i,
                    std::span<const std::string> unit_texts,
                    std::span<const Embedding> embeddings,
                    ScorerBackend& backend,
                    const CompressionConfig& cfg);

/// Keeps the units scoring strictly below the (ratio*100)-th percentile of
/// the totals; ties at the threshold are removed. When fewer than min_keep
/// survive, the lowest-total units (ties broken by unit_id) are added back
/// until min(min_keep, n) are kept. Returns kept unit ids ascending.
std::vector<std::size_t> filter_units(std::span<const LossScore> scores,
                                      const CompressionConfig& cfg);

/// Concatenates the kept units in source order, reproducing each unit's
/// original bytes (including intra-unit gaps) and any punctuation tokens
/// that immediately follow it; consecutive kept units are joined with a
/// single space. `kept_ids` must be sorted ascending.
std::string merge_units(std::string_view source,
                        std::span<const Token> tokens,
                        std::span<const LexicalUnit> units,
                        std::span<const std::size_t> kept_ids);

struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Greedily packs whole sentences into consecutive ranges of at most
/// chunk_size tokens. A single sentence longer than chunk_size is split at
/// chunk_size boundaries and its pieces are not mixed with other sentences.
std::vector<TokenRange> chunk(std::span<const Token> tokens, std::size_t chunk_size);

/// Full pipeline: tokenize, sentence-split, chunk, then per chunk segment,
/// embed, score, filter at the per-chunk percentile and merge. Chunk outputs
/// are joined with a single space; scores and kept ids are reported globally
/// in source order. ratio == 1.0 keeps every unit (the identity boundary;
/// the strict-inequality filter applies below it). Backend failures are
/// rethrown with the chunk index attached.
CompressionResult compress(std::string_view text,
                           const CompressionConfig& cfg,
                           ScorerBackend& backend);

/// Baseline: keeps a uniformly random subset of exactly round(ratio * n)
/// units drawn with SplitMix64(cfg.seed), merged like compress. Scores are
/// all zero.
CompressionResult random_deletion(std::string_view text, const CompressionConfig& cfg);

}  // namespace icpc
