#include "icpc/compressor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "icpc/error.hpp"
#include "icpc/rng.hpp"
#include "icpc/segmenter.hpp"

namespace icpc {

void CompressionConfig::validate() const {
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw ConfigError("ratio must be in (0, 1], got " + std::to_string(ratio));
  }
  if (window_k < 1) throw ConfigError("window_k must be >= 1");
  if (chunk_size < 2 * window_k + 1) {
    throw ConfigError("chunk_size must be >= 2*window_k + 1");
  }
  if (!(alpha >= 0.0)) throw ConfigError("alpha must be >= 0");
}

double percentile(std::span<const double> values, double p) {
  if (values.empty()) throw ConfigError("percentile of an empty list");
  if (!(p >= 0.0 && p <= 100.0)) {
    throw ConfigError("percentile p must be in [0, 100], got " + std::to_string(p));
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = static_cast<double>(sorted.size() - 1) * p / 100.0;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

LossScore unit_loss(std::size_t i,
                    std::span<const std::string> unit_texts,
                    std::span<const Embedding> embeddings,
                    ScorerBackend& backend,
                    const CompressionConfig& cfg) {
  const auto n = unit_texts.size();
  const auto k = static_cast<std::ptrdiff_t>(cfg.window_k);
  const auto center = static_cast<std::ptrdiff_t>(i);
  double similarity = 0.0;
  for (std::ptrdiff_t off = -k; off <= k; ++off) {
    if (off == 0) continue;
    const std::ptrdiff_t j = center + off;
    if (j < 0 || j >= static_cast<std::ptrdiff_t>(n)) continue;  // clipped, no padding
    similarity += cosine_sim(embeddings[static_cast<std::size_t>(j)], embeddings[i]);
  }
  LossScore score;
  score.unit_id = i;
  score.similarity_term = similarity;
  score.log_prob_term = backend.masked_log_prob(unit_texts, i, cfg.window_k);
  score.total = cfg.alpha * score.similarity_term + score.log_prob_term;
  return score;
}

std::vector<std::size_t> filter_units(std::span<const LossScore> scores,
                                      const CompressionConfig& cfg) {
  if (scores.empty()) throw ConfigError("filter_units on an empty score list");
  std::vector<double> totals;
  totals.reserve(scores.size());
  for (const auto& s : scores) totals.push_back(s.total);
  const double cut = percentile(totals, cfg.ratio * 100.0);

  std::vector<std::size_t> kept;
  for (const auto& s : scores) {
    if (s.total < cut) kept.push_back(s.unit_id);  // ties at the cut are removed
  }

  const std::size_t floor = std::min(cfg.min_keep, scores.size());
  if (kept.size() < floor) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (scores[a].total != scores[b].total) return scores[a].total < scores[b].total;
      return scores[a].unit_id < scores[b].unit_id;
    });
    std::vector<bool> in_kept(scores.size(), false);
    for (const std::size_t id : kept) {
      for (std::size_t s = 0; s < scores.size(); ++s) {
        if (scores[s].unit_id == id) in_kept[s] = true;
      }
    }
    for (const std::size_t idx : order) {
      if (kept.size() >= floor) break;
      if (!in_kept[idx]) {
        in_kept[idx] = true;
        kept.push_back(scores[idx].unit_id);
      }
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::string merge_units(std::string_view source,
                        std::span<const Token> tokens,
                        std::span<const LexicalUnit> units,
                        std::span<const std::size_t> kept_ids) {
  std::string out;
  out.reserve(source.size());
  bool first = true;
  for (const std::size_t id : kept_ids) {
    const LexicalUnit& unit = units[id];
    std::size_t end = unit.char_end;
    // Trailing punctuation stays with the unit it follows.
    std::size_t next_token = unit.token_indices.back() + 1;
    while (next_token < tokens.size() && !tokens[next_token].is_word) {
      end = tokens[next_token].end;
      ++next_token;
    }
    if (!first) out.push_back(' ');
    out.append(source.substr(unit.char_begin, end - unit.char_begin));
    first = false;
  }
  return out;
}

std::vector<TokenRange> chunk(std::span<const Token> tokens, std::size_t chunk_size) {
  if (chunk_size < 1) throw ConfigError("chunk_size must be >= 1");
  std::vector<TokenRange> ranges;
  if (tokens.empty()) return ranges;

  // Sentence extents, in token indices.
  std::vector<TokenRange> sentences;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= tokens.size(); ++i) {
    if (i == tokens.size() || tokens[i].sentence_index != tokens[start].sentence_index) {
      sentences.push_back({start, i});
      start = i;
    }
  }

  TokenRange current{0, 0};
  bool open = false;
  const auto flush = [&] {
    if (open && current.end > current.begin) ranges.push_back(current);
    open = false;
  };
  for (const TokenRange& s : sentences) {
    const std::size_t len = s.end - s.begin;
    if (len > chunk_size) {
      // An oversized sentence becomes its own chunks, cut at chunk_size.
      flush();
      for (std::size_t b = s.begin; b < s.end; b += chunk_size) {
        ranges.push_back({b, std::min(b + chunk_size, s.end)});
      }
      continue;
    }
    if (open && (current.end - current.begin) + len > chunk_size) flush();
    if (!open) {
      current = {s.begin, s.end};
      open = true;
    } else {
      current.end = s.end;
    }
  }
  flush();
  return ranges;
}

namespace {

CompressionResult assemble(std::string_view text,
                           std::span<const Token> tokens,
                           std::vector<LexicalUnit> units,
                           std::vector<LossScore> scores,
                           std::vector<std::size_t> kept,
                           double threshold) {
  CompressionResult result;
  result.original_text.assign(text);
  std::sort(kept.begin(), kept.end());
  result.compressed_text = merge_units(text, tokens, units, kept);
  result.unit_texts.reserve(units.size());
  for (const auto& u : units) result.unit_texts.push_back(u.text);
  result.scores = std::move(scores);
  result.kept = std::move(kept);
  result.achieved_ratio =
      units.empty() ? 1.0
                    : static_cast<double>(result.kept.size()) / static_cast<double>(units.size());
  result.threshold = threshold;
  return result;
}

}  // namespace

CompressionResult compress(std::string_view text,
                           const CompressionConfig& cfg,
                           ScorerBackend& backend) {
  cfg.validate();

  std::vector<Token> tokens = tokenize(text);
  split_sentences(tokens);
  const std::vector<TokenRange> ranges = chunk(tokens, cfg.chunk_size);

  std::vector<LexicalUnit> units;
  std::vector<LossScore> scores;
  std::vector<std::size_t> kept;

  for (std::size_t c = 0; c < ranges.size(); ++c) {
    const TokenRange& range = ranges[c];
    std::span<const Token> chunk_tokens{tokens.data() + range.begin, range.end - range.begin};
    std::vector<LexicalUnit> chunk_units = segment(text, chunk_tokens, cfg.granularity);
    if (chunk_units.empty()) continue;

    std::vector<std::string> texts;
    texts.reserve(chunk_units.size());
    for (const auto& u : chunk_units) texts.push_back(u.text);

    std::vector<LossScore> chunk_scores;
    try {
      const std::vector<Embedding> embeddings = backend.embed(texts);
      chunk_scores.reserve(chunk_units.size());
      for (std::size_t i = 0; i < chunk_units.size(); ++i) {
        chunk_scores.push_back(unit_loss(i, texts, embeddings, backend, cfg));
      }
    } catch (const Error& e) {
      throw BackendError("chunk " + std::to_string(c) + ": " + e.what());
    }

    std::vector<std::size_t> chunk_kept;
    if (cfg.ratio == 1.0) {
      // Identity boundary: a keep-everything target must not drop the
      // maximal unit that the strict inequality would otherwise remove.
      chunk_kept.resize(chunk_units.size());
      std::iota(chunk_kept.begin(), chunk_kept.end(), 0);
    } else {
      chunk_kept = filter_units(chunk_scores, cfg);
    }

    // Lift chunk-local ids to global, source-ordered ids.
    const std::size_t base = units.size();
    for (const std::size_t id : chunk_kept) kept.push_back(base + id);
    for (std::size_t i = 0; i < chunk_units.size(); ++i) {
      chunk_units[i].unit_id = base + i;
      chunk_scores[i].unit_id = base + i;
      // Token indices from segment() are relative to the chunk span.
      for (std::size_t& ti : chunk_units[i].token_indices) ti += range.begin;
      units.push_back(std::move(chunk_units[i]));
      scores.push_back(chunk_scores[i]);
    }
  }

  // Summary threshold over all units at p = ratio*100; equals the per-chunk
  // cut for single-chunk documents.
  double threshold = 0.0;
  if (!scores.empty()) {
    std::vector<double> totals;
    totals.reserve(scores.size());
    for (const auto& s : scores) totals.push_back(s.total);
    threshold = percentile(totals, cfg.ratio * 100.0);
  }
  return assemble(text, tokens, std::move(units), std::move(scores), std::move(kept), threshold);
}

CompressionResult random_deletion(std::string_view text, const CompressionConfig& cfg) {
  cfg.validate();

  std::vector<Token> tokens = tokenize(text);
  split_sentences(tokens);
  std::vector<LexicalUnit> units = segment(text, tokens, cfg.granularity);

  const std::size_t n = units.size();
  const auto target = static_cast<std::size_t>(
      std::llround(cfg.ratio * static_cast<double>(n)));

  // Partial Fisher-Yates over the unit ids, then keep the first `target`.
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  SplitMix64 rng(cfg.seed);
  for (std::size_t i = 0; i < target && n > 0; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
    std::swap(ids[i], ids[j]);
  }
  std::vector<std::size_t> kept(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(target));

  std::vector<LossScore> scores(n);
  for (std::size_t i = 0; i < n; ++i) scores[i].unit_id = i;
  return assemble(text, tokens, std::move(units), std::move(scores), std::move(kept), 0.0);
}

}  // namespace icpc
