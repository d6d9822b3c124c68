#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "icpc/token.hpp"

namespace icpc {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct MetricReport {
  double compression_rate = 0.0;
  double bleu = 0.0;
  RougeScore rouge1;
  RougeScore rouge2;
  RougeScore rouge_l;
  double jaccard = 0.0;
  double tfidf_cosine = 0.0;
  double flesch_kincaid_grade = 0.0;
};

/// Shannon entropy in bits of a probability vector (0*log0 := 0). Throws
/// ConfigError when entries are negative or do not sum to 1 within 1e-9.
double shannon_entropy(std::span<const double> p);

/// Intersection-over-union of the two token sets; 1.0 when both are empty.
double jaccard_similarity(std::span<const std::string> a_tokens,
                          std::span<const std::string> b_tokens);

/// ROUGE-N with multiplicity clipping: the overlap is the sum over distinct
/// n-grams of min(count in ref, count in cand). Empty denominators give 0.
RougeScore rouge_n(std::span<const std::string> reference,
                   std::span<const std::string> candidate,
                   std::size_t n);

/// ROUGE-L from the longest common subsequence.
RougeScore rouge_l(std::span<const std::string> reference,
                   std::span<const std::string> candidate);

/// Clipped (modified) n-gram precision as used by BLEU, exposed for tests.
double bleu_ngram_precision(std::span<const std::string> reference,
                            std::span<const std::string> candidate,
                            std::size_t n);

/// BLEU with n = 1..4: geometric mean of clipped precisions, add-one
/// smoothing when an order >= 2 has zero matches (and for orders the
/// candidate is too short to have), times the brevity penalty
/// min(1, exp(1 - |ref|/|cand|)). Empty candidates score 0.
double bleu(std::span<const std::string> reference,
            std::span<const std::string> candidate);

/// Cosine similarity of tf-idf vectors over the two-document corpus {a, b}
/// with idf(t) = ln((1+N)/(1+df(t))) + 1, N = 2. The smoothing keeps shared
/// terms at nonzero weight so identical documents score 1.
double tfidf_cosine(std::span<const std::string> a_tokens,
                    std::span<const std::string> b_tokens);

/// Syllables of a single word by the frozen vowel-group heuristic: runs of
/// aeiouy count 1, a silent trailing "e" is dropped unless the word ends in
/// "le", minimum 1.
std::size_t count_syllables(std::string_view word);

/// 0.39*(words/sentences) + 11.8*(syllables/words) - 15.59. Throws
/// ConfigError when the text has no word or no sentence.
double flesch_kincaid_grade(std::string_view text);

/// Word-token count of `compressed` over `original`; throws ConfigError
/// when the original has no word tokens.
double compression_rate(std::span<const Token> original,
                        std::span<const Token> compressed);

/// Case-folded word tokens of `text` (the shape the overlap metrics expect).
std::vector<std::string> folded_word_tokens(std::string_view text);

/// Computes every metric of the report for a compressed text against its
/// original. Overlap metrics treat the original as the reference. The
/// readability grade is that of the compressed text; 0 when it has no words.
MetricReport compute_metric_report(std::string_view original,
                                   std::string_view compressed);

}  // namespace icpc
