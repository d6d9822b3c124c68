#include "icpc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "icpc/error.hpp"
#include "icpc/segmenter.hpp"
#include "icpc/text.hpp"

namespace icpc {

namespace {

double f1_of(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

// n-gram multiset as a count map keyed on the joined tokens. The separator
// cannot occur inside a token, so keys are unambiguous.
std::unordered_map<std::string, std::size_t> ngram_counts(
    std::span<const std::string> tokens, std::size_t n) {
  std::unordered_map<std::string, std::size_t> counts;
  if (n == 0 || tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (std::size_t j = 0; j < n; ++j) {
      if (j > 0) key.push_back('\x1f');
      key += tokens[i + j];
    }
    ++counts[key];
  }
  return counts;
}

std::size_t clipped_overlap(std::span<const std::string> reference,
                            std::span<const std::string> candidate,
                            std::size_t n) {
  const auto ref = ngram_counts(reference, n);
  const auto cand = ngram_counts(candidate, n);
  std::size_t overlap = 0;
  for (const auto& [gram, count] : cand) {
    const auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  return overlap;
}

std::size_t ngram_total(std::size_t len, std::size_t n) {
  return len + 1 >= n + 1 ? len + 1 - n : 0;
}

}  // namespace

double shannon_entropy(std::span<const double> p) {
  double sum = 0.0;
  for (const double x : p) {
    if (x < 0.0) throw ConfigError("entropy: negative probability");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("entropy: probabilities sum to " + std::to_string(sum));
  }
  double h = 0.0;
  for (const double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double jaccard_similarity(std::span<const std::string> a_tokens,
                          std::span<const std::string> b_tokens) {
  const std::unordered_set<std::string> a(a_tokens.begin(), a_tokens.end());
  const std::unordered_set<std::string> b(b_tokens.begin(), b_tokens.end());
  if (a.empty() && b.empty()) return 1.0;
  std::size_t intersection = 0;
  for (const auto& t : a) {
    if (b.contains(t)) ++intersection;
  }
  const std::size_t unionsize = a.size() + b.size() - intersection;
  return static_cast<double>(intersection) / static_cast<double>(unionsize);
}

RougeScore rouge_n(std::span<const std::string> reference,
                   std::span<const std::string> candidate,
                   std::size_t n) {
  if (n < 1) throw ConfigError("rouge_n: n must be >= 1");
  const std::size_t overlap = clipped_overlap(reference, candidate, n);
  const std::size_t ref_total = ngram_total(reference.size(), n);
  const std::size_t cand_total = ngram_total(candidate.size(), n);
  RougeScore score;
  score.recall = ref_total > 0 ? static_cast<double>(overlap) / static_cast<double>(ref_total) : 0.0;
  score.precision =
      cand_total > 0 ? static_cast<double>(overlap) / static_cast<double>(cand_total) : 0.0;
  score.f1 = f1_of(score.precision, score.recall);
  return score;
}

RougeScore rouge_l(std::span<const std::string> reference,
                   std::span<const std::string> candidate) {
  const std::size_t rows = reference.size();
  const std::size_t cols = candidate.size();
  std::size_t lcs = 0;
  if (rows > 0 && cols > 0) {
    // Two-row LCS table.
    std::vector<std::size_t> prev(cols + 1, 0), cur(cols + 1, 0);
    for (std::size_t i = 1; i <= rows; ++i) {
      for (std::size_t j = 1; j <= cols; ++j) {
        cur[j] = reference[i - 1] == candidate[j - 1] ? prev[j - 1] + 1
                                                      : std::max(prev[j], cur[j - 1]);
      }
      std::swap(prev, cur);
    }
    lcs = prev[cols];
  }
  RougeScore score;
  score.recall = rows > 0 ? static_cast<double>(lcs) / static_cast<double>(rows) : 0.0;
  score.precision = cols > 0 ? static_cast<double>(lcs) / static_cast<double>(cols) : 0.0;
  score.f1 = f1_of(score.precision, score.recall);
  return score;
}

double bleu_ngram_precision(std::span<const std::string> reference,
                            std::span<const std::string> candidate,
                            std::size_t n) {
  const std::size_t total = ngram_total(candidate.size(), n);
  if (total == 0) return 0.0;
  return static_cast<double>(clipped_overlap(reference, candidate, n)) /
         static_cast<double>(total);
}

double bleu(std::span<const std::string> reference,
            std::span<const std::string> candidate) {
  if (candidate.empty()) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::size_t total = ngram_total(candidate.size(), n);
    const std::size_t matched = clipped_overlap(reference, candidate, n);
    double precision;
    if (matched == 0) {
      if (n == 1) return 0.0;  // nothing shared at all
      precision = 1.0 / static_cast<double>(total + 1);  // add-one smoothing
    } else {
      precision = static_cast<double>(matched) / static_cast<double>(total);
    }
    log_sum += std::log(precision);
  }
  const double brevity =
      std::min(1.0, std::exp(1.0 - static_cast<double>(reference.size()) /
                                       static_cast<double>(candidate.size())));
  return brevity * std::exp(log_sum / 4.0);
}

double tfidf_cosine(std::span<const std::string> a_tokens,
                    std::span<const std::string> b_tokens) {
  std::unordered_map<std::string, std::size_t> tf_a, tf_b;
  for (const auto& t : a_tokens) ++tf_a[t];
  for (const auto& t : b_tokens) ++tf_b[t];

  // Two-document corpus: df is 1 or 2; idf = ln((1+N)/(1+df)) + 1 with N=2.
  double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
  const auto weight = [&](const std::string& term, std::size_t tf_here,
                          const std::unordered_map<std::string, std::size_t>& other) {
    const std::size_t df = 1 + (other.contains(term) ? 1 : 0);
    const double idf = std::log(3.0 / (1.0 + static_cast<double>(df))) + 1.0;
    return static_cast<double>(tf_here) * idf;
  };
  for (const auto& [term, tf] : tf_a) {
    const double wa = weight(term, tf, tf_b);
    norm_a += wa * wa;
    const auto it = tf_b.find(term);
    if (it != tf_b.end()) dot += wa * weight(term, it->second, tf_a);
  }
  for (const auto& [term, tf] : tf_b) {
    const double wb = weight(term, tf, tf_a);
    norm_b += wb * wb;
  }
  if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
  return dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

std::size_t count_syllables(std::string_view word) {
  std::string w = fold_case(word);
  const auto is_vowel = [](char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
  };
  // Silent trailing "e" ("code"), kept when the word ends in "le" ("apple").
  if (w.size() >= 2 && w.back() == 'e' && !(w.size() >= 2 && w[w.size() - 2] == 'l')) {
    w.pop_back();
  }
  std::size_t syllables = 0;
  bool in_run = false;
  for (const char c : w) {
    if (is_vowel(c)) {
      if (!in_run) ++syllables;
      in_run = true;
    } else {
      in_run = false;
    }
  }
  return std::max<std::size_t>(syllables, 1);
}

double flesch_kincaid_grade(std::string_view text) {
  std::vector<Token> tokens = tokenize(text);
  split_sentences(tokens);
  std::size_t words = 0, syllables = 0;
  for (const Token& t : tokens) {
    if (!t.is_word) continue;
    ++words;
    syllables += count_syllables(t.text);
  }
  if (words == 0 || tokens.empty()) {
    throw ConfigError("flesch_kincaid_grade: need at least one word and one sentence");
  }
  const double sentences = static_cast<double>(tokens.back().sentence_index + 1);
  return 0.39 * (static_cast<double>(words) / sentences) +
         11.8 * (static_cast<double>(syllables) / static_cast<double>(words)) - 15.59;
}

double compression_rate(std::span<const Token> original, std::span<const Token> compressed) {
  const auto count_words = [](std::span<const Token> tokens) {
    std::size_t n = 0;
    for (const auto& t : tokens) n += t.is_word ? 1 : 0;
    return n;
  };
  const std::size_t orig = count_words(original);
  if (orig == 0) throw ConfigError("compression_rate: original has no word tokens");
  return static_cast<double>(count_words(compressed)) / static_cast<double>(orig);
}

std::vector<std::string> folded_word_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (const Token& t : tokenize(text)) {
    if (t.is_word) out.push_back(fold_case(t.text));
  }
  return out;
}

MetricReport compute_metric_report(std::string_view original, std::string_view compressed) {
  const std::vector<Token> original_tokens = tokenize(original);
  const std::vector<Token> compressed_tokens = tokenize(compressed);
  const std::vector<std::string> ref = folded_word_tokens(original);
  const std::vector<std::string> cand = folded_word_tokens(compressed);

  MetricReport report;
  report.compression_rate = compression_rate(original_tokens, compressed_tokens);
  report.bleu = bleu(ref, cand);
  report.rouge1 = rouge_n(ref, cand, 1);
  report.rouge2 = rouge_n(ref, cand, 2);
  report.rouge_l = rouge_l(ref, cand);
  report.jaccard = jaccard_similarity(ref, cand);
  report.tfidf_cosine = tfidf_cosine(ref, cand);
  try {
    report.flesch_kincaid_grade = flesch_kincaid_grade(compressed);
  } catch (const ConfigError&) {
    report.flesch_kincaid_grade = 0.0;  // compressed text with no words
  }
  return report;
}

}  // namespace icpc
