#include "icpc/embedding.hpp"

#include <cmath>

#include "icpc/error.hpp"
#include "icpc/text.hpp"

namespace icpc {

double cosine_sim(const Embedding& a, const Embedding& b) {
  if (a.size() != b.size()) {
    throw ConfigError("embedding dimension mismatch: " + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

void l2_normalize(Embedding& v) {
  double sq = 0.0;
  for (const double x : v) sq += x * x;
  if (sq == 0.0) return;
  const double inv = 1.0 / std::sqrt(sq);
  for (double& x : v) x *= inv;
}

Embedding reference_embed(std::string_view unit_text) {
  Embedding v(kReferenceEmbeddingDim, 0.0);
  const std::string folded = fold_case(unit_text);
  std::vector<char32_t> cps = decode_utf8(folded);
  if (cps.size() < 2) return v;  // no trigram: degenerate zero vector
  cps.insert(cps.begin(), U'^');
  cps.push_back(U'$');
  std::string trigram;
  for (std::size_t i = 0; i + 3 <= cps.size(); ++i) {
    trigram.clear();
    append_utf8(trigram, cps[i]);
    append_utf8(trigram, cps[i + 1]);
    append_utf8(trigram, cps[i + 2]);
    v[fnv1a64(trigram) % kReferenceEmbeddingDim] += 1.0;
  }
  l2_normalize(v);
  return v;
}

}  // namespace icpc
