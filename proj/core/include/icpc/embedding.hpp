#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace icpc {

/// Unit embedding. Invariant: Euclidean norm 1 (within 1e-6) or all-zero.
using Embedding = std::vector<double>;

/// Dimension of reference-backend embeddings.
inline constexpr std::size_t kReferenceEmbeddingDim = 64;

/// Cosine similarity in [-1, 1]; 0 if either vector is all-zero.
/// Throws ConfigError on dimension mismatch (backend misconfiguration).
double cosine_sim(const Embedding& a, const Embedding& b);

/// Normalizes `v` to unit length in place; leaves an all-zero vector as is.
void l2_normalize(Embedding& v);

/// Deterministic hashed-trigram embedding: character trigrams of the
/// case-folded text, padded with '^' and '$' sentinels, are bucketed by
/// 64-bit FNV-1a modulo 64 and the counts L2-normalized. Texts shorter than
/// two characters have no trigram and embed to the zero vector.
Embedding reference_embed(std::string_view unit_text);

}  // namespace icpc
