#include "icpc/scorer.hpp"

#include "icpc/segmenter.hpp"

namespace icpc {

ReferenceBackend ReferenceBackend::for_document(std::string_view text,
                                                Granularity granularity) {
  std::vector<Token> tokens = tokenize(text);
  split_sentences(tokens);
  FrequencyTable table;
  for (const LexicalUnit& unit : segment(text, tokens, granularity)) {
    table.add(unit.text);
  }
  return ReferenceBackend(std::move(table));
}

std::vector<Embedding> ReferenceBackend::embed(std::span<const std::string> unit_texts) {
  std::vector<Embedding> out;
  out.reserve(unit_texts.size());
  for (const auto& text : unit_texts) out.push_back(reference_embed(text));
  return out;
}

double ReferenceBackend::masked_log_prob(std::span<const std::string> unit_texts,
                                         std::size_t target_index,
                                         std::size_t /*window_k*/) {
  // Context-independent unigram estimate: the reference backend trades
  // fidelity for hand-computable determinism.
  return reference_masked_log_prob(table_, unit_texts[target_index]);
}

}  // namespace icpc
