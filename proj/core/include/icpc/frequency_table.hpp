#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

namespace icpc {

/// Case-folded unigram counts over unit texts.
struct FrequencyTable {
  std::unordered_map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  std::size_t vocab_size() const { return counts.size(); }
  void add(std::string_view unit_text);
  std::uint64_t count(std::string_view unit_text) const;
};

FrequencyTable build_frequency_table(std::span<const std::string> unit_texts);

/// Natural log of the Laplace-smoothed unigram probability
/// ln((count + 1) / (total + vocab_size + 1)). An empty table returns
/// ln(1/2) so that the result stays strictly negative.
double reference_masked_log_prob(const FrequencyTable& table,
                                 std::string_view unit_text);

}  // namespace icpc
