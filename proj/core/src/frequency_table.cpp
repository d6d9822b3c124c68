#include "icpc/frequency_table.hpp"

#include <cmath>

#include "icpc/text.hpp"

namespace icpc {

void FrequencyTable::add(std::string_view unit_text) {
  ++counts[fold_case(unit_text)];
  ++total;
}

std::uint64_t FrequencyTable::count(std::string_view unit_text) const {
  const auto it = counts.find(fold_case(unit_text));
  return it == counts.end() ? 0 : it->second;
}

FrequencyTable build_frequency_table(std::span<const std::string> unit_texts) {
  FrequencyTable table;
  for (const auto& text : unit_texts) table.add(text);
  return table;
}

double reference_masked_log_prob(const FrequencyTable& table, std::string_view unit_text) {
  if (table.total == 0) return std::log(0.5);
  const double numerator = static_cast<double>(table.count(unit_text)) + 1.0;
  const double denominator =
      static_cast<double>(table.total) + static_cast<double>(table.vocab_size()) + 1.0;
  return std::log(numerator / denominator);
}

}  // namespace icpc
