#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "icpc/compressor.hpp"
#include "icpc/metrics.hpp"

namespace icpc {

struct CorpusDocument {
  std::string id;
  std::string text;
};

enum class CorpusFormat { kText, kJsonl };

CorpusFormat corpus_format_from_string(std::string_view name);

/// Reads a corpus. Text format yields one document whose id is the file
/// stem; JSONL expects one {"id": ..., "text": ...} object per non-blank
/// line. Invalid UTF-8, malformed lines (reported with their line number)
/// and duplicate ids are hard errors.
std::vector<CorpusDocument> read_corpus(const std::filesystem::path& path,
                                        CorpusFormat format);

/// One compressed document plus its evaluation, as serialized by
/// write_results.
struct DocumentResult {
  std::string id;
  double ratio_target = 1.0;
  CompressionResult result;
  MetricReport metrics;
};

/// Serializes one JSON object per line with deterministic key order and
/// floats formatted to 6 decimal places:
///   {"id", "original", "compressed", "ratio_target", "ratio_actual",
///    "threshold", "units": [{"text", "loss", "kept"}], "metrics": {...}}
void write_results(std::span<const DocumentResult> results,
                   const std::filesystem::path& path);

/// The same serialization as write_results, one line without the trailing
/// newline.
std::string result_to_json_line(const DocumentResult& result);

std::string metric_report_to_json(const MetricReport& report);

struct CorpusStats {
  std::size_t doc_count = 0;
  std::size_t token_count = 0;
  double mean_tokens = 0.0;
  std::size_t max_tokens = 0;
};

CorpusStats corpus_stats(std::span<const CorpusDocument> docs);

}  // namespace icpc
