#include "icpc/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "icpc/error.hpp"
#include "icpc/segmenter.hpp"
#include "icpc/text.hpp"

namespace icpc {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure: " + path.string());
  return std::move(buf).str();
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

// Fixed six-decimal float formatting keeps output files byte-reproducible.
std::string fmt6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

std::string quote(std::string_view s) {
  return nlohmann::json(s).dump();
}

}  // namespace

CorpusFormat corpus_format_from_string(std::string_view name) {
  const std::string folded = fold_case(name);
  if (folded == "text") return CorpusFormat::kText;
  if (folded == "jsonl") return CorpusFormat::kJsonl;
  throw ConfigError("unknown corpus format: " + std::string(name));
}

std::vector<CorpusDocument> read_corpus(const std::filesystem::path& path,
                                        CorpusFormat format) {
  const std::string data = read_file(path);
  if (!is_valid_utf8(data)) {
    throw IoError("invalid UTF-8 in " + path.string());
  }

  std::vector<CorpusDocument> docs;
  if (format == CorpusFormat::kText) {
    docs.push_back({path.stem().string(), data});
    return docs;
  }

  std::unordered_map<std::string, std::size_t> seen;
  std::istringstream in(data);
  std::string line;
  for (std::size_t line_number = 1; std::getline(in, line); ++line_number) {
    if (is_blank(line)) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw IoError(path.string() + " line " + std::to_string(line_number) +
                    ": malformed JSON (" + e.what() + ")");
    }
    if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string() ||
        !obj.contains("text") || !obj["text"].is_string()) {
      throw IoError(path.string() + " line " + std::to_string(line_number) +
                    ": expected an object with string fields \"id\" and \"text\"");
    }
    CorpusDocument doc{obj["id"].get<std::string>(), obj["text"].get<std::string>()};
    if (doc.id.empty()) {
      throw IoError(path.string() + " line " + std::to_string(line_number) + ": empty id");
    }
    if (const auto [it, inserted] = seen.try_emplace(doc.id, line_number); !inserted) {
      throw IoError(path.string() + " line " + std::to_string(line_number) +
                    ": duplicate id \"" + doc.id + "\" (first seen on line " +
                    std::to_string(it->second) + ")");
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::string metric_report_to_json(const MetricReport& m) {
  const auto rouge = [](const RougeScore& r) {
    return "{\"precision\":" + fmt6(r.precision) + ",\"recall\":" + fmt6(r.recall) +
           ",\"f1\":" + fmt6(r.f1) + "}";
  };
  std::string out = "{";
  out += "\"compression_rate\":" + fmt6(m.compression_rate);
  out += ",\"bleu\":" + fmt6(m.bleu);
  out += ",\"rouge1\":" + rouge(m.rouge1);
  out += ",\"rouge2\":" + rouge(m.rouge2);
  out += ",\"rougeL\":" + rouge(m.rouge_l);
  out += ",\"jaccard\":" + fmt6(m.jaccard);
  out += ",\"tfidf_cosine\":" + fmt6(m.tfidf_cosine);
  out += ",\"flesch_kincaid_grade\":" + fmt6(m.flesch_kincaid_grade);
  out += "}";
  return out;
}

std::string result_to_json_line(const DocumentResult& r) {
  std::string out = "{";
  out += "\"id\":" + quote(r.id);
  out += ",\"original\":" + quote(r.result.original_text);
  out += ",\"compressed\":" + quote(r.result.compressed_text);
  out += ",\"ratio_target\":" + fmt6(r.ratio_target);
  out += ",\"ratio_actual\":" + fmt6(r.result.achieved_ratio);
  out += ",\"threshold\":" + fmt6(r.result.threshold);
  out += ",\"units\":[";
  for (std::size_t i = 0; i < r.result.unit_texts.size(); ++i) {
    if (i > 0) out.push_back(',');
    const bool kept = std::binary_search(r.result.kept.begin(), r.result.kept.end(), i);
    out += "{\"text\":" + quote(r.result.unit_texts[i]);
    out += ",\"loss\":" + fmt6(r.result.scores[i].total);
    out += kept ? ",\"kept\":true}" : ",\"kept\":false}";
  }
  out += "],\"metrics\":" + metric_report_to_json(r.metrics);
  out += "}";
  return out;
}

void write_results(std::span<const DocumentResult> results,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path.string());
  for (const DocumentResult& r : results) {
    out << result_to_json_line(r) << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failure: " + path.string());
}

CorpusStats corpus_stats(std::span<const CorpusDocument> docs) {
  CorpusStats stats;
  stats.doc_count = docs.size();
  for (const CorpusDocument& doc : docs) {
    const std::size_t n = tokenize(doc.text).size();
    stats.token_count += n;
    stats.max_tokens = std::max(stats.max_tokens, n);
  }
  stats.mean_tokens = docs.empty() ? 0.0
                                   : static_cast<double>(stats.token_count) /
                                         static_cast<double>(docs.size());
  return stats;
}

}  // namespace icpc
