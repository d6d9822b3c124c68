// Command-line frontend: compress | compare | evaluate | heatmap | stats.
//
// Exit codes: 0 success, 1 configuration error, 2 I/O error, 3 backend
// error. Standard output carries only data and tables; diagnostics go to
// standard error. Output files are byte-reproducible for identical flags,
// inputs and seed (timings are printed to stdout only).

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "icpc/compressor.hpp"
#include "icpc/corpus.hpp"
#include "icpc/encoder.hpp"
#include "icpc/error.hpp"
#include "icpc/heatmap.hpp"
#include "icpc/metrics.hpp"
#include "icpc/scorer.hpp"

namespace {

using namespace icpc;
using Clock = std::chrono::steady_clock;

struct CliOptions {
  std::string input;
  std::string output;
  std::string format = "text";
  std::string backend = "reference";
  std::string model_path;
  std::string vocab_path;
  std::string granularity = "word";
  std::string doc_id;
  std::vector<double> ratios;
  double ratio = 0.6;
  double alpha = 1.0;
  std::size_t window = 3;
  std::size_t chunk_size = 512;
  std::size_t min_keep = 1;
  std::uint64_t seed = 0;
  std::size_t workers = 0;  // 0 = logical CPU count
  std::string stop_words_path;
  std::string abbreviations_path;
};

CompressionConfig to_config(const CliOptions& opt) {
  CompressionConfig cfg;
  cfg.alpha = opt.alpha;
  cfg.ratio = opt.ratio;
  cfg.window_k = opt.window;
  cfg.granularity = granularity_from_string(opt.granularity);
  cfg.chunk_size = opt.chunk_size;
  cfg.min_keep = opt.min_keep;
  cfg.seed = opt.seed;
  cfg.validate();
  return cfg;
}

std::size_t worker_count(const CliOptions& opt, std::size_t jobs) {
  std::size_t n = opt.workers;
  if (n == 0) n = std::max<unsigned>(1, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(n, std::max<std::size_t>(jobs, 1)));
}

// Runs fn(0..n-1) on a pool; rethrows the first failure after joining.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (workers <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr error;
  const auto body = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// Yields a per-document scorer. The reference backend derives its unigram
// table from each document; the encoder backend keeps one session per
// worker thread (sessions serve one stream at a time).
class BackendProvider {
 public:
  explicit BackendProvider(const CliOptions& opt) : opt_(opt) {
    is_encoder_ = opt.backend == "encoder";
    if (!is_encoder_ && opt.backend != "reference") {
      throw ConfigError("unknown backend: " + opt.backend);
    }
    if (is_encoder_) {
      model_path_ = opt.model_path;
      vocab_path_ = opt.vocab_path;
      if (const char* dir = std::getenv("ICPC_MODEL_DIR")) {
        if (model_path_.empty()) model_path_ = std::string(dir) + "/model.onnx";
        if (vocab_path_.empty()) vocab_path_ = std::string(dir) + "/vocab.txt";
      }
      if (model_path_.empty() || vocab_path_.empty()) {
        throw ConfigError("--backend encoder requires --model-path and --vocab-path "
                          "(or ICPC_MODEL_DIR)");
      }
    }
  }

  ScorerBackend& for_document(const CorpusDocument& doc, Granularity granularity) {
    if (is_encoder_) {
      thread_local std::unique_ptr<EncoderBackend> backend;
      if (!backend) {
        backend = std::make_unique<EncoderBackend>(
            open_onnx_session(model_path_), WordPieceVocab::from_file(vocab_path_));
      }
      return *backend;
    }
    thread_local std::optional<ReferenceBackend> backend;
    backend.emplace(ReferenceBackend::for_document(doc.text, granularity));
    return *backend;
  }

 private:
  const CliOptions& opt_;
  bool is_encoder_ = false;
  std::string model_path_;
  std::string vocab_path_;
};

std::vector<CorpusDocument> load_corpus(const CliOptions& opt) {
  if (opt.input.empty()) throw ConfigError("--input is required");
  return read_corpus(opt.input, corpus_format_from_string(opt.format));
}

int run_compress(const CliOptions& opt) {
  const CompressionConfig cfg = to_config(opt);
  if (opt.output.empty()) throw ConfigError("--output is required");
  const std::vector<CorpusDocument> docs = load_corpus(opt);

  BackendProvider provider(opt);
  std::vector<DocumentResult> results(docs.size());
  std::vector<double> elapsed_ms(docs.size(), 0.0);
  parallel_for(docs.size(), worker_count(opt, docs.size()), [&](std::size_t i) {
    const auto t0 = Clock::now();
    CompressionResult r = compress(docs[i].text, cfg, provider.for_document(docs[i], cfg.granularity));
    elapsed_ms[i] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    DocumentResult& out = results[i];
    out.id = docs[i].id;
    out.ratio_target = cfg.ratio;
    out.metrics = compute_metric_report(r.original_text, r.compressed_text);
    out.result = std::move(r);
  });
  write_results(results, opt.output);

  double ratio_sum = 0.0;
  for (const auto& r : results) ratio_sum += r.result.achieved_ratio;
  const double ms_mean = docs.empty() ? 0.0
                                      : std::accumulate(elapsed_ms.begin(), elapsed_ms.end(), 0.0) /
                                            static_cast<double>(docs.size());
  std::printf("documents %zu  mean_ratio %.4f  mean_ms %.3f\n", docs.size(),
              docs.empty() ? 1.0 : ratio_sum / static_cast<double>(docs.size()), ms_mean);
  return 0;
}

struct CompareRow {
  std::string arm;
  double ratio;
  MetricReport metrics;
  double mean_ms;
};

MetricReport mean_report(const std::vector<MetricReport>& reports) {
  MetricReport m;
  if (reports.empty()) return m;
  const auto n = static_cast<double>(reports.size());
  for (const MetricReport& r : reports) {
    m.compression_rate += r.compression_rate;
    m.bleu += r.bleu;
    for (const auto& [dst, src] : {std::pair{&m.rouge1, &r.rouge1},
                                   std::pair{&m.rouge2, &r.rouge2},
                                   std::pair{&m.rouge_l, &r.rouge_l}}) {
      dst->precision += src->precision;
      dst->recall += src->recall;
      dst->f1 += src->f1;
    }
    m.jaccard += r.jaccard;
    m.tfidf_cosine += r.tfidf_cosine;
    m.flesch_kincaid_grade += r.flesch_kincaid_grade;
  }
  m.compression_rate /= n;
  m.bleu /= n;
  for (RougeScore* r : {&m.rouge1, &m.rouge2, &m.rouge_l}) {
    r->precision /= n;
    r->recall /= n;
    r->f1 /= n;
  }
  m.jaccard /= n;
  m.tfidf_cosine /= n;
  m.flesch_kincaid_grade /= n;
  return m;
}

int run_compare(const CliOptions& opt) {
  CliOptions base = opt;
  base.ratio = 1.0;
  CompressionConfig cfg = to_config(base);
  if (opt.output.empty()) throw ConfigError("--output is required");
  std::vector<double> ratios = opt.ratios;
  if (ratios.empty()) ratios = {0.8, 0.6, 0.4};
  for (const double r : ratios) {
    CompressionConfig check = cfg;
    check.ratio = r;
    check.validate();
  }
  const std::vector<CorpusDocument> docs = load_corpus(opt);
  if (docs.empty()) throw ConfigError("compare needs a non-empty corpus");

  BackendProvider provider(opt);
  const std::size_t workers = worker_count(opt, docs.size());
  std::vector<CompareRow> rows;

  // Per-document seeds drawn once so that the random arm differs across
  // documents but stays reproducible.
  std::vector<std::uint64_t> doc_seeds(docs.size());
  {
    SplitMix64 rng(cfg.seed);
    for (auto& s : doc_seeds) s = rng.next();
  }

  const auto run_arm = [&](const std::string& arm, double ratio) {
    std::vector<MetricReport> reports(docs.size());
    std::vector<double> elapsed(docs.size(), 0.0);
    parallel_for(docs.size(), workers, [&](std::size_t i) {
      CompressionConfig arm_cfg = cfg;
      arm_cfg.ratio = ratio;
      const auto t0 = Clock::now();
      std::string compressed;
      if (arm == "original") {
        compressed = docs[i].text;
      } else if (arm == "random") {
        arm_cfg.seed = doc_seeds[i];
        compressed = random_deletion(docs[i].text, arm_cfg).compressed_text;
      } else {
        arm_cfg.alpha = arm == "selective" ? 0.0 : opt.alpha;
        compressed =
            compress(docs[i].text, arm_cfg, provider.for_document(docs[i], cfg.granularity))
                .compressed_text;
      }
      elapsed[i] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      reports[i] = compute_metric_report(docs[i].text, compressed);
    });
    CompareRow row;
    row.arm = arm;
    row.ratio = ratio;
    row.metrics = mean_report(reports);
    row.mean_ms = std::accumulate(elapsed.begin(), elapsed.end(), 0.0) /
                  static_cast<double>(docs.size());
    rows.push_back(std::move(row));
  };

  run_arm("original", 1.0);
  for (const double r : ratios) run_arm("random", r);
  for (const double r : ratios) run_arm("selective", r);
  for (const double r : ratios) run_arm("icpc", r);

  // Aligned table to stdout (with timing); JSONL file without timing so
  // that identical runs produce byte-identical outputs.
  std::printf("%-10s %6s %6s %6s %8s %8s %8s %8s %7s %8s %9s\n", "arm", "ratio", "rate",
              "bleu", "rouge1", "rouge2", "rougeL", "jaccard", "tfidf", "fk", "mean_ms");
  for (const CompareRow& row : rows) {
    std::printf("%-10s %6s %6.3f %6.3f %8.3f %8.3f %8.3f %8.3f %7.3f %8.2f %9.3f\n",
                row.arm.c_str(), row.arm == "original" ? "-" : std::to_string(row.ratio).substr(0, 4).c_str(),
                row.metrics.compression_rate, row.metrics.bleu, row.metrics.rouge1.f1,
                row.metrics.rouge2.f1, row.metrics.rouge_l.f1, row.metrics.jaccard,
                row.metrics.tfidf_cosine, row.metrics.flesch_kincaid_grade, row.mean_ms);
  }

  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + opt.output);
  for (const CompareRow& row : rows) {
    char ratio_buf[32];
    std::snprintf(ratio_buf, sizeof(ratio_buf), "%.6f", row.ratio);
    out << "{\"arm\":\"" << row.arm << "\",\"ratio\":" << ratio_buf
        << ",\"metrics\":" << metric_report_to_json(row.metrics) << "}\n";
  }
  out.flush();
  if (!out) throw IoError("write failure: " + opt.output);
  return 0;
}

int run_evaluate(const CliOptions& opt) {
  if (opt.input.empty()) throw ConfigError("--input is required");
  std::ifstream in(opt.input, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + opt.input);

  std::optional<std::ofstream> out;
  if (!opt.output.empty()) {
    out.emplace(opt.output, std::ios::binary);
    if (!*out) throw IoError("cannot open output file: " + opt.output);
  }

  std::printf("%-20s %6s %6s %8s %8s %8s %8s %7s %8s\n", "id", "rate", "bleu", "rouge1",
              "rouge2", "rougeL", "jaccard", "tfidf", "fk");
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw IoError(opt.input + " line " + std::to_string(line_number) + ": " + e.what());
    }
    if (!obj.contains("id") || !obj.contains("original") || !obj.contains("compressed")) {
      throw IoError(opt.input + " line " + std::to_string(line_number) +
                    ": expected fields id/original/compressed");
    }
    const auto id = obj["id"].get<std::string>();
    const MetricReport report = compute_metric_report(obj["original"].get<std::string>(),
                                                      obj["compressed"].get<std::string>());
    std::printf("%-20s %6.3f %6.3f %8.3f %8.3f %8.3f %8.3f %7.3f %8.2f\n", id.c_str(),
                report.compression_rate, report.bleu, report.rouge1.f1, report.rouge2.f1,
                report.rouge_l.f1, report.jaccard, report.tfidf_cosine,
                report.flesch_kincaid_grade);
    if (out) {
      *out << "{\"id\":" << nlohmann::json(id).dump()
           << ",\"metrics\":" << metric_report_to_json(report) << "}\n";
    }
  }
  if (out) {
    out->flush();
    if (!*out) throw IoError("write failure: " + opt.output);
  }
  return 0;
}

int run_heatmap(const CliOptions& opt) {
  const CompressionConfig cfg = to_config(opt);
  if (opt.output.empty()) throw ConfigError("--output is required");
  const std::vector<CorpusDocument> docs = load_corpus(opt);
  if (docs.empty()) throw ConfigError("heatmap needs a document");

  const CorpusDocument* doc = &docs.front();
  if (!opt.doc_id.empty()) {
    doc = nullptr;
    for (const auto& d : docs) {
      if (d.id == opt.doc_id) {
        doc = &d;
        break;
      }
    }
    if (!doc) throw ConfigError("document id not found: " + opt.doc_id);
  }

  BackendProvider provider(opt);
  const CompressionResult result =
      compress(doc->text, cfg, provider.for_document(*doc, cfg.granularity));
  render_heatmap(result, opt.output);
  std::printf("heatmap %s  units %zu  kept %zu\n", doc->id.c_str(), result.scores.size(),
              result.kept.size());
  return 0;
}

int run_stats(const CliOptions& opt) {
  const std::vector<CorpusDocument> docs = load_corpus(opt);
  const CorpusStats stats = corpus_stats(docs);
  std::printf("{\"doc_count\":%zu,\"token_count\":%zu,\"mean_tokens\":%.6f,\"max_tokens\":%zu}\n",
              stats.doc_count, stats.token_count, stats.mean_tokens, stats.max_tokens);
  return 0;
}

void add_common_flags(CLI::App* cmd, CliOptions& opt, bool with_compression) {
  cmd->add_option("--input", opt.input, "Input corpus path");
  cmd->add_option("--output", opt.output, "Output path");
  cmd->add_option("--format", opt.format, "Corpus format: text or jsonl")
      ->check(CLI::IsMember({"text", "jsonl"}));
  if (!with_compression) return;
  cmd->add_option("--backend", opt.backend, "Scorer backend: reference or encoder")
      ->check(CLI::IsMember({"reference", "encoder"}));
  cmd->add_option("--model-path", opt.model_path, "ONNX model (encoder backend)");
  cmd->add_option("--vocab-path", opt.vocab_path, "WordPiece vocabulary (encoder backend)");
  cmd->add_option("--alpha", opt.alpha, "Similarity-term weight (0 = self-information only)");
  cmd->add_option("--window", opt.window, "Context window: neighbor units per side");
  cmd->add_option("--granularity", opt.granularity, "Unit granularity: word, phrase or clause")
      ->check(CLI::IsMember({"word", "phrase", "clause"}));
  cmd->add_option("--chunk-size", opt.chunk_size, "Max tokens scored per chunk");
  cmd->add_option("--min-keep", opt.min_keep, "Minimum units kept per chunk");
  cmd->add_option("--seed", opt.seed, "Seed for the random-deletion baseline");
  cmd->add_option("--workers", opt.workers, "Worker threads (0 = logical CPUs)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prompt compression by redundancy scoring"};
  app.require_subcommand(1);
  CliOptions opt;

  CLI::App* compress_cmd = app.add_subcommand("compress", "Compress a corpus to JSONL results");
  add_common_flags(compress_cmd, opt, true);
  compress_cmd->add_option("--ratio", opt.ratio, "Target keep fraction in (0, 1]");

  CLI::App* compare_cmd =
      app.add_subcommand("compare", "Run original/random/selective/icpc arms at each ratio");
  add_common_flags(compare_cmd, opt, true);
  compare_cmd->add_option("--ratio", opt.ratios, "Keep fraction; repeatable (default 0.8 0.6 0.4)");

  CLI::App* evaluate_cmd =
      app.add_subcommand("evaluate", "Recompute metrics for a results JSONL file");
  evaluate_cmd->add_option("--input", opt.input, "Results JSONL from compress");
  evaluate_cmd->add_option("--output", opt.output, "Optional metrics JSONL");

  CLI::App* heatmap_cmd = app.add_subcommand("heatmap", "Render an importance heatmap as HTML");
  add_common_flags(heatmap_cmd, opt, true);
  heatmap_cmd->add_option("--ratio", opt.ratio, "Target keep fraction in (0, 1]");
  heatmap_cmd->add_option("--doc-id", opt.doc_id, "Document to render (default: first)");

  CLI::App* stats_cmd = app.add_subcommand("stats", "Print corpus statistics as JSON");
  add_common_flags(stats_cmd, opt, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(compress_cmd)) return run_compress(opt);
    if (app.got_subcommand(compare_cmd)) return run_compare(opt);
    if (app.got_subcommand(evaluate_cmd)) return run_evaluate(opt);
    if (app.got_subcommand(heatmap_cmd)) return run_heatmap(opt);
    if (app.got_subcommand(stats_cmd)) return run_stats(opt);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const BackendError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
