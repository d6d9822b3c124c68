#include "icpc/heatmap.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "icpc/error.hpp"

namespace icpc {

namespace {

std::string escape_html(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fmt4(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

}  // namespace

std::string render_heatmap_html(const CompressionResult& result) {
  if (result.scores.empty()) {
    throw ConfigError("heatmap needs at least one scored unit");
  }

  double lo = result.scores.front().total;
  double hi = lo;
  for (const LossScore& s : result.scores) {
    lo = std::min(lo, s.total);
    hi = std::max(hi, s.total);
  }
  const bool degenerate = hi == lo;

  std::string html;
  html +=
      "<!DOCTYPE html>\n"
      "<html lang=\"en\">\n"
      "<head>\n"
      "<meta charset=\"utf-8\">\n"
      "<title>Unit importance heatmap</title>\n"
      "<style>\n"
      "body { font-family: sans-serif; max-width: 60em; margin: 2em auto; line-height: 1.8; }\n"
      "span.unit, span.kept, span.removed { padding: 0.1em 0.15em; border-radius: 0.2em; }\n"
      "span.removed { text-decoration: line-through; color: #888; }\n"
      "</style>\n"
      "</head>\n"
      "<body>\n"
      "<h1>Unit importance heatmap</h1>\n"
      "<section id=\"importance\">\n"
      "<h2>Importance</h2>\n"
      "<p>Stronger yellow marks units the scorer considers more important "
      "(lower redundancy).</p>\n"
      "<p class=\"text\">";

  for (std::size_t i = 0; i < result.scores.size(); ++i) {
    // Importance is the negated, normalized redundancy score: the minimum-L
    // unit glows at opacity 1, the maximum-L unit at 0.
    const double importance =
        degenerate ? 0.5 : (hi - result.scores[i].total) / (hi - lo);
    if (i > 0) html.push_back(' ');
    html += "<span class=\"unit\" style=\"background-color: rgba(255,215,0," +
            fmt4(importance) + ")\" title=\"L=" + fmt4(result.scores[i].total) + "\">" +
            escape_html(result.unit_texts[i]) + "</span>";
  }

  html +=
      "</p>\n"
      "</section>\n"
      "<section id=\"compressed\">\n"
      "<h2>Compressed text</h2>\n"
      "<p>Struck-through units were removed; the rest form the output.</p>\n"
      "<p class=\"text\">";

  for (std::size_t i = 0; i < result.unit_texts.size(); ++i) {
    const bool kept = std::binary_search(result.kept.begin(), result.kept.end(), i);
    if (i > 0) html.push_back(' ');
    html += std::string("<span class=\"") + (kept ? "kept" : "removed") + "\">" +
            escape_html(result.unit_texts[i]) + "</span>";
  }

  html +=
      "</p>\n"
      "</section>\n"
      "</body>\n"
      "</html>\n";
  return html;
}

void render_heatmap(const CompressionResult& result, const std::filesystem::path& path) {
  const std::string html = render_heatmap_html(result);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path.string());
  out << html;
  out.flush();
  if (!out) throw IoError("write failure: " + path.string());
}

}  // namespace icpc
