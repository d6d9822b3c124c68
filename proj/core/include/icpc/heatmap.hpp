#pragma once

#include <filesystem>
#include <string>

#include "icpc/compressor.hpp"

namespace icpc {

/// Renders a self-contained HTML page with one span per scored unit. The
/// yellow background opacity encodes importance = (L_max - L_i) /
/// (L_max - L_min), i.e. low-redundancy units glow brightest; when every
/// score is equal the opacity is 0.5 throughout. A second section repeats
/// the units with the removed ones struck through, showing the compressed
/// text. Throws ConfigError when the result has no scored unit.
std::string render_heatmap_html(const CompressionResult& result);

void render_heatmap(const CompressionResult& result,
                    const std::filesystem::path& path);

}  // namespace icpc
