#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace icpc {

/// True if `bytes` is well-formed UTF-8 (no overlongs, surrogates, or
/// out-of-range code points).
bool is_valid_utf8(std::string_view bytes);

/// Decodes UTF-8 into code points. Bytes that do not form a valid sequence
/// are passed through one byte at a time, so decoding never fails.
std::vector<char32_t> decode_utf8(std::string_view bytes);

/// Appends the UTF-8 encoding of `cp` to `out`.
void append_utf8(std::string& out, char32_t cp);

/// Unicode simple case folding applied per code point.
std::string fold_case(std::string_view text);

/// 64-bit FNV-1a over the raw bytes (standard offset basis and prime).
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace icpc
