#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace compogeo {

enum class CaseFolding { lowercase, preserve };

// Lowercases ASCII, Latin-1 Supplement, Greek and Cyrillic capitals. Other
// code points (and malformed UTF-8 bytes) are copied unchanged.
std::string fold_case(std::string_view text);

inline std::string normalize(std::string_view text, CaseFolding folding) {
  return folding == CaseFolding::lowercase ? fold_case(text) : std::string(text);
}

// Splits on runs of spaces and tabs; used by the line-oriented file readers.
std::vector<std::string_view> split_fields(std::string_view line);

std::string_view trim(std::string_view s);

}  // namespace compogeo
