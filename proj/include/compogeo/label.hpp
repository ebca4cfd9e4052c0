#pragma once

#include <string_view>

namespace compogeo {

/// Compositional is the literal reading; non-compositional covers idiomatic,
/// sarcastic and metaphorical use.
enum class Label { compositional, non_compositional };

constexpr std::string_view to_string(Label label) {
  return label == Label::compositional ? "compositional" : "non_compositional";
}

}  // namespace compogeo
