#include "compogeo/error.hpp"

namespace compogeo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::io: return "io";
    case ErrorCode::parse: return "parse";
    case ErrorCode::arity: return "arity";
    case ErrorCode::non_numeric: return "non_numeric";
    case ErrorCode::zero_vector: return "zero_vector";
    case ErrorCode::empty_vocabulary: return "empty_vocabulary";
    case ErrorCode::empty_context: return "empty_context";
    case ErrorCode::degenerate_context: return "degenerate_context";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::zero_norm: return "zero_norm";
    case ErrorCode::out_of_vocabulary: return "out_of_vocabulary";
    case ErrorCode::zero_count: return "zero_count";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::unknown_tag: return "unknown_tag";
    case ErrorCode::missing_role: return "missing_role";
    case ErrorCode::degenerate_training: return "degenerate_training";
  }
  return "unknown";
}

namespace {

std::string with_line(const std::string& message, std::size_t line) {
  if (line == 0) return message;
  return "line " + std::to_string(line) + ": " + message;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(with_line(message, line)), code_(code), line_(line) {}

}  // namespace compogeo
