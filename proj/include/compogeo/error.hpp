#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace compogeo {

enum class ErrorCode {
  io = 1,
  parse,
  arity,
  non_numeric,
  zero_vector,
  empty_vocabulary,
  empty_context,
  degenerate_context,
  dimension_mismatch,
  zero_norm,
  out_of_vocabulary,
  zero_count,
  invalid_argument,
  unknown_tag,
  missing_role,
  degenerate_training,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `line()` is the 1-based input line
/// for data errors and 0 when no line applies.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0);

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace compogeo
