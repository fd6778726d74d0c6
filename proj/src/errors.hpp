#pragma once

#include <stdexcept>
#include <string>

namespace pspca {

enum class ErrorCode {
  invalid_argument,
  non_finite,
  constant_column,
  singular_submatrix,
  no_convergence,
  zero_matrix,
  empty_support,
  index_out_of_range,
  zero_score,
  zero_projection,
  alpha_infeasible,
  too_large,
  bad_support,
  parse_error,
  ragged_row,
  empty_file,
  io_error,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pspca
