#include "errors.hpp"

namespace pspca {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::non_finite: return "non_finite";
    case ErrorCode::constant_column: return "constant_column";
    case ErrorCode::singular_submatrix: return "singular_submatrix";
    case ErrorCode::no_convergence: return "no_convergence";
    case ErrorCode::zero_matrix: return "zero_matrix";
    case ErrorCode::empty_support: return "empty_support";
    case ErrorCode::index_out_of_range: return "index_out_of_range";
    case ErrorCode::zero_score: return "zero_score";
    case ErrorCode::zero_projection: return "zero_projection";
    case ErrorCode::alpha_infeasible: return "alpha_infeasible";
    case ErrorCode::too_large: return "too_large";
    case ErrorCode::bad_support: return "bad_support";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::ragged_row: return "ragged_row";
    case ErrorCode::empty_file: return "empty_file";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

}  // namespace pspca
