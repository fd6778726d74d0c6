#pragma once

#include <string>
#include <vector>

#include "matrix_core.hpp"

namespace pspca {

struct CsvData {
  Matrix x;                        // rows = observations, cols = variables
  std::vector<std::string> names;  // header, one per column
};

// Strict dialect: comma delimiter, '\n' or '\r\n' line endings, no quoting,
// no thousands separators. First row is the header; every data cell must be a
// finite decimal number (missing values are rejected, not imputed). Row/col
// positions in errors are 1-based file coordinates (header = row 1).
CsvData load_csv(const std::string& path);

// Writes the matrix with values printed at 17 significant digits, so a read
// back through load_csv is bit-identical. Empty names fall back to v0..v{p-1}.
void write_csv(const std::string& path, const Matrix& x,
               const std::vector<std::string>& names = {});

// %.17g-style shortest-within-17-significant-digits formatting, shared by the
// CSV writer and the JSON report emitter.
std::string format_double(double value);

}  // namespace pspca
