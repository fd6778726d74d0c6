#include "csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace pspca {

std::string format_double(double value) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

double parse_cell(const std::string& token, size_t row, size_t col) {
  const auto fail = [&]() -> Error {
    return Error(ErrorCode::parse_error,
                 "csv: row " + std::to_string(row) + ", column " +
                     std::to_string(col) + ": cannot parse '" + token +
                     "' as a finite number");
  };
  if (token.empty()) throw fail();
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto res = std::from_chars(begin, end, value, std::chars_format::general);
  if (res.ec != std::errc{} || res.ptr != end) throw fail();
  if (!std::isfinite(value)) throw fail();
  return value;
}

}  // namespace

CsvData load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io_error, "csv: cannot open '" + path + "'");
  }

  const auto next_line = [&in](std::string* line) -> bool {
    if (!std::getline(in, *line)) return false;
    if (!line->empty() && line->back() == '\r') line->pop_back();
    return true;
  };

  std::string line;
  if (!next_line(&line)) {
    throw Error(ErrorCode::empty_file, "csv: '" + path + "' is empty");
  }

  CsvData data;
  data.names = split_fields(line);
  const size_t p = data.names.size();

  std::vector<double> cells;  // row-major staging
  size_t n = 0;
  while (next_line(&line)) {
    ++n;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != p) {
      throw Error(ErrorCode::ragged_row,
                  "csv: row " + std::to_string(n + 1) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(p));
    }
    for (size_t c = 0; c < p; ++c) {
      cells.push_back(parse_cell(fields[c], n + 1, c + 1));
    }
  }
  if (n == 0) {
    throw Error(ErrorCode::empty_file,
                "csv: '" + path + "' has a header but no data rows");
  }

  data.x = Eigen::Map<
      const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      cells.data(), static_cast<Index>(n), static_cast<Index>(p));
  return data;
}

void write_csv(const std::string& path, const Matrix& x,
               const std::vector<std::string>& names) {
  if (!names.empty() && static_cast<Index>(names.size()) != x.cols()) {
    throw Error(ErrorCode::invalid_argument,
                "csv: header size does not match column count");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::io_error, "csv: cannot open '" + path + "' for writing");
  }

  std::string line;
  for (Index c = 0; c < x.cols(); ++c) {
    if (c > 0) line += ',';
    line += names.empty() ? ("v" + std::to_string(c)) : names[static_cast<size_t>(c)];
  }
  line += '\n';
  out << line;

  for (Index r = 0; r < x.rows(); ++r) {
    line.clear();
    for (Index c = 0; c < x.cols(); ++c) {
      if (c > 0) line += ',';
      line += format_double(x(r, c));
    }
    line += '\n';
    out << line;
  }
  if (!out) {
    throw Error(ErrorCode::io_error, "csv: write to '" + path + "' failed");
  }
}

}  // namespace pspca
