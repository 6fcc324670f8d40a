#include "qmsel_cli/csv.hpp"

#include <charconv>
#include <fstream>
#include <vector>

#include <fmt/format.h>

#include "qmsel_cli/config.hpp"

namespace qmsel::cli {

Matrix read_matrix(std::istream& in, bool header, const std::string& source) {
  std::vector<double> values;
  Eigen::Index cols = -1;
  Eigen::Index rows = 0;
  std::string line;
  int line_no = 0;
  bool skipped_header = !header;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (!skipped_header) {
      skipped_header = true;
      continue;
    }
    Eigen::Index field = 0;
    std::size_t start = 0;
    while (true) {
      auto end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      const auto text = trim(std::string_view(line).substr(start, end - start));
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw CsvError(fmt::format("{}:{}:{}: not a number: '{}'", source, line_no, field + 1, text));
      values.push_back(v);
      ++field;
      if (end == line.size()) break;
      start = end + 1;
    }
    if (cols < 0) cols = field;
    if (field != cols)
      throw CsvError(fmt::format("{}:{}: expected {} fields, found {}", source, line_no, cols, field));
    ++rows;
  }
  if (rows == 0) throw CsvError(fmt::format("{}: no data rows", source));
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = values[static_cast<std::size_t>(i * cols + j)];
  return m;
}

Matrix read_matrix(const std::string& path, bool header) {
  std::ifstream in(path);
  if (!in) throw CsvError(fmt::format("{}: cannot open file", path));
  return read_matrix(in, header, path);
}

Vector read_vector(const std::string& path, bool header) {
  Matrix m = read_matrix(path, header);
  if (m.cols() != 1) throw CsvError(fmt::format("{}: expected one column, found {}", path, m.cols()));
  return m.col(0);
}

void write_matrix(std::ostream& os, const MatrixRef& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << fmt::format("{:.17g}", m(i, j));
    }
    os << '\n';
  }
}

}  // namespace qmsel::cli
