#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qmsel/types.hpp"

namespace qmsel::cli {

/// Unreadable or ill-formed data file; the message carries file:line:column.
class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numeric comma-separated table. With `header` the first non-empty line is
/// skipped. Every row must have the same number of fields.
Matrix read_matrix(std::istream& in, bool header, const std::string& source = "<csv>");
Matrix read_matrix(const std::string& path, bool header);

/// Single-column table as a vector.
Vector read_vector(const std::string& path, bool header);

/// Full precision ("{:.17g}") so a round trip reproduces the doubles exactly.
void write_matrix(std::ostream& os, const MatrixRef& m);

}  // namespace qmsel::cli
