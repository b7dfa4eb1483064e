#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>

#include "aspatp/errors.hpp"
#include "aspatp/problems.hpp"

namespace aspatp::problems {

void write_matrix_text(const DenseMatrix& m, std::ostream& os) {
  os << m.rows() << ' ' << m.cols() << '\n';
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j);
    }
    os << '\n';
  }
}

DenseMatrix read_matrix_text(std::istream& is) {
  long long rows = -1, cols = -1;
  if (!(is >> rows >> cols) || rows < 0 || cols < 0) throw MalformedFile("matrix text: bad header");
  DenseMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t k = 0; k < m.rows() * m.cols(); ++k) {
    if (!(is >> m.data()[k])) throw MalformedFile("matrix text: truncated or non-numeric entry " + std::to_string(k));
  }
  return m;
}

void write_matrix_file(const DenseMatrix& m, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  write_matrix_text(m, os);
  if (!os) throw IoError("write to '" + path + "' failed");
}

DenseMatrix read_matrix_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "'");
  return read_matrix_text(is);
}

}  // namespace aspatp::problems
