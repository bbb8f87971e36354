#include "core/matrix_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace botoc {

namespace {

[[noreturn]] void parse_fail(const std::string& source, int line,
                             const std::string& msg) {
  throw Error(ErrorCode::Parse,
              source + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

Matrix parse_matrix(std::istream& in, const std::string& source_name) {
  std::string line;
  int line_no = 0;

  long rows = 0, cols = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream head(line);
    if (!(head >> rows >> cols) || rows < 1 || cols < 1)
      parse_fail(source_name, line_no, "expected header 'rows cols'");
    break;
  }
  if (rows == 0) parse_fail(source_name, line_no, "empty input");

  Matrix m(rows, cols);
  long r = 0;
  while (r < rows && std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const char* p = line.c_str();
    for (long c = 0; c < cols; ++c) {
      char* end = nullptr;
      double re = std::strtod(p, &end);
      if (end == p)
        parse_fail(source_name, line_no,
                   "row " + std::to_string(r + 1) + " entry " +
                       std::to_string(c + 1) + ": expected real part");
      p = end;
      double im = std::strtod(p, &end);
      if (end == p || *end != 'j')
        parse_fail(source_name, line_no,
                   "row " + std::to_string(r + 1) + " entry " +
                       std::to_string(c + 1) + ": expected imaginary part ending in j");
      p = end + 1;
      m(r, c) = Complex(re, im);
    }
    while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
    if (*p != '\0')
      parse_fail(source_name, line_no,
                 "row " + std::to_string(r + 1) + " has more than " +
                     std::to_string(cols) + " entries");
    ++r;
  }
  if (r < rows)
    parse_fail(source_name, line_no,
               "expected " + std::to_string(rows) + " rows, got " +
                   std::to_string(r));
  return m;
}

std::string format_matrix(const Matrix& m) {
  std::string out;
  out.reserve(size_t(m.size()) * 24 + 32);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%ld %ld\n", long(m.rows()), long(m.cols()));
  out += buf;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g%+.17gj", m(r, c).real(),
                    m(r, c).imag());
      if (c) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return parse_matrix(in, path);
}

void save_matrix(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  out << format_matrix(m);
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

}  // namespace botoc
