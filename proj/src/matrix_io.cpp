// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#include "shrinklp/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace shrinklp {

std::string format_double(double value) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& token, const std::string& path) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin) {
    throw IoError("unparseable number '" + token + "' in " + path);
  }
  return v;
}

}  // namespace

void write_matrix_csv(const DenseMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  std::string line;
  for (int i = 0; i < m.rows(); ++i) {
    line.clear();
    for (int j = 0; j < m.cols(); ++j) {
      if (j) line += ',';
      line += format_double(m(i, j));
    }
    line += '\n';
    out << line;
  }
  if (!out) throw IoError("write failed: " + path);
}

DenseMatrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::vector<double> entries;
  int rows = 0;
  int cols = -1;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    int this_cols = 0;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, ',')) {
      entries.push_back(parse_double(token, path));
      ++this_cols;
    }
    if (cols < 0) {
      cols = this_cols;
    } else if (cols != this_cols) {
      throw IoError("ragged rows in " + path);
    }
    ++rows;
  }
  if (rows == 0) throw IoError("empty matrix file: " + path);
  return DenseMatrix(rows, cols, std::move(entries));
}

void write_vector_csv(const std::vector<double>& v, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (double x : v) out << format_double(x) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

std::vector<double> read_vector_csv(const std::string& path) {
  DenseMatrix m = read_matrix_csv(path);
  if (m.cols() != 1) throw IoError("expected single-column vector: " + path);
  return m.data();
}

}  // namespace shrinklp
