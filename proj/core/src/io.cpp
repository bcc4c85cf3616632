#include "pursuit/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pursuit {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw std::runtime_error("matrix file truncated");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& out, double x) {
  const std::uint64_t v = std::bit_cast<std::uint64_t>(x);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw std::runtime_error("matrix file truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(v);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

}  // namespace

void write_matrix(std::ostream& out, const DenseMatrix& A) {
  out.write("PLAB", 4);
  put_u32(out, static_cast<std::uint32_t>(A.rows()));
  put_u32(out, static_cast<std::uint32_t>(A.cols()));
  for (double x : A.entries()) put_f64(out, x);
  if (!out) throw std::runtime_error("matrix write failed");
}

DenseMatrix read_matrix(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string_view(magic, 4) != "PLAB")
    throw std::runtime_error("not a PLAB matrix file");
  const auto rows = get_u32(in);
  const auto cols = get_u32(in);
  if (rows > (1u << 24) || cols > (1u << 24))
    throw std::runtime_error("matrix header implausibly large");
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(rows) * cols);
  for (std::size_t i = 0; i < static_cast<std::size_t>(rows) * cols; ++i)
    entries.push_back(get_f64(in));
  return DenseMatrix(static_cast<int>(rows), static_cast<int>(cols), std::move(entries));
}

void save_matrix(const std::string& path, const DenseMatrix& A) {
  auto out = open_out(path);
  write_matrix(out, A);
}

DenseMatrix load_matrix(const std::string& path) {
  auto in = open_in(path);
  return read_matrix(in);
}

void save_vector(const std::string& path, const DenseVector& v) {
  save_matrix(path, DenseMatrix(static_cast<int>(v.size()), 1, v));
}

DenseVector load_vector(const std::string& path) {
  DenseMatrix A = load_matrix(path);
  if (A.cols() != 1) throw std::runtime_error(path + ": expected a single-column matrix");
  return A.entries();
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_matrix_csv(std::ostream& out, const DenseMatrix& A) {
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) {
      if (j) out << ',';
      out << format_double(A(i, j));
    }
    out << '\n';
  }
}

DenseMatrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t next = line.find(',', pos);
      if (next == std::string::npos) next = line.size();
      const std::string cell = line.substr(pos, next - pos);
      // strtod, not stod: stod throws on ERANGE, which would reject
      // perfectly representable subnormals like 4.94e-324.
      char* endp = nullptr;
      const double v = std::strtod(cell.c_str(), &endp);
      const std::size_t used = static_cast<std::size_t>(endp - cell.c_str());
      if (used == 0)
        throw std::runtime_error("CSV cell is not a number: '" + cell + "'");
      if (used != cell.size() && cell.find_first_not_of(" \t\r", used) != std::string::npos)
        throw std::runtime_error("CSV cell has trailing junk: '" + cell + "'");
      row.push_back(v);
      pos = next + 1;
      if (next == line.size()) break;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("CSV rows have inconsistent lengths");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("CSV matrix file is empty");
  const int m = static_cast<int>(rows.size());
  const int n = static_cast<int>(rows.front().size());
  DenseMatrix A(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rows[i][j];
  // run the finiteness validation that the entry-vector constructor applies
  return DenseMatrix(m, n, A.entries());
}

void save_matrix_csv(const std::string& path, const DenseMatrix& A) {
  auto out = open_out(path);
  write_matrix_csv(out, A);
}

DenseMatrix load_matrix_csv(const std::string& path) {
  auto in = open_in(path);
  return read_matrix_csv(in);
}

DenseMatrix load_matrix_any(const std::string& path) {
  {
    auto in = open_in(path);
    char magic[4] = {};
    in.read(magic, 4);
    if (in && std::string_view(magic, 4) == "PLAB") return load_matrix(path);
  }
  return load_matrix_csv(path);
}

DenseVector load_vector_any(const std::string& path) {
  DenseMatrix A = load_matrix_any(path);
  if (A.cols() == 1) return A.entries();
  if (A.rows() == 1) {
    DenseVector v(A.cols());
    for (int j = 0; j < A.cols(); ++j) v[j] = A(0, j);
    return v;
  }
  throw std::runtime_error(path + ": expected a vector (one row or one column)");
}

}  // namespace pursuit
