#pragma once

#include <iosfwd>
#include <string>

#include "pursuit/linalg.hpp"

namespace pursuit {

// Binary matrix format ("PLAB"):
//   bytes 0..3   magic "PLAB"
//   bytes 4..7   u32 rows, little-endian
//   bytes 8..11  u32 cols, little-endian
//   then rows*cols f64 entries, little-endian, column-major.
// Round-trips are bit-exact. Vectors are stored as n x 1 matrices.
void write_matrix(std::ostream& out, const DenseMatrix& A);
DenseMatrix read_matrix(std::istream& in);
void save_matrix(const std::string& path, const DenseMatrix& A);
DenseMatrix load_matrix(const std::string& path);

void save_vector(const std::string& path, const DenseVector& v);
DenseVector load_vector(const std::string& path);

// CSV alternative: one row per line, comma-separated, %.17g formatting
// (which round-trips doubles exactly through strtod).
void write_matrix_csv(std::ostream& out, const DenseMatrix& A);
DenseMatrix read_matrix_csv(std::istream& in);
void save_matrix_csv(const std::string& path, const DenseMatrix& A);
DenseMatrix load_matrix_csv(const std::string& path);

// Load dispatching on file content: PLAB magic -> binary, otherwise CSV.
DenseMatrix load_matrix_any(const std::string& path);
DenseVector load_vector_any(const std::string& path);

// 17-significant-digit decimal rendering; always round-trips through strtod.
std::string format_double(double x);

}  // namespace pursuit
