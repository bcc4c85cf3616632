#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pursuit {

using DenseVector = std::vector<double>;

// Dense real matrix, column-major. Column-major because every hot path here
// walks whole columns: correlations against the residual, restricted products,
// QR on restricted submatrices.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols);  // zero-filled
  // entries are column-major and must all be finite.
  DenseMatrix(int rows, int cols, std::vector<double> entries);
  static DenseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return a_[idx(i, j)]; }
  double operator()(int i, int j) const { return a_[idx(i, j)]; }
  double* col(int j) { return a_.data() + static_cast<std::size_t>(j) * rows_; }
  const double* col(int j) const { return a_.data() + static_cast<std::size_t>(j) * rows_; }
  const std::vector<double>& entries() const { return a_; }
  bool operator==(const DenseMatrix& o) const = default;

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * rows_ + i; }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

// Strictly increasing set of column indices; the live support of an estimate.
class SupportSet {
 public:
  SupportSet() = default;
  explicit SupportSet(std::vector<int> indices);  // sorts, rejects duplicates/negatives

  bool contains(int i) const;
  bool insert(int i);  // returns true if i was new
  void insert_all(const SupportSet& other);
  int size() const { return static_cast<int>(idx_.size()); }
  bool empty() const { return idx_.empty(); }
  int operator[](int pos) const { return idx_[pos]; }
  const std::vector<int>& indices() const { return idx_; }
  auto begin() const { return idx_.begin(); }
  auto end() const { return idx_.end(); }
  bool operator==(const SupportSet& o) const = default;
  bool is_subset_of(const SupportSet& o) const;
  bool disjoint_from(const SupportSet& o) const;
  // throws if any index falls outside [0, n_cols)
  void check_range(int n_cols) const;

 private:
  std::vector<int> idx_;
};

struct RankDeficiencyError : std::runtime_error {
  RankDeficiencyError(int column, double pivot, double threshold);
  int column;
  double pivot;
  double threshold;
};

// y = A v
DenseVector matvec(const DenseMatrix& A, const DenseVector& v);
// g = A^T u, i.e. g_j = <col_j, u>
DenseVector adjoint_matvec(const DenseMatrix& A, const DenseVector& u);
// columns of A listed by the support set, in order
DenseMatrix restrict_columns(const DenseMatrix& A, const SupportSet& support);

// argmin_z |A z - y|_2 via Householder QR. Requires full column rank; a
// collapsed R-diagonal throws RankDeficiencyError instead of returning
// garbage. A zero-column A yields the empty solution (residual is y itself).
DenseVector least_squares(const DenseMatrix& A, const DenseVector& y);

// (sigma_min, sigma_max) of A, computed as extreme eigenvalues of A^T A by a
// cyclic Jacobi iteration. Meant for small matrices (tens of columns).
std::pair<double, double> extreme_singular_values(const DenseMatrix& A);

// (lambda_min, lambda_max) of a symmetric n x n matrix given as a flat array
// (n*n entries, symmetric so storage order does not matter). Same Jacobi
// iteration that backs extreme_singular_values.
std::pair<double, double> extreme_eigenvalues_symmetric(std::vector<double> G, int n);

double dot(const DenseVector& a, const DenseVector& b);
double norm2(const DenseVector& v);
double inf_norm(const DenseVector& v);

}  // namespace pursuit
