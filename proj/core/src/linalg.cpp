#include "pursuit/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "pursuit/tolerances.hpp"

namespace pursuit {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

DenseMatrix::DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  require(rows >= 0 && cols >= 0, "matrix dimensions must be non-negative");
  a_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

DenseMatrix::DenseMatrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  require(rows >= 0 && cols >= 0, "matrix dimensions must be non-negative");
  require(a_.size() == static_cast<std::size_t>(rows) * cols,
          "entry count does not match rows*cols");
  for (double x : a_) require(std::isfinite(x), "matrix entries must be finite");
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix I(n, n);
  for (int i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

SupportSet::SupportSet(std::vector<int> indices) : idx_(std::move(indices)) {
  std::sort(idx_.begin(), idx_.end());
  require(idx_.empty() || idx_.front() >= 0, "support indices must be non-negative");
  require(std::adjacent_find(idx_.begin(), idx_.end()) == idx_.end(),
          "support indices must be distinct");
}

bool SupportSet::contains(int i) const {
  return std::binary_search(idx_.begin(), idx_.end(), i);
}

bool SupportSet::insert(int i) {
  require(i >= 0, "support indices must be non-negative");
  auto it = std::lower_bound(idx_.begin(), idx_.end(), i);
  if (it != idx_.end() && *it == i) return false;
  idx_.insert(it, i);
  return true;
}

void SupportSet::insert_all(const SupportSet& other) {
  for (int i : other) insert(i);
}

bool SupportSet::is_subset_of(const SupportSet& o) const {
  return std::includes(o.idx_.begin(), o.idx_.end(), idx_.begin(), idx_.end());
}

bool SupportSet::disjoint_from(const SupportSet& o) const {
  for (int i : idx_)
    if (o.contains(i)) return false;
  return true;
}

void SupportSet::check_range(int n_cols) const {
  if (!idx_.empty() && idx_.back() >= n_cols)
    throw std::out_of_range("support index " + std::to_string(idx_.back()) +
                            " out of range for " + std::to_string(n_cols) + " columns");
}

RankDeficiencyError::RankDeficiencyError(int column_, double pivot_, double threshold_)
    : std::runtime_error("rank deficiency: |R(" + std::to_string(column_) + "," +
                         std::to_string(column_) + ")| = " + std::to_string(pivot_) +
                         " below threshold " + std::to_string(threshold_)),
      column(column_),
      pivot(pivot_),
      threshold(threshold_) {}

DenseVector matvec(const DenseMatrix& A, const DenseVector& v) {
  require(static_cast<int>(v.size()) == A.cols(), "matvec: v.size() != A.cols()");
  DenseVector y(A.rows(), 0.0);
  for (int j = 0; j < A.cols(); ++j) {
    const double* c = A.col(j);
    const double vj = v[j];
    if (vj == 0.0) continue;
    for (int i = 0; i < A.rows(); ++i) y[i] += c[i] * vj;
  }
  return y;
}

DenseVector adjoint_matvec(const DenseMatrix& A, const DenseVector& u) {
  require(static_cast<int>(u.size()) == A.rows(), "adjoint_matvec: u.size() != A.rows()");
  DenseVector g(A.cols());
  for (int j = 0; j < A.cols(); ++j) {
    const double* c = A.col(j);
    double s = 0.0;
    for (int i = 0; i < A.rows(); ++i) s += c[i] * u[i];
    g[j] = s;
  }
  return g;
}

DenseMatrix restrict_columns(const DenseMatrix& A, const SupportSet& support) {
  support.check_range(A.cols());
  DenseMatrix R(A.rows(), support.size());
  for (int p = 0; p < support.size(); ++p) {
    const double* src = A.col(support[p]);
    std::copy(src, src + A.rows(), R.col(p));
  }
  return R;
}

DenseVector least_squares(const DenseMatrix& A, const DenseVector& y) {
  const int m = A.rows();
  const int n = A.cols();
  require(static_cast<int>(y.size()) == m, "least_squares: y.size() != A.rows()");
  if (n == 0) return {};
  if (n > m)
    throw RankDeficiencyError(m, 0.0, 0.0);  // more columns than rows can never be full rank

  // Rank threshold is relative to the largest column norm of the input.
  double max_col_norm = 0.0;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    const double* c = A.col(j);
    for (int i = 0; i < m; ++i) s += c[i] * c[i];
    max_col_norm = std::max(max_col_norm, std::sqrt(s));
  }
  const double pivot_tol = tol::rank * max_col_norm;

  DenseMatrix R = A;  // factored in place
  DenseVector b = y;  // Q^T y accumulated in place

  // Householder QR, reflectors applied on the fly to b.
  for (int j = 0; j < n; ++j) {
    double* cj = R.col(j);
    double sigma = 0.0;
    for (int i = j; i < m; ++i) sigma += cj[i] * cj[i];
    double alpha = std::sqrt(sigma);
    if (std::abs(alpha) <= pivot_tol) throw RankDeficiencyError(j, std::abs(alpha), pivot_tol);
    if (cj[j] > 0) alpha = -alpha;

    // v = x - alpha e_j, normalized so that v_j = 1
    const double vj = cj[j] - alpha;
    const double beta = -1.0 / (alpha * vj);  // H = I - beta v v^T

    // store reflector tail in place below the diagonal; diagonal gets alpha
    cj[j] = alpha;
    for (int i = j + 1; i < m; ++i) cj[i] /= vj;

    for (int k = j + 1; k < n; ++k) {
      double* ck = R.col(k);
      double s = ck[j];
      for (int i = j + 1; i < m; ++i) s += cj[i] * ck[i];
      s *= beta * vj * vj;  // undo the v_j normalization folded into beta
      ck[j] -= s;
      for (int i = j + 1; i < m; ++i) ck[i] -= s * cj[i];
    }
    {
      double s = b[j];
      for (int i = j + 1; i < m; ++i) s += cj[i] * b[i];
      s *= beta * vj * vj;
      b[j] -= s;
      for (int i = j + 1; i < m; ++i) b[i] -= s * cj[i];
    }
  }

  // back substitution on the n x n upper triangle
  DenseVector x(n);
  for (int j = n - 1; j >= 0; --j) {
    double s = b[j];
    for (int k = j + 1; k < n; ++k) s -= R(j, k) * x[k];
    x[j] = s / R(j, j);
  }
  return x;
}

std::pair<double, double> extreme_eigenvalues_symmetric(std::vector<double> G, int n) {
  require(n >= 1, "extreme_eigenvalues_symmetric: n must be positive");
  require(G.size() == static_cast<std::size_t>(n) * n,
          "extreme_eigenvalues_symmetric: entry count does not match n*n");
  auto at = [&](int i, int j) -> double& { return G[static_cast<std::size_t>(i) * n + j]; };

  double frob = 0.0;
  for (double x : G) frob += x * x;
  frob = std::sqrt(frob);
  const double off_target = tol::eigen * std::max(frob, 1e-300);

  // cyclic Jacobi sweeps
  const int max_sweeps = 128;
  int sweep = 0;
  while (true) {
    double off = 0.0;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) off += 2.0 * at(p, q) * at(p, q);
    if (std::sqrt(off) <= off_target) break;
    if (sweep++ == max_sweeps)
      throw std::runtime_error("extreme_eigenvalues_symmetric: Jacobi iteration did not converge");

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double app = at(p, p);
        const double aqq = at(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double gip = at(i, p);
          const double giq = at(i, q);
          at(i, p) = c * gip - s * giq;
          at(i, q) = s * gip + c * giq;
        }
        for (int i = 0; i < n; ++i) {
          const double gpi = at(p, i);
          const double gqi = at(q, i);
          at(p, i) = c * gpi - s * gqi;
          at(q, i) = s * gpi + c * gqi;
        }
      }
    }
  }

  double lo = at(0, 0);
  double hi = at(0, 0);
  for (int i = 1; i < n; ++i) {
    lo = std::min(lo, at(i, i));
    hi = std::max(hi, at(i, i));
  }
  return {lo, hi};
}

std::pair<double, double> extreme_singular_values(const DenseMatrix& A) {
  const int n = A.cols();
  require(A.rows() >= 1 && n >= 1, "extreme_singular_values: matrix must be nonempty");

  // Gram matrix G = A^T A (symmetric positive semidefinite)
  std::vector<double> G(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      double s = 0.0;
      const double* cj = A.col(j);
      const double* ck = A.col(k);
      for (int i = 0; i < A.rows(); ++i) s += cj[i] * ck[i];
      G[static_cast<std::size_t>(j) * n + k] = s;
      G[static_cast<std::size_t>(k) * n + j] = s;
    }
  }
  auto [lo, hi] = extreme_eigenvalues_symmetric(std::move(G), n);
  return {std::sqrt(std::max(0.0, lo)), std::sqrt(std::max(0.0, hi))};
}

double dot(const DenseVector& a, const DenseVector& b) {
  require(a.size() == b.size(), "dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const DenseVector& v) { return std::sqrt(dot(v, v)); }

double inf_norm(const DenseVector& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace pursuit
