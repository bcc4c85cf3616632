#include "pursuit/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pursuit/tolerances.hpp"

namespace pursuit {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Pairwise column inner products, cached when the matrix is small enough
// that an N x N table is cheap; otherwise recomputed per access.
class GramSource {
 public:
  explicit GramSource(const DenseMatrix& A) : A_(A) {
    const int N = A.cols();
    if (static_cast<std::size_t>(N) * N <= kCacheLimit) {
      cache_.resize(static_cast<std::size_t>(N) * N);
      for (int j = 0; j < N; ++j)
        for (int k = j; k < N; ++k) {
          const double s = column_dot(j, k);
          cache_[static_cast<std::size_t>(j) * N + k] = s;
          cache_[static_cast<std::size_t>(k) * N + j] = s;
        }
    }
  }

  double at(int i, int j) const {
    if (!cache_.empty()) return cache_[static_cast<std::size_t>(i) * A_.cols() + j];
    return column_dot(i, j);
  }

  // max(1 - lambda_min, lambda_max - 1) for the Gram of the given columns.
  double subset_delta(const std::vector<int>& idx) const {
    const int k = static_cast<int>(idx.size());
    std::vector<double> sub(static_cast<std::size_t>(k) * k);
    for (int p = 0; p < k; ++p)
      for (int q = p; q < k; ++q) {
        const double s = at(idx[p], idx[q]);
        sub[static_cast<std::size_t>(p) * k + q] = s;
        sub[static_cast<std::size_t>(q) * k + p] = s;
      }
    auto [lo, hi] = extreme_eigenvalues_symmetric(std::move(sub), k);
    return std::max(1.0 - lo, hi - 1.0);
  }

 private:
  double column_dot(int i, int j) const {
    const double* ci = A_.col(i);
    const double* cj = A_.col(j);
    double s = 0.0;
    for (int r = 0; r < A_.rows(); ++r) s += ci[r] * cj[r];
    return s;
  }

  static constexpr std::size_t kCacheLimit = 4u << 20;  // 2048 x 2048 doubles, 32 MiB

  const DenseMatrix& A_;
  std::vector<double> cache_;
};

}  // namespace

const char* ensemble_kind_name(EnsembleKind kind) {
  return kind == EnsembleKind::Gaussian ? "gaussian" : "bernoulli";
}

void EnsembleSpec::validate() const {
  require(rows >= 1, "EnsembleSpec: rows must be >= 1");
  require(cols >= 1, "EnsembleSpec: cols must be >= 1");
}

DenseMatrix generate(const EnsembleSpec& spec) {
  spec.validate();
  DenseMatrix A(spec.rows, spec.cols);
  Rng rng(spec.seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.rows));
  for (int j = 0; j < spec.cols; ++j) {
    double* c = A.col(j);
    if (spec.kind == EnsembleKind::Gaussian) {
      for (int i = 0; i < spec.rows; ++i) c[i] = rng.normal(0.0, scale);
    } else {
      for (int i = 0; i < spec.rows; ++i)
        c[i] = (rng.next_u64() >> 63) ? scale : -scale;
    }
  }
  return A;
}

double RipCertificate::delta() const {
  if (method != RipMethod::Exhaustive || delta_lower != delta_upper)
    throw std::logic_error("RipCertificate::delta: exact value requires an exhaustive certificate");
  return delta_lower;
}

std::uint64_t subset_count_capped(int n, int k, std::uint64_t cap) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i);
    if (c > std::numeric_limits<std::uint64_t>::max() / factor) return cap + 1;
    c = c * factor / static_cast<std::uint64_t>(i);  // exact: partial products are binomials
    if (c > cap) return cap + 1;
  }
  return c;
}

RipCertificate rip_exhaustive(const DenseMatrix& A, int k) {
  require(A.rows() >= 1 && A.cols() >= 1, "rip_exhaustive: matrix must be nonempty");
  require(k >= 1 && k <= A.cols(), "rip_exhaustive: k must be in [1, cols]");
  const int N = A.cols();
  const std::uint64_t guard = tol::max_exhaustive_subsets;
  if (subset_count_capped(N, k, guard) > guard)
    throw std::invalid_argument(
        "rip_exhaustive: C(" + std::to_string(N) + ", " + std::to_string(k) +
        ") exceeds the " + std::to_string(guard) +
        "-subset enumeration guard; use rip_sampled instead");

  GramSource gram(A);
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;

  double delta = 0.0;
  std::uint64_t visited = 0;
  while (true) {
    delta = std::max(delta, gram.subset_delta(idx));
    ++visited;
    int p = k - 1;
    while (p >= 0 && idx[p] == N - k + p) --p;
    if (p < 0) break;
    ++idx[p];
    for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }

  RipCertificate cert;
  cert.k = k;
  cert.delta_lower = delta;
  cert.delta_upper = delta;
  cert.method = RipMethod::Exhaustive;
  cert.trials = visited;
  return cert;
}

RipCertificate rip_sampled(const DenseMatrix& A, int k, std::uint64_t trials,
                           std::uint64_t seed) {
  require(A.rows() >= 1 && A.cols() >= 1, "rip_sampled: matrix must be nonempty");
  require(k >= 1 && k <= A.cols(), "rip_sampled: k must be in [1, cols]");
  require(trials >= 1, "rip_sampled: trials must be >= 1");

  GramSource gram(A);
  double delta = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(Rng::derive_seed(seed, t));
    const SupportSet support = random_support(A.cols(), k, rng);
    delta = std::max(delta, gram.subset_delta(support.indices()));
  }

  RipCertificate cert;
  cert.k = k;
  cert.delta_lower = delta;
  cert.delta_upper = std::max(1.0, delta);
  cert.method = RipMethod::Sampled;
  cert.trials = trials;
  return cert;
}

ConcentrationReport concentration_check(EnsembleKind kind, int m, double epsilon,
                                        std::uint64_t trials, std::uint64_t seed) {
  require(m >= 1, "concentration_check: m must be >= 1");
  require(epsilon > 0.0 && epsilon <= 1.0, "concentration_check: epsilon must be in (0, 1]");
  require(trials >= 1000, "concentration_check: trials must be >= 1000");

  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  std::uint64_t hits = 0;
  DenseVector z(m);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(Rng::derive_seed(seed, t));
    const DenseVector u = random_unit_vector(m, rng);
    if (kind == EnsembleKind::Gaussian) {
      for (int i = 0; i < m; ++i) z[i] = rng.normal(0.0, scale);
    } else {
      for (int i = 0; i < m; ++i) z[i] = (rng.next_u64() >> 63) ? scale : -scale;
    }
    if (std::abs(dot(u, z)) >= epsilon) ++hits;
  }

  ConcentrationReport report;
  report.kind = kind;
  report.epsilon = epsilon;
  report.m = m;
  report.trials = trials;
  report.hits = hits;
  report.empirical_rate = static_cast<double>(hits) / static_cast<double>(trials);
  const double base = std::exp(-0.5 * epsilon * epsilon * static_cast<double>(m));
  report.theoretical_bound = (kind == EnsembleKind::Bernoulli) ? 2.0 * base : base;
  return report;
}

void MeasurementConstants::validate() const {
  require(std::isfinite(q1) && q1 >= 1.0, "MeasurementConstants: q1 must be >= 1");
  require(std::isfinite(q2) && q2 >= 1.0, "MeasurementConstants: q2 must be >= 1");
  require(std::isfinite(c1) && c1 > 0.0, "MeasurementConstants: c1 must be > 0");
  require(std::isfinite(c2) && c2 > 0.0, "MeasurementConstants: c2 must be > 0");
  require(std::isfinite(D) && D > 1.0, "MeasurementConstants: D must be > 1");
}

int measurement_bound(const SelectionRule& rule, int k, int N, int l,
                      const MeasurementConstants& constants,
                      std::optional<double> beta) {
  rule.validate();
  constants.validate();
  require(k >= 1, "measurement_bound: k must be >= 1");
  require(k < N, "measurement_bound: k must be < N");
  require(l >= 1 && l < N, "measurement_bound: l must satisfy 1 <= l < N");
  if (beta)
    require(*beta > 0.0 && *beta < 1.0 / std::exp(1.0),
            "measurement_bound: beta must lie in (0, 1/e)");

  const double alpha2 = rule.alpha * rule.alpha;
  const double q3 = constants.q1 + constants.q2;
  const double log_arg = q3 * static_cast<double>(l) * static_cast<double>(N - k);

  double lead = (rule.kind == SelectionRuleKind::RelaxedWeak)
                    ? 1.0 / (constants.c1 * alpha2)
                    : 4.0 * static_cast<double>(k) / (constants.c1 * alpha2);
  double first;
  if (beta) {
    first = 2.0 * lead * std::log(log_arg / *beta);
  } else {
    first = lead * std::log(log_arg);
  }
  const double second = 2.0 * static_cast<double>(k) / constants.c2 * std::log(constants.D);

  const double needed = std::ceil(std::max(first, second));
  if (!(needed <= static_cast<double>(std::numeric_limits<int>::max())))
    throw std::overflow_error("measurement_bound: required m does not fit in an int");
  return static_cast<int>(needed);
}

double concentration_rate_c0(double eps) {
  require(eps > 0.0 && eps < 1.0, "concentration_rate_c0: eps must be in (0, 1)");
  return eps * eps / 4.0 - eps * eps * eps / 6.0;
}

SupportSet random_support(int N, int k, Rng& rng) {
  require(N >= 0 && k >= 0 && k <= N, "random_support: need 0 <= k <= N");
  std::vector<int> chosen;
  chosen.reserve(k);
  // Floyd's sampling: j-th round picks uniformly from {0..j}, remapping
  // collisions to j itself; yields uniform k-subsets in k draws.
  for (int j = N - k; j < N; ++j) {
    const int t = rng.uniform_int(j + 1);
    if (std::find(chosen.begin(), chosen.end(), t) != chosen.end())
      chosen.push_back(j);
    else
      chosen.push_back(t);
  }
  return SupportSet(std::move(chosen));
}

DenseVector random_unit_vector(int dim, Rng& rng) {
  require(dim >= 1, "random_unit_vector: dim must be >= 1");
  DenseVector v(dim);
  double n = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v[i] = rng.normal();
    n = norm2(v);
  } while (n == 0.0);
  for (int i = 0; i < dim; ++i) v[i] /= n;
  return v;
}

namespace {

// Cheap lower bound on delta_k from single columns and (for k >= 2) column
// pairs; exits early once the bound reaches `stop_at`. Sound because delta_j
// is non-decreasing in j.
double prescreen_delta_lower_bound(const DenseMatrix& A, int k, double stop_at) {
  const int m = A.rows();
  const int N = A.cols();
  std::vector<double> sq(N);
  double bound = 0.0;
  for (int j = 0; j < N; ++j) {
    const double* c = A.col(j);
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += c[i] * c[i];
    sq[j] = s;
    bound = std::max(bound, std::abs(s - 1.0));
    if (bound >= stop_at) return bound;
  }
  if (k < 2) return bound;
  for (int a = 0; a < N - 1; ++a) {
    const double* ca = A.col(a);
    for (int b = a + 1; b < N; ++b) {
      const double* cb = A.col(b);
      double cross = 0.0;
      for (int i = 0; i < m; ++i) cross += ca[i] * cb[i];
      // eigenvalues of [[sq_a, cross], [cross, sq_b]]
      const double mean = 0.5 * (sq[a] + sq[b]);
      const double half_gap = 0.5 * (sq[a] - sq[b]);
      const double radius = std::sqrt(half_gap * half_gap + cross * cross);
      bound = std::max({bound, 1.0 - (mean - radius), (mean + radius) - 1.0});
      if (bound >= stop_at) return bound;
    }
  }
  return bound;
}

}  // namespace

SeedSearchResult search_seed_for_rip(EnsembleKind kind, int m, int N, int k,
                                     double max_delta, std::uint64_t seed_start,
                                     std::uint64_t seed_count,
                                     std::uint64_t full_eval_count) {
  require(m >= 1 && N >= 1, "search_seed_for_rip: matrix dimensions must be positive");
  require(k >= 1 && k <= N, "search_seed_for_rip: k must be in [1, N]");
  require(max_delta > 0.0, "search_seed_for_rip: max_delta must be positive");
  require(seed_count >= 1, "search_seed_for_rip: seed_count must be >= 1");
  const std::uint64_t guard = tol::max_exhaustive_subsets;
  require(subset_count_capped(N, k, guard) <= guard,
          "search_seed_for_rip: C(N,k) exceeds the exhaustive enumeration guard");

  SeedSearchResult result;
  result.best_delta = std::numeric_limits<double>::infinity();

  for (std::uint64_t s = 0; s < seed_count; ++s) {
    const std::uint64_t seed = seed_start + s;
    const DenseMatrix A = generate({kind, m, N, seed});
    ++result.seeds_scanned;

    const bool forced_full = s < full_eval_count;
    if (!forced_full &&
        prescreen_delta_lower_bound(A, k, max_delta) >= max_delta)
      continue;  // provably delta_k >= max_delta

    const double delta = rip_exhaustive(A, k).delta();
    ++result.fully_evaluated;
    if (delta < result.best_delta) {
      result.best_delta = delta;
      result.best_seed = seed;
    }
    if (delta < max_delta) {
      result.found = true;
      break;
    }
  }
  return result;
}

}  // namespace pursuit
