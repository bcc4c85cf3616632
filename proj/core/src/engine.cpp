#include "pursuit/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace pursuit {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::string support_to_string(const SupportSet& s) {
  std::ostringstream os;
  os << "{";
  for (int i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << "}";
  return os.str();
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

const char* pursuit_algorithm_name(PursuitAlgorithm algorithm) {
  switch (algorithm) {
    case PursuitAlgorithm::MP: return "mp";
    case PursuitAlgorithm::OMP: return "omp";
    case PursuitAlgorithm::GP: return "gp";
  }
  return "?";
}

const char* pursuit_status_name(PursuitStatus status) {
  switch (status) {
    case PursuitStatus::Converged: return "converged";
    case PursuitStatus::MaxIterations: return "max-iterations";
    case PursuitStatus::Stalled: return "stalled";
  }
  return "?";
}

void PursuitConfig::validate() const {
  rule.validate();
  require(max_iterations >= 0, "PursuitConfig: max_iterations must be >= 0 (0 = auto)");
  require(residual_tol >= 0.0, "PursuitConfig: residual_tol must be >= 0");
  if (sparsity_k) require(*sparsity_k >= 1, "PursuitConfig: sparsity_k must be >= 1");
  if (prune_to_k) {
    require(sparsity_k.has_value(), "PursuitConfig: prune_to_k requires sparsity_k");
    require(algorithm == PursuitAlgorithm::OMP,
            "PursuitConfig: prune_to_k requires the orthogonal updater");
  }
}

int PursuitConfig::effective_max_iterations(int m) const {
  if (max_iterations >= 1) return max_iterations;
  if (sparsity_k) return 2 * *sparsity_k;
  return std::max(1, m);
}

void SparseSignal::validate() const {
  require(N >= 0, "SparseSignal: N must be >= 0");
  support.check_range(N);
  require(static_cast<std::size_t>(support.size()) == values.size(),
          "SparseSignal: values must align one-to-one with support");
  for (double v : values)
    require(std::isfinite(v) && v != 0.0, "SparseSignal: values must be finite and nonzero");
}

DenseVector SparseSignal::dense() const {
  validate();
  DenseVector x(N, 0.0);
  for (int i = 0; i < support.size(); ++i) x[support[i]] = values[i];
  return x;
}

SolveFailure::SolveFailure(SupportSet support_, const std::string& detail)
    : std::runtime_error("least-squares failure on support " +
                         support_to_string(support_) + ": " + detail),
      support(std::move(support_)) {}

namespace {

struct LoopContext {
  PursuitAlgorithm algorithm;
  const SelectionRule* rule = nullptr;              // rule-driven mode
  const std::vector<SupportSet>* forced = nullptr;  // replay mode
  int max_iterations = 0;
  double residual_tol = 0.0;  // relative to ||y||
  std::optional<int> sparsity_k;
  bool prune = false;
};

DenseVector solve_or_fail(const DenseMatrix& A, const SupportSet& s, const DenseVector& y) {
  try {
    return least_squares(restrict_columns(A, s), y);
  } catch (const RankDeficiencyError& e) {
    throw SolveFailure(s, e.what());
  }
}

PursuitResult run_loop(const DenseMatrix& A, const DenseVector& y, const LoopContext& ctx) {
  require(static_cast<int>(y.size()) == A.rows(), "pursuit: y length must equal matrix rows");
  require(A.rows() >= 1 && A.cols() >= 1, "pursuit: matrix must be nonempty");

  PursuitResult out;
  PursuitState& st = out.state;
  PursuitTrace& tr = out.trace;

  st.residual = y;
  st.estimate.assign(A.cols(), 0.0);
  st.approximation.assign(A.rows(), 0.0);

  const double y_norm = norm2(y);
  tr.initial_residual_norm = y_norm;
  const double stop_norm = ctx.residual_tol * y_norm;

  double prev_norm = y_norm;

  while (true) {
    const double r_norm = norm2(st.residual);
    if (r_norm <= stop_norm) {
      tr.status = PursuitStatus::Converged;
      break;
    }
    if (st.n >= ctx.max_iterations) {
      tr.status = PursuitStatus::MaxIterations;
      break;
    }

    const DenseVector g = adjoint_matvec(A, st.residual);

    SupportSet selected;
    if (ctx.forced) {
      selected = (*ctx.forced)[static_cast<std::size_t>(st.n)];
      selected.check_range(A.cols());
      if (selected.empty()) {
        tr.status = PursuitStatus::Stalled;
        tr.stall_reason = "forced selection schedule supplied an empty set";
        break;
      }
    } else {
      const std::optional<SelectionOutcome> outcome = select(*ctx.rule, g, r_norm);
      if (!outcome) {
        tr.status = PursuitStatus::Stalled;
        tr.stall_reason = "residual correlation vanished (every column inner product is 0)";
        break;
      }
      if (outcome->indices.empty()) {
        tr.status = PursuitStatus::Stalled;
        tr.stall_reason = "relaxed rule selected nothing at its threshold";
        break;
      }
      selected = outcome->indices;
    }

    double step = kNaN;
    if (ctx.algorithm == PursuitAlgorithm::MP) {
      st.support.insert_all(selected);
      for (int i : selected) {
        const double gi = g[i];
        st.estimate[i] += gi;
        const double* c = A.col(i);
        for (int row = 0; row < A.rows(); ++row) {
          st.approximation[row] += gi * c[row];
          st.residual[row] -= gi * c[row];
        }
      }
    } else if (ctx.algorithm == PursuitAlgorithm::GP) {
      SupportSet next = st.support;
      next.insert_all(selected);
      DenseVector d(next.size());
      for (int p = 0; p < next.size(); ++p) d[p] = g[next[p]];
      const DenseMatrix R = restrict_columns(A, next);
      const DenseVector c = matvec(R, d);
      const double cc = dot(c, c);
      if (cc == 0.0) {
        tr.status = PursuitStatus::Stalled;
        tr.stall_reason = "degenerate direction (restricted correlation maps to zero)";
        break;
      }
      step = dot(st.residual, c) / cc;
      for (int p = 0; p < next.size(); ++p) st.estimate[next[p]] += step * d[p];
      for (int row = 0; row < A.rows(); ++row) {
        st.approximation[row] += step * c[row];
        st.residual[row] -= step * c[row];
      }
      st.support = std::move(next);
    } else {  // OMP
      SupportSet next = st.support;
      next.insert_all(selected);
      if (next.size() == st.support.size()) {
        // Orthogonality makes correlations on the current support vanish, so
        // the rule re-selecting only known indices means no progress is
        // possible.
        tr.status = PursuitStatus::Stalled;
        tr.stall_reason = "selection added no new support index";
        break;
      }
      DenseVector coeffs = solve_or_fail(A, next, y);
      if (ctx.prune && next.size() > *ctx.sparsity_k) {
        const int k = *ctx.sparsity_k;
        std::vector<int> order(static_cast<std::size_t>(next.size()));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
          const double fa = std::abs(coeffs[a]);
          const double fb = std::abs(coeffs[b]);
          if (fa != fb) return fa > fb;
          return next[a] < next[b];  // ties keep the lowest column index
        });
        std::vector<int> kept(order.begin(), order.begin() + k);
        for (int& p : kept) p = next[p];
        next = SupportSet(std::move(kept));
        coeffs = solve_or_fail(A, next, y);
      }
      st.support = std::move(next);
      st.estimate.assign(A.cols(), 0.0);
      for (int p = 0; p < st.support.size(); ++p) st.estimate[st.support[p]] = coeffs[p];
      const DenseMatrix R = restrict_columns(A, st.support);
      st.approximation = matvec(R, coeffs);
      for (int row = 0; row < A.rows(); ++row)
        st.residual[row] = y[row] - st.approximation[row];
      const double worst = inf_norm(adjoint_matvec(R, st.residual));
      if (worst > tol::orthogonality * y_norm)
        throw std::logic_error(
            "pursuit: residual not orthogonal to the active columns after the solve "
            "(worst correlation " + std::to_string(worst) + ")");
    }

    ++st.n;

    // r^n must equal y - y^n by construction; drift indicates a bug.
    double drift2 = 0.0;
    for (int row = 0; row < A.rows(); ++row) {
      const double e = (y[row] - st.approximation[row]) - st.residual[row];
      drift2 += e * e;
    }
    if (std::sqrt(drift2) > tol::residual_identity * y_norm)
      throw std::logic_error("pursuit: residual/approximation identity violated");

    const double new_norm = norm2(st.residual);
    TraceRecord rec;
    rec.n = st.n;
    rec.residual_norm = new_norm;
    rec.selected = selected;
    rec.support_size = st.support.size();
    rec.step = step;
    rec.contraction_ratio = prev_norm > 0.0 ? new_norm / prev_norm : kNaN;
    tr.records.push_back(std::move(rec));
    prev_norm = new_norm;
  }
  return out;
}

LoopContext context_from_config(const PursuitConfig& cfg, int m) {
  cfg.validate();
  LoopContext ctx;
  ctx.algorithm = cfg.algorithm;
  ctx.rule = &cfg.rule;
  ctx.max_iterations = cfg.effective_max_iterations(m);
  ctx.residual_tol = cfg.residual_tol;
  ctx.sparsity_k = cfg.sparsity_k;
  ctx.prune = cfg.prune_to_k;
  return ctx;
}

}  // namespace

PursuitResult run(const DenseMatrix& A, const DenseVector& y, const PursuitConfig& cfg) {
  return run_loop(A, y, context_from_config(cfg, A.rows()));
}

PursuitResult run_mp(const DenseMatrix& A, const DenseVector& y, const PursuitConfig& cfg) {
  require(cfg.algorithm == PursuitAlgorithm::MP, "run_mp: cfg.algorithm must be MP");
  return run(A, y, cfg);
}

PursuitResult run_omp(const DenseMatrix& A, const DenseVector& y, const PursuitConfig& cfg) {
  require(cfg.algorithm == PursuitAlgorithm::OMP, "run_omp: cfg.algorithm must be OMP");
  return run(A, y, cfg);
}

PursuitResult run_gp(const DenseMatrix& A, const DenseVector& y, const PursuitConfig& cfg) {
  require(cfg.algorithm == PursuitAlgorithm::GP, "run_gp: cfg.algorithm must be GP");
  return run(A, y, cfg);
}

PursuitResult run_with_forced_selections(const DenseMatrix& A, const DenseVector& y,
                                         PursuitAlgorithm algorithm,
                                         const std::vector<SupportSet>& selections) {
  LoopContext ctx;
  ctx.algorithm = algorithm;
  ctx.forced = &selections;
  ctx.max_iterations = static_cast<int>(selections.size());
  ctx.residual_tol = 0.0;  // replay every scheduled set unless r hits exact zero
  return run_loop(A, y, ctx);
}

DenseVector recover_on_support(const DenseMatrix& A, const DenseVector& y,
                               const SupportSet& gamma) {
  require(static_cast<int>(y.size()) == A.rows(),
          "recover_on_support: y length must equal matrix rows");
  gamma.check_range(A.cols());
  DenseVector x(A.cols(), 0.0);
  if (gamma.empty()) return x;
  const DenseVector coeffs = solve_or_fail(A, gamma, y);
  for (int p = 0; p < gamma.size(); ++p) x[gamma[p]] = coeffs[p];
  return x;
}

bool exact_recovery_check(const SparseSignal& x_true, const DenseVector& x_hat,
                          double tolerance) {
  x_true.validate();
  require(static_cast<int>(x_hat.size()) == x_true.N,
          "exact_recovery_check: estimate length must equal N");
  require(tolerance >= 0.0, "exact_recovery_check: tolerance must be >= 0");

  const DenseVector xd = x_true.dense();
  double err2 = 0.0;
  double ref2 = 0.0;
  for (int i = 0; i < x_true.N; ++i) {
    const double e = x_hat[i] - xd[i];
    err2 += e * e;
    ref2 += xd[i] * xd[i];
  }
  if (std::sqrt(err2) > tolerance * std::max(1.0, std::sqrt(ref2))) return false;

  // Same story entrywise: the above-tolerance supports must coincide.
  for (int i = 0; i < x_true.N; ++i)
    if ((std::abs(x_hat[i]) > tolerance) != (std::abs(xd[i]) > tolerance)) return false;
  return true;
}

}  // namespace pursuit
