#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pursuit/linalg.hpp"
#include "pursuit/selection.hpp"
#include "pursuit/tolerances.hpp"

namespace pursuit {

enum class PursuitAlgorithm { MP, OMP, GP };

const char* pursuit_algorithm_name(PursuitAlgorithm algorithm);

// How a run ended.
//   Converged     relative residual reached residual_tol (checked before the
//                 iteration cap, so a tie resolves to Converged)
//   MaxIterations iteration budget exhausted first
//   Stalled       the rule or the update could make no progress; the reason
//                 string says which way
enum class PursuitStatus { Converged, MaxIterations, Stalled };

const char* pursuit_status_name(PursuitStatus status);

struct PursuitConfig {
  PursuitAlgorithm algorithm = PursuitAlgorithm::OMP;
  SelectionRule rule;       // stagewise-weak alpha = 1 reproduces MP/OMP/GP
  int max_iterations = 0;   // 0 = auto: 2*sparsity_k when known, else rows(y)
  double residual_tol = tol::default_residual;  // relative to ||y||
  std::optional<int> sparsity_k;
  bool prune_to_k = false;  // requires sparsity_k and algorithm == OMP

  void validate() const;
  int effective_max_iterations(int m) const;
};

struct PursuitState {
  int n = 0;                 // iterations completed
  DenseVector residual;      // r^n, length m
  DenseVector estimate;      // x^n, length N
  SupportSet support;        // Gamma^n
  DenseVector approximation; // y^n = y - r^n, length m
};

struct TraceRecord {
  int n = 0;                 // 1-based iteration index
  double residual_norm = 0.0;
  SupportSet selected;       // what the rule picked this iteration
  int support_size = 0;      // |Gamma^n| after the update (pruning included)
  double step = 0.0;         // line-search step (gradient updates); NaN otherwise
  double contraction_ratio = 0.0;  // ||r^n|| / ||r^{n-1}||; NaN if previous was 0
};

struct PursuitTrace {
  double initial_residual_norm = 0.0;  // ||r^0|| = ||y||
  std::vector<TraceRecord> records;
  PursuitStatus status = PursuitStatus::Converged;
  std::string stall_reason;  // nonempty iff status == Stalled
};

struct PursuitResult {
  PursuitState state;
  PursuitTrace trace;
};

// Exactly-sparse signal: values run parallel to the (sorted) support.
struct SparseSignal {
  int N = 0;
  SupportSet support;
  std::vector<double> values;

  void validate() const;    // sizes match, indices < N, values finite nonzero
  DenseVector dense() const;
};

// A least-squares solve inside a pursuit run hit a rank-deficient restricted
// matrix; carries the support it happened on.
struct SolveFailure : std::runtime_error {
  SolveFailure(SupportSet support_, const std::string& detail);
  SupportSet support;
};

// The three updaters over one iteration skeleton
// (correlate -> select -> update -> stop-check):
//
//   MP   x_i += g_i on the selected set, r -= sum g_i phi_i
//   OMP  Gamma grows by the selected set, x = argmin ||Phi_Gamma x - y||,
//        r = y - Phi_Gamma x (so r is orthogonal to the selected columns);
//        with prune_to_k, after the solve only the k largest-magnitude
//        coefficients survive (ties keep the lowest index), the solve is
//        redone on the pruned support, and that support replaces Gamma
//   GP   one exact line-search step along the restricted correlation
//        direction: d = g on Gamma, a = <r, Phi d> / ||Phi d||^2, x += a d
//
// Each entry point insists cfg.algorithm matches. run() dispatches.
PursuitResult run(const DenseMatrix& A, const DenseVector& y, const PursuitConfig& cfg);
PursuitResult run_mp(const DenseMatrix& A, const DenseVector& y, const PursuitConfig& cfg);
PursuitResult run_omp(const DenseMatrix& A, const DenseVector& y, const PursuitConfig& cfg);
PursuitResult run_gp(const DenseMatrix& A, const DenseVector& y, const PursuitConfig& cfg);

// Replay: drive an updater with a fixed per-iteration schedule of selected
// sets instead of a selection rule (used to compare algorithm families on
// identical selections). Runs len(selections) iterations unless the residual
// hits exactly zero or the update degenerates first.
PursuitResult run_with_forced_selections(const DenseMatrix& A, const DenseVector& y,
                                         PursuitAlgorithm algorithm,
                                         const std::vector<SupportSet>& selections);

// Least-squares coefficients on Gamma embedded into a length-cols(A) vector.
DenseVector recover_on_support(const DenseMatrix& A, const DenseVector& y,
                               const SupportSet& gamma);

// Success metric for recovery experiments: the estimate must be close in norm
// (inclusive at exactly tol * max(1, ||x_true||)) and must show the same
// above-tol support as the target.
bool exact_recovery_check(const SparseSignal& x_true, const DenseVector& x_hat,
                          double tolerance);

}  // namespace pursuit
