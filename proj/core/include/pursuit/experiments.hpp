#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "pursuit/engine.hpp"
#include "pursuit/ensembles.hpp"

namespace pursuit {

// Amplitude model for the random k-sparse trial signals. The default draws
// standard-normal values; RandomSigns uses +-1 instead (robustness studies).
enum class SignalModel { GaussianAmplitudes, RandomSigns };

// Recovery sweep over a (m, k) grid with a fixed column count N. One Gaussian
// matrix is generated per m value and reused for every k and trial in that
// group; each trial draws a fresh k-sparse signal. Solvers run capped at k
// iterations with sparsity_k = k. Everything is derived deterministically
// from base_seed.
struct PhaseTransitionSpec {
  int N = 0;
  std::vector<int> m_values;
  std::vector<int> k_values;
  int trials_per_cell = 0;
  PursuitConfig solver;  // template; sparsity_k/max_iterations set per cell
  SignalModel signal_model = SignalModel::GaussianAmplitudes;
  std::uint64_t base_seed = 0;
  double recovery_tol = tol::default_recovery;

  void validate() const;
};

struct TrialResult {
  int m = 0;
  int k = 0;
  int trial_index = 0;
  bool recovered = false;
  int iterations_used = 0;  // 0 when the solve failed before completing one
  double final_residual_norm = 0.0;
  double wall_time_seconds = 0.0;  // diagnostic only; never serialized
};

struct PhaseCell {
  int m = 0;
  int k = 0;
  double recovery_fraction = 0.0;
  int trials = 0;
};

struct PhaseTable {
  std::vector<PhaseCell> cells;      // in (m, k) grid order
  std::vector<TrialResult> trials;   // in (m, k, trial) order
};

PhaseTable run_phase_transition(const PhaseTransitionSpec& spec);

// Uniform random support (without replacement) plus amplitudes per the model.
SparseSignal random_sparse_signal(int N, int k, SignalModel model, Rng& rng);

// Signal-to-noise ratio of approximation `a` to signal `x` in dB:
//   10 log10(||x|| / ||x - a||)
// Returns +infinity when a == x exactly.
double snr(const DenseVector& x, const DenseVector& a);

// SNR of the best k-term approximation (k largest magnitudes kept); the
// natural upper reference for any k-iteration solver on the same signal.
double best_k_term_snr(const DenseVector& x, int k);

// Compressible (power-law) test signal: magnitudes i^{-1/p}, i = 1..N, with
// random signs, randomly permuted across positions.
DenseVector compressible_signal(int N, double decay_p, Rng& rng);

// Mean-SNR comparison of labeled solver configurations on identical
// compressible instances: one Gaussian matrix for the study, fresh signal per
// trial, every solver sees the same (matrix, signal) pairs.
struct CompressibleStudySpec {
  int N = 0;
  int m = 0;  // m <= N (m = N gives the invertible sanity limit)
  double decay_p = 1.0;
  std::vector<std::pair<std::string, PursuitConfig>> solvers;
  std::uint64_t trials = 1;
  std::uint64_t base_seed = 0;

  void validate() const;
};

struct CompressibleRow {
  std::string solver;
  double mean_snr_db = 0.0;
  std::uint64_t trials = 0;
};

std::vector<CompressibleRow> run_compressible_study(const CompressibleStudySpec& spec);

// Key-value config files (lines of `key = value`, # comments). Keys for the
// phase sweep: n, m_values, k_values, trials_per_cell, algorithm (mp|omp|gp),
// rule (weak|relaxed), alpha, prune_to_k, signal (gaussian|signs), base_seed,
// recovery_tol, residual_tol. Keys for the compressible study: n, m, decay_p,
// trials, base_seed, rule, alpha, max_iterations, solvers (subset of
// mp,omp,gp). Unknown keys are rejected.
PhaseTransitionSpec parse_phase_config(std::istream& in);
PhaseTransitionSpec load_phase_config(const std::string& path);
CompressibleStudySpec parse_compressible_config(std::istream& in);
CompressibleStudySpec load_compressible_config(const std::string& path);

// Deterministic CSV renderings (doubles via the exact round-trip format).
std::string phase_summary_csv(const PhaseTable& table);   // m,k,recovery_fraction,trials
std::string phase_trials_csv(const PhaseTable& table);    // per-trial rows
std::string compressible_csv(const std::vector<CompressibleRow>& rows);
std::string trace_csv(const PursuitTrace& trace);         // per-iteration rows

}  // namespace pursuit
