#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pursuit/linalg.hpp"
#include "pursuit/rng.hpp"
#include "pursuit/selection.hpp"

namespace pursuit {

enum class EnsembleKind { Gaussian, Bernoulli };

const char* ensemble_kind_name(EnsembleKind kind);

// Sensing-matrix recipe. Entries are drawn column by column from the stream
// seeded with `seed`, so the same spec always reproduces the same matrix.
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::Gaussian;
  int rows = 0;  // m
  int cols = 0;  // N
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

// Gaussian: i.i.d. N(0, 1/m) entries (standard deviation 1/sqrt(m)).
// Bernoulli: i.i.d. +-1/sqrt(m), sign taken from the top bit of one raw
// 64-bit draw per entry. Either way columns have expected squared norm 1.
DenseMatrix generate(const EnsembleSpec& spec);

enum class RipMethod { Exhaustive, Sampled };

// Two-sided estimate of the restricted-isometry constant
//   delta_k = max over k-column subsets G of max(1 - sigma_min(A_G)^2,
//                                                sigma_max(A_G)^2 - 1).
// Exhaustive enumeration yields delta_lower == delta_upper (the exact value).
// Sampling only ever certifies a lower bound; delta_upper stays at 1 (or at
// delta_lower if the sampled value already exceeds 1), meaning "unknown, and
// not certified below 1".
struct RipCertificate {
  int k = 0;
  double delta_lower = 0.0;
  double delta_upper = 1.0;
  RipMethod method = RipMethod::Sampled;
  std::uint64_t trials = 0;  // subsets examined

  // The near-isometry property holds (with the certified constant) only when
  // the upper estimate is strictly below 1. A certificate whose lower bound
  // reaches 1 witnesses a failure; a sampled certificate never certifies.
  bool rip_holds() const { return delta_upper < 1.0; }

  // Exact constant; only meaningful for exhaustive certificates.
  double delta() const;
};

// Binomial coefficient C(n, k), but any intermediate or final value above
// `cap` returns cap + 1 instead of overflowing.
std::uint64_t subset_count_capped(int n, int k, std::uint64_t cap);

// Exact delta_k by enumerating all C(N, k) column subsets. Refuses (with a
// message pointing at rip_sampled) when C(N, k) exceeds
// tol::max_exhaustive_subsets.
RipCertificate rip_exhaustive(const DenseMatrix& A, int k);

// Monte Carlo lower bound on delta_k over `trials` uniformly sampled
// k-subsets. Trial t draws from substream derive_seed(seed, t), so extending
// `trials` keeps all earlier subsets: the bound is non-decreasing in the
// trial count for a fixed seed.
RipCertificate rip_sampled(const DenseMatrix& A, int k, std::uint64_t trials,
                           std::uint64_t seed);

// Empirical check of the inner-product concentration bound
//   P{ |<u, z>| >= eps } <= e^{-eps^2 m / 2}        (Gaussian z)
//   P{ |<u, w>| >= eps } <= 2 e^{-eps^2 m / 2}      (Bernoulli w)
// where u is a fresh random unit vector drawn independently of the random
// column in every trial.
struct ConcentrationReport {
  EnsembleKind kind = EnsembleKind::Gaussian;
  double epsilon = 0.0;
  int m = 0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;        // trials with |<u, z>| >= epsilon
  double empirical_rate = 0.0;   // hits / trials
  double theoretical_bound = 0.0;
};

ConcentrationReport concentration_check(EnsembleKind kind, int m, double epsilon,
                                        std::uint64_t trials, std::uint64_t seed);

// Constants of the tail bounds assumed for the random ensemble:
//   P{ |<column, u>| >= eps } <= q1 e^{-c1 eps^2 m}          (per unit u)
//   P{ near-isometry failure on a k-subset } <= q2 D^k e^{-c2 m}
// q1, q2 >= 1; c1, c2 > 0; D > 1.
struct MeasurementConstants {
  double q1 = 1.0;
  double q2 = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double D = 0.0;

  void validate() const;
};

// Smallest integer m for which l iterations of the given selection rule pick
// only correct support indices of a k-sparse target (out of N columns) with
// high probability:
//
//   relaxed-weak(alpha):  m >= max{ (1 / (c1 alpha^2)) ln(q3 l (N-k)),
//                                   (2k / c2) ln D }
//   stagewise-weak(alpha): m >= max{ (4k / (c1 alpha^2)) ln(q3 l (N-k)),
//                                    (2k / c2) ln D }
//
// with q3 = q1 + q2. Supplying beta in (0, 1/e) requests success probability
// at least 1 - beta, which doubles the leading factor of the first term and
// divides the logarithm's argument by beta; the second term is unchanged.
// Returns the ceiling of the larger term.
int measurement_bound(const SelectionRule& rule, int k, int N, int l,
                      const MeasurementConstants& constants,
                      std::optional<double> beta = std::nullopt);

// Concentration-of-measure exponent rate c0(eps) = eps^2/4 - eps^3/6 shared
// by the Gaussian and symmetric-Bernoulli ensembles; handy for choosing
// MeasurementConstants. Requires 0 < eps < 1.
double concentration_rate_c0(double eps);

// Uniformly random k-subset of {0, ..., N-1} using exactly k bounded draws
// (Floyd's algorithm), so the cost does not grow with N.
SupportSet random_support(int N, int k, Rng& rng);

// Uniform direction: normalized vector of i.i.d. standard normals.
DenseVector random_unit_vector(int dim, Rng& rng);

// Deterministic scan over generation seeds [seed_start, seed_start+seed_count)
// looking for a matrix whose exact delta_k is below max_delta. Every seed is
// screened with cheap necessary conditions (single columns, then pairs) and
// only survivors get the full enumeration; independently, the first
// full_eval_count seeds are always evaluated exhaustively so the search can
// report an honest "best constant seen" with its seed even when nothing
// passes.
struct SeedSearchResult {
  bool found = false;
  std::uint64_t best_seed = 0;   // seed of best fully evaluated matrix
  double best_delta = 0.0;       // its exact delta_k
  std::uint64_t seeds_scanned = 0;
  std::uint64_t fully_evaluated = 0;
};

SeedSearchResult search_seed_for_rip(EnsembleKind kind, int m, int N, int k,
                                     double max_delta, std::uint64_t seed_start,
                                     std::uint64_t seed_count,
                                     std::uint64_t full_eval_count);

}  // namespace pursuit
