#pragma once

#include <cstdint>

#include "pursuit/ensembles.hpp"
#include "pursuit/linalg.hpp"
#include "pursuit/rng.hpp"

namespace pursuit {

// Per-iteration residual contraction factors for a matrix with restricted
// isometry constant delta_k, valid while every selected index so far lies in
// the k-element target support (and, for D_k, once the support has been
// identified exactly):
//   C_k       = (1 - (1 - d) / (k (1 + d)))^{1/2}   gradient-pursuit family
//   C_prime_k = (1 - (1 - d)^2 / k)^{1/2}           matching-pursuit family
//   D_k       = (2 d / (1 + d))^{1/2}               after full identification
// All three are < 1 on the domain 0 <= d < 1, and C_k < C_prime_k whenever
// 0 < d < 1.
struct ConvergenceConstants {
  double C_k = 0.0;
  double C_prime_k = 0.0;
  double D_k = 0.0;
};

ConvergenceConstants convergence_constants(double delta_k, int k);

// Smallest usable weakness parameter for the stagewise-weak rule to pick only
// target-support indices: alpha must exceed sqrt(k) * delta_{k+1} / (1 -
// delta_k). A returned value >= 1 means no legal alpha in (0, 1] works.
double support_id_condition_weak(double delta_k, double delta_k1, int k);

// Parameter window for the relaxed-weak rule:
//   alpha_min = delta_{k+1} / (1 - delta_k)^{1/2}
//   alpha_max = (1 - delta_k)^{1/2} / sqrt(k)
// feasible when sqrt(k) <= (1 - delta_k) / delta_{k+1}; the boundary case
// (equality) counts as feasible.
struct RelaxedConditionRange {
  double alpha_min = 0.0;
  double alpha_max = 0.0;
  bool feasible = false;
};

RelaxedConditionRange support_id_condition_relaxed(double delta_k, double delta_k1,
                                                   int k);

// Residual contraction translated to estimation error x - x^n: each factor is
// the bare constant times the amplifier ((1 + d) / (1 - d))^{1/2}. The
// *_contracts flags report the thresholds under which the amplified factor
// stays below 1: d < 1/(2k+1) is exact for the gradient-pursuit family,
// d < 1/(2k+2) is a sufficient (slightly conservative) condition for the
// matching-pursuit family, and d < 1/3 is exact after identification.
struct EstimationFactors {
  double amplifier = 0.0;
  double amplified_gp = 0.0;
  double amplified_mp = 0.0;
  double amplified_post_identification = 0.0;
  bool gp_estimation_contracts = false;
  bool mp_estimation_contracts = false;
  bool post_identification_contracts = false;
};

EstimationFactors estimation_error_factors(double delta_k, int k);

// One-stop evaluation of every closed-form constant for a (delta_k,
// delta_{k+1}, k) triple, plus hypothesis-feasibility flags for the
// sufficient conditions under which each algorithm family is guaranteed to
// keep selecting inside the target support:
//   gp_plain        pure gradient pursuit:      sqrt(k) d_{k+1} / (1-d_k) < 1
//   gp_weak         stagewise-weak GP: some alpha in (0,1] exceeds that ratio
//   gp_relaxed      relaxed-weak GP: the (alpha_min, alpha_max) window is
//                   nonempty, i.e. d_{k+1} / (1-d_k) < 1/sqrt(k)
//   mp_weak         stagewise-weak MP: same condition as gp_weak
//   mp_relaxed      relaxed-weak MP: window (alpha_min, (1-d_k)^2 / sqrt(k))
//                   nonempty and d_{k+1} / (1-d_k) < 1/sqrt(k)
struct BoundsReport {
  double delta_k = 0.0;
  double delta_k1 = 0.0;
  int k = 0;
  double alpha_min_weak = 0.0;
  double alpha_min_relaxed = 0.0;
  double alpha_max_relaxed = 0.0;
  double C_k = 0.0;
  double C_prime_k = 0.0;
  double D_k = 0.0;
  bool gp_plain = false;
  bool gp_weak = false;
  bool gp_relaxed = false;
  bool mp_weak = false;
  bool mp_relaxed = false;
};

BoundsReport compute_bounds_report(double delta_k, double delta_k1, int k);

// Monte Carlo verification of the near-isometry consequences of an exhaustive
// certificate with constant d = cert.delta(). For `trials` random unit
// coefficient vectors u on the columns picked by `gamma`:
//   (1) ||A_G u||            <=  (1 + d)^{1/2}
//   (2) (1 - d)              <=  ||A_G^T A_G u||         <= (1 + d)
//   (3) 1/(1 + d)            <=  ||(A_G^T A_G)^{-1} u||  <= 1/(1 - d)
//   (4) ||A_G'^T A_G u||     <=  d        (gamma_prime disjoint from gamma)
// Any violation beyond tol::theorem_slack throws std::logic_error carrying
// the witness (these are theorems; a violation means a bug in the linear
// algebra or the certificate). The report records the observed extremes.
struct RipConsequenceReport {
  double delta = 0.0;
  std::uint64_t trials = 0;
  double max_op_ratio = 0.0;        // sup ||A_G u||, bound (1+d)^{1/2}
  double min_gram_ratio = 0.0;      // inf ||A_G^T A_G u||, bound 1-d
  double max_gram_ratio = 0.0;      // sup ||A_G^T A_G u||, bound 1+d
  double min_inv_gram_ratio = 0.0;  // inf ||(A_G^T A_G)^{-1} u||, bound 1/(1+d)
  double max_inv_gram_ratio = 0.0;  // sup ||(A_G^T A_G)^{-1} u||, bound 1/(1-d)
  double max_cross_ratio = 0.0;     // sup ||A_G'^T A_G u||, bound d
};

RipConsequenceReport check_rip_consequences(const DenseMatrix& A,
                                            const SupportSet& gamma,
                                            const SupportSet& gamma_prime,
                                            const RipCertificate& cert,
                                            std::uint64_t trials, Rng& rng);

// Monte Carlo verification of the lower bound that powers every contraction
// proof: for r in the column span of A_G,
//   ||A_G^T r|| >= (1 - d)^{1/2} ||r||.
// Violations throw; the report records the smallest observed ratio.
struct AdjointBoundReport {
  double delta = 0.0;
  std::uint64_t trials = 0;
  double min_ratio = 0.0;  // inf ||A_G^T r|| / ||r||
  double bound = 0.0;      // (1 - d)^{1/2}
};

AdjointBoundReport check_adjoint_lower_bound(const DenseMatrix& A,
                                             const SupportSet& gamma,
                                             const RipCertificate& cert,
                                             std::uint64_t trials, Rng& rng);

}  // namespace pursuit
