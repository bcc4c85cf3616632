#include "pursuit/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pursuit/tolerances.hpp"

namespace pursuit {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_delta_pair(double delta_k, double delta_k1, int k) {
  require(k >= 1, "k must be >= 1");
  require(delta_k >= 0.0 && delta_k1 < 1.0 && delta_k <= delta_k1,
          "need 0 <= delta_k <= delta_{k+1} < 1");
}

std::string format_witness(const SupportSet& gamma, const DenseVector& u) {
  std::ostringstream os;
  os << "support {";
  for (int i = 0; i < gamma.size(); ++i) os << (i ? "," : "") << gamma[i];
  os << "}, coefficients [";
  for (std::size_t i = 0; i < u.size(); ++i) os << (i ? "," : "") << u[i];
  os << "]";
  return os.str();
}

[[noreturn]] void violation(const char* which, std::uint64_t trial, double ratio,
                            double bound, const SupportSet& gamma,
                            const DenseVector& u) {
  std::ostringstream os;
  os << which << " violated at trial " << trial << ": observed ratio " << ratio
     << " vs bound " << bound << " (" << format_witness(gamma, u) << ")";
  throw std::logic_error(os.str());
}

}  // namespace

ConvergenceConstants convergence_constants(double delta_k, int k) {
  require(k >= 1, "convergence_constants: k must be >= 1");
  require(delta_k >= 0.0 && delta_k < 1.0, "convergence_constants: need 0 <= delta_k < 1");
  const double d = delta_k;
  const double kk = static_cast<double>(k);
  ConvergenceConstants c;
  c.C_k = std::sqrt(1.0 - (1.0 - d) / (kk * (1.0 + d)));
  c.C_prime_k = std::sqrt(1.0 - (1.0 - d) * (1.0 - d) / kk);
  c.D_k = std::sqrt(2.0 * d / (1.0 + d));
  return c;
}

double support_id_condition_weak(double delta_k, double delta_k1, int k) {
  require_delta_pair(delta_k, delta_k1, k);
  return std::sqrt(static_cast<double>(k)) * delta_k1 / (1.0 - delta_k);
}

RelaxedConditionRange support_id_condition_relaxed(double delta_k, double delta_k1,
                                                   int k) {
  require_delta_pair(delta_k, delta_k1, k);
  const double root = std::sqrt(1.0 - delta_k);
  RelaxedConditionRange r;
  r.alpha_min = delta_k1 / root;
  r.alpha_max = root / std::sqrt(static_cast<double>(k));
  // Boundary equality counts as feasible; evaluating the condition in the
  // sqrt(k) <= (1 - delta_k)/delta_{k+1} form keeps the boundary exact for
  // inputs where that quotient is representable.
  r.feasible = delta_k1 == 0.0 ||
               std::sqrt(static_cast<double>(k)) <= (1.0 - delta_k) / delta_k1;
  return r;
}

EstimationFactors estimation_error_factors(double delta_k, int k) {
  const ConvergenceConstants c = convergence_constants(delta_k, k);
  const double d = delta_k;
  EstimationFactors f;
  f.amplifier = std::sqrt((1.0 + d) / (1.0 - d));
  f.amplified_gp = f.amplifier * c.C_k;
  f.amplified_mp = f.amplifier * c.C_prime_k;
  f.amplified_post_identification = f.amplifier * c.D_k;
  f.gp_estimation_contracts = d < 1.0 / (2.0 * k + 1.0);
  f.mp_estimation_contracts = d < 1.0 / (2.0 * k + 2.0);
  f.post_identification_contracts = d < 1.0 / 3.0;
  return f;
}

BoundsReport compute_bounds_report(double delta_k, double delta_k1, int k) {
  require_delta_pair(delta_k, delta_k1, k);
  BoundsReport r;
  r.delta_k = delta_k;
  r.delta_k1 = delta_k1;
  r.k = k;
  r.alpha_min_weak = support_id_condition_weak(delta_k, delta_k1, k);
  const RelaxedConditionRange range = support_id_condition_relaxed(delta_k, delta_k1, k);
  r.alpha_min_relaxed = range.alpha_min;
  r.alpha_max_relaxed = range.alpha_max;
  const ConvergenceConstants c = convergence_constants(delta_k, k);
  r.C_k = c.C_k;
  r.C_prime_k = c.C_prime_k;
  r.D_k = c.D_k;

  r.gp_plain = r.alpha_min_weak < 1.0;
  r.gp_weak = r.alpha_min_weak < 1.0;  // some alpha in (0, 1] beats the ratio
  const bool relaxed_window =
      delta_k1 == 0.0 ||
      delta_k1 / (1.0 - delta_k) < 1.0 / std::sqrt(static_cast<double>(k));
  r.gp_relaxed = relaxed_window;
  r.mp_weak = r.gp_weak;
  // The matching-pursuit relaxed window's upper end is (1 - delta_k)^2 /
  // sqrt(k), tighter than the gradient-pursuit one.
  const double mp_upper =
      (1.0 - delta_k) * (1.0 - delta_k) / std::sqrt(static_cast<double>(k));
  r.mp_relaxed = relaxed_window && r.alpha_min_relaxed < mp_upper;
  return r;
}

RipConsequenceReport check_rip_consequences(const DenseMatrix& A,
                                            const SupportSet& gamma,
                                            const SupportSet& gamma_prime,
                                            const RipCertificate& cert,
                                            std::uint64_t trials, Rng& rng) {
  require(cert.method == RipMethod::Exhaustive,
          "check_rip_consequences: needs an exhaustive certificate (sampled lower "
          "bounds would make the checks vacuous)");
  require(cert.rip_holds(), "check_rip_consequences: certificate constant must be < 1");
  require(trials >= 1, "check_rip_consequences: trials must be >= 1");
  require(gamma.size() >= 1, "check_rip_consequences: gamma must be nonempty");
  gamma.check_range(A.cols());
  gamma_prime.check_range(A.cols());
  require(gamma.disjoint_from(gamma_prime),
          "check_rip_consequences: gamma and gamma_prime must be disjoint");
  require(gamma.size() + gamma_prime.size() <= cert.k,
          "check_rip_consequences: |gamma| + |gamma_prime| must be <= cert.k");

  const double d = cert.delta();
  const double slack = tol::theorem_slack;
  const DenseMatrix R = restrict_columns(A, gamma);
  const DenseMatrix Rp = restrict_columns(A, gamma_prime);

  // Gram of the restricted columns, for the inverse bound.
  const int kg = gamma.size();
  DenseMatrix G(kg, kg);
  for (int p = 0; p < kg; ++p)
    for (int q = 0; q < kg; ++q) {
      double s = 0.0;
      for (int i = 0; i < R.rows(); ++i) s += R(i, p) * R(i, q);
      G(p, q) = s;
    }

  RipConsequenceReport rep;
  rep.delta = d;
  rep.trials = trials;
  rep.min_gram_ratio = rep.min_inv_gram_ratio = std::numeric_limits<double>::infinity();

  for (std::uint64_t t = 0; t < trials; ++t) {
    const DenseVector u = random_unit_vector(kg, rng);

    const DenseVector Ru = matvec(R, u);
    const double op_ratio = norm2(Ru);
    if (op_ratio > std::sqrt(1.0 + d) + slack)
      violation("operator-norm bound", t, op_ratio, std::sqrt(1.0 + d), gamma, u);
    rep.max_op_ratio = std::max(rep.max_op_ratio, op_ratio);

    const double gram_ratio = norm2(adjoint_matvec(R, Ru));
    if (gram_ratio < 1.0 - d - slack)
      violation("gram lower bound", t, gram_ratio, 1.0 - d, gamma, u);
    if (gram_ratio > 1.0 + d + slack)
      violation("gram upper bound", t, gram_ratio, 1.0 + d, gamma, u);
    rep.min_gram_ratio = std::min(rep.min_gram_ratio, gram_ratio);
    rep.max_gram_ratio = std::max(rep.max_gram_ratio, gram_ratio);

    const double inv_ratio = norm2(least_squares(G, u));
    if (inv_ratio < 1.0 / (1.0 + d) - slack)
      violation("inverse-gram lower bound", t, inv_ratio, 1.0 / (1.0 + d), gamma, u);
    if (inv_ratio > 1.0 / (1.0 - d) + slack)
      violation("inverse-gram upper bound", t, inv_ratio, 1.0 / (1.0 - d), gamma, u);
    rep.min_inv_gram_ratio = std::min(rep.min_inv_gram_ratio, inv_ratio);
    rep.max_inv_gram_ratio = std::max(rep.max_inv_gram_ratio, inv_ratio);

    if (gamma_prime.size() > 0) {
      const double cross_ratio = norm2(adjoint_matvec(Rp, Ru));
      if (cross_ratio > d + slack)
        violation("disjoint cross-term bound", t, cross_ratio, d, gamma, u);
      rep.max_cross_ratio = std::max(rep.max_cross_ratio, cross_ratio);
    }
  }
  return rep;
}

AdjointBoundReport check_adjoint_lower_bound(const DenseMatrix& A,
                                             const SupportSet& gamma,
                                             const RipCertificate& cert,
                                             std::uint64_t trials, Rng& rng) {
  require(cert.method == RipMethod::Exhaustive,
          "check_adjoint_lower_bound: needs an exhaustive certificate");
  require(cert.rip_holds(), "check_adjoint_lower_bound: certificate constant must be < 1");
  require(trials >= 1, "check_adjoint_lower_bound: trials must be >= 1");
  require(gamma.size() >= 1 && gamma.size() <= cert.k,
          "check_adjoint_lower_bound: need 1 <= |gamma| <= cert.k");
  gamma.check_range(A.cols());

  const double d = cert.delta();
  const DenseMatrix R = restrict_columns(A, gamma);

  AdjointBoundReport rep;
  rep.delta = d;
  rep.trials = trials;
  rep.bound = std::sqrt(1.0 - d);
  rep.min_ratio = std::numeric_limits<double>::infinity();

  for (std::uint64_t t = 0; t < trials; ++t) {
    const DenseVector w = random_unit_vector(gamma.size(), rng);
    const DenseVector r = matvec(R, w);  // lies in the column span by construction
    const double rn = norm2(r);
    const double ratio = norm2(adjoint_matvec(R, r)) / rn;
    if (ratio < rep.bound - tol::theorem_slack)
      violation("adjoint lower bound", t, ratio, rep.bound, gamma, w);
    rep.min_ratio = std::min(rep.min_ratio, ratio);
  }
  return rep;
}

}  // namespace pursuit
