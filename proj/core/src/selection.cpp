#include "pursuit/selection.hpp"

#include <cmath>
#include <stdexcept>

namespace pursuit {

void SelectionRule::validate() const {
  if (kind == SelectionRuleKind::StagewiseWeak) {
    if (!(alpha > 0.0 && alpha <= 1.0))
      throw std::invalid_argument("stagewise-weak rule needs 0 < alpha <= 1");
  } else {
    if (!(alpha > 0.0)) throw std::invalid_argument("relaxed-weak rule needs alpha > 0");
  }
}

std::optional<SelectionOutcome> select_weak(const DenseVector& g, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("select_weak: need 0 < alpha <= 1");
  const double gmax = inf_norm(g);
  if (gmax == 0.0) return std::nullopt;  // residual proxy vanished

  SelectionOutcome out;
  out.proxy_max = gmax;
  out.threshold = alpha * gmax;
  std::vector<int> picked;
  for (int i = 0; i < static_cast<int>(g.size()); ++i)
    if (std::abs(g[i]) >= out.threshold) picked.push_back(i);
  out.indices = SupportSet(std::move(picked));
  return out;
}

std::optional<SelectionOutcome> select_relaxed(const DenseVector& g, double residual_norm,
                                               double alpha_tilde) {
  if (!(alpha_tilde > 0.0)) throw std::invalid_argument("select_relaxed: need alpha > 0");
  if (!(residual_norm > 0.0)) return std::nullopt;  // already converged

  SelectionOutcome out;
  out.residual_norm = residual_norm;
  out.proxy_max = inf_norm(g);
  out.threshold = alpha_tilde * residual_norm;
  std::vector<int> picked;
  for (int i = 0; i < static_cast<int>(g.size()); ++i)
    if (std::abs(g[i]) >= out.threshold) picked.push_back(i);
  out.indices = SupportSet(std::move(picked));  // may be empty: a legal outcome
  return out;
}

std::optional<SelectionOutcome> select(const SelectionRule& rule, const DenseVector& g,
                                       double residual_norm) {
  rule.validate();
  if (rule.kind == SelectionRuleKind::StagewiseWeak) {
    auto out = select_weak(g, rule.alpha);
    if (out) out->residual_norm = residual_norm;
    return out;
  }
  return select_relaxed(g, residual_norm, rule.alpha);
}

double relaxed_nonempty_bound(double delta_k, int k) {
  if (!(delta_k >= 0.0 && delta_k < 1.0))
    throw std::invalid_argument("relaxed_nonempty_bound: need 0 <= delta_k < 1");
  if (k < 1) throw std::invalid_argument("relaxed_nonempty_bound: need k >= 1");
  return std::sqrt(1.0 - delta_k) / std::sqrt(static_cast<double>(k));
}

}  // namespace pursuit
