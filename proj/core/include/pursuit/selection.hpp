#pragma once

#include <optional>

#include "pursuit/linalg.hpp"

namespace pursuit {

enum class SelectionRuleKind {
  StagewiseWeak,  // keep every index whose proxy magnitude is >= alpha * max |proxy|
  RelaxedWeak,    // keep every index whose proxy magnitude is >= alpha * |residual|_2
};

struct SelectionRule {
  SelectionRuleKind kind = SelectionRuleKind::StagewiseWeak;
  double alpha = 1.0;
  void validate() const;  // stagewise: 0 < alpha <= 1; relaxed: alpha > 0
};

struct SelectionOutcome {
  SupportSet indices;
  double threshold = 0.0;
  double proxy_max = 0.0;
  double residual_norm = 0.0;
};

// Stagewise-weak selection on the proxy g. Threshold comparisons are
// inclusive (>=) and exact in f64: ties at the threshold are all kept and no
// epsilon is applied. The returned set is never empty (the argmax always
// qualifies). Returns nullopt when g == 0, which means the residual is
// orthogonal to every column and the caller should stop.
std::optional<SelectionOutcome> select_weak(const DenseVector& g, double alpha);

// Relaxed-weak selection: threshold alpha_tilde * residual_norm. The set may
// legitimately come back empty (an outcome, not an error). Returns nullopt
// when residual_norm <= 0, i.e. the caller has already converged.
std::optional<SelectionOutcome> select_relaxed(const DenseVector& g, double residual_norm,
                                               double alpha_tilde);

// Dispatch on the rule kind.
std::optional<SelectionOutcome> select(const SelectionRule& rule, const DenseVector& g,
                                       double residual_norm);

// Largest alpha for which the relaxed rule is guaranteed nonempty whenever the
// residual lies in the span of k certified columns: sqrt(1 - delta_k) / sqrt(k).
double relaxed_nonempty_bound(double delta_k, int k);

}  // namespace pursuit
