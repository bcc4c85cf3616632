#pragma once

// Numerical tolerances and guards used across the library, collected here so
// that callers and tests agree on what "zero" means in each context.
namespace pursuit::tol {

// Least-squares residual orthogonality: max_j |<col_j, y - A z>| <= orthogonality * |y| * |col_j|.
inline constexpr double orthogonality = 1e-8;

// Rank cutoff for QR: an R-diagonal below rank * (largest column norm) is a rank failure.
inline constexpr double rank = 1e-10;

// Relative accuracy of extreme singular values from the Jacobi eigen-iteration.
inline constexpr double eigen = 1e-9;

// Per-iteration consistency check of residual = y - approximation, relative to |y|.
inline constexpr double residual_identity = 1e-9;

// Default relative stopping tolerance for pursuit runs.
inline constexpr double default_residual = 1e-6;

// Default tolerance for declaring a signal exactly recovered.
inline constexpr double default_recovery = 1e-4;

// Slack for inequality checks that hold exactly in real arithmetic.
inline constexpr double theorem_slack = 1e-9;

// Slack for residual contraction-ratio comparisons against closed-form factors.
inline constexpr double ratio_slack = 1e-12;

// Refuse exhaustive restricted-isometry enumeration beyond this many subsets.
inline constexpr long long max_exhaustive_subsets = 2'000'000;

}  // namespace pursuit::tol
