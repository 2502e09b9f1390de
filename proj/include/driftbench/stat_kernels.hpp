#pragma once

#include <vector>

namespace driftbench {

struct TTestResult {
  double t = 0.0;   // pooled-variance statistic
  double df = 0.0;  // n_a + n_b - 2
  double p = 1.0;   // two-sided p-value
};

/// Regularized incomplete beta I_x(a, b), continued fraction (Lentz),
/// convergence tolerance 1e-14, at most 300 iterations.
double regularized_incomplete_beta(double a, double b, double x);

/// Two-sided p-value of the t distribution: p = I_{df/(df+t^2)}(df/2, 1/2).
double t_two_sided_p(double t, double df);

/// Pooled-variance Student's t-test for independent samples.
/// Zero pooled variance: p = 1 if the means are equal, else p = 0.
TTestResult t_test_independent(const std::vector<double>& a,
                               const std::vector<double>& b);

/// Up to this many nonzero differences the Wilcoxon p-value is computed from
/// the exact permutation null distribution; beyond it, from the normal
/// approximation with tie and continuity corrections.
inline constexpr std::size_t kWilcoxonExactLimit = 24;

/// Wilcoxon signed-rank test on paired samples, two-sided. Zero differences
/// are dropped, ties get midranks. All-zero differences: p = 1.
double wilcoxon_signed_rank(const std::vector<double>& x,
                            const std::vector<double>& y);

}  // namespace driftbench
