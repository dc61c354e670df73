#pragma once

#include <span>

namespace desfa {

struct PairedTTestResult {
  double t_statistic;
  double p_value;   // two-sided
  double mean_diff;
  int degrees_of_freedom;
  bool significant;  // p_value < alpha
};

// Two-sided paired t-test on matched samples a and b (diff = a - b).
// Degenerate inputs follow fixed conventions: all-zero differences give
// t = 0, p = 1; zero variance with a non-zero mean gives t = +/-inf, p = 0.
// Throws ValidationError when sizes differ or fewer than two pairs exist.
PairedTTestResult paired_t_test(std::span<const double> a,
                                std::span<const double> b,
                                double alpha = 0.05);

// Two-sided p-value of Student's t distribution with df degrees of freedom.
double student_t_two_sided_p(double t, int df);

// Regularized incomplete beta function I_x(a, b), continued-fraction form.
double regularized_incomplete_beta(double a, double b, double x);

}  // namespace desfa
