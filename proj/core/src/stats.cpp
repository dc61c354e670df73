#include "desfa/stats.hpp"

#include <cmath>
#include <limits>

#include "desfa/errors.hpp"

namespace desfa {

namespace {

// Continued fraction for the incomplete beta, evaluated with the modified
// Lentz scheme. Converges quickly for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-15;
  constexpr int kMaxIter = 300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;

  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;

    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw ValidationError("beta parameters must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("beta argument must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_continued_fraction(a, b, x) / a;
  // Symmetry: I_x(a, b) = 1 - I_{1-x}(b, a).
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, int df) {
  if (df < 1) throw ValidationError("degrees of freedom must be at least 1");
  if (std::isinf(t)) return 0.0;
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  const double dfd = static_cast<double>(df);
  const double x = dfd / (dfd + t * t);
  return regularized_incomplete_beta(dfd / 2.0, 0.5, x);
}

PairedTTestResult paired_t_test(std::span<const double> a,
                                std::span<const double> b,
                                double alpha) {
  if (a.size() != b.size()) throw ValidationError("paired samples must match in length");
  if (a.size() < 2) throw ValidationError("paired t-test needs at least two pairs");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");

  const std::size_t n = a.size();
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
  mean /= static_cast<double>(n);

  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (a[i] - b[i]) - mean;
    ss += d * d;
  }
  const double var = ss / static_cast<double>(n - 1);

  PairedTTestResult r;
  r.mean_diff = mean;
  r.degrees_of_freedom = static_cast<int>(n) - 1;
  if (var == 0.0) {
    if (mean == 0.0) {
      r.t_statistic = 0.0;
      r.p_value = 1.0;
    } else {
      r.t_statistic = std::copysign(std::numeric_limits<double>::infinity(), mean);
      r.p_value = 0.0;
    }
  } else {
    r.t_statistic = mean / std::sqrt(var / static_cast<double>(n));
    r.p_value = student_t_two_sided_p(r.t_statistic, r.degrees_of_freedom);
  }
  r.significant = r.p_value < alpha;
  return r;
}

}  // namespace desfa
