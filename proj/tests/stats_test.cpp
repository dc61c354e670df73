#include <cmath>
#include <limits>
#include <vector>

#include "desfa/errors.hpp"
#include "desfa/stats.hpp"
#include "doctest.h"

// Expected values in this file are frozen outputs of scipy.stats
// (ttest_rel and t.sf), printed at full precision.

namespace {
constexpr double kTol = 1e-12;
}

TEST_CASE("paired t-test against frozen references") {
  SUBCASE("strong positive difference, n=4") {
    const std::vector<double> a = {1, 2, 3, 4};
    const std::vector<double> b = {0, 0, 0, 0};
    const auto r = desfa::paired_t_test(a, b);
    CHECK(r.t_statistic == doctest::Approx(3.872983346207417).epsilon(kTol));
    CHECK(r.p_value == doctest::Approx(0.030466291662170977).epsilon(kTol));
    CHECK(r.mean_diff == doctest::Approx(2.5).epsilon(kTol));
    CHECK(r.degrees_of_freedom == 3);
    CHECK(r.significant);
  }

  SUBCASE("weak difference, n=6, not significant") {
    const std::vector<double> a = {0.5, -0.2, 0.3, 0.1, 0.0, 0.4};
    const std::vector<double> b = {0, 0, 0, 0, 0, 0};
    const auto r = desfa::paired_t_test(a, b);
    CHECK(r.t_statistic == doctest::Approx(1.7013926184468016).epsilon(kTol));
    CHECK(r.p_value == doctest::Approx(0.14960795291230727).epsilon(kTol));
    CHECK_FALSE(r.significant);
  }

  SUBCASE("alternating signs, n=20") {
    std::vector<double> a(20), b(20, 0.0);
    for (int i = 0; i < 20; ++i)
      a[static_cast<std::size_t>(i)] = (i % 2 == 0 ? 1.0 : -1.0) * (0.05 + 0.1 * i);
    const auto r = desfa::paired_t_test(a, b);
    CHECK(r.t_statistic == doctest::Approx(-0.1889822365046136).epsilon(kTol));
    CHECK(r.p_value == doctest::Approx(0.852110798242375).epsilon(kTol));
    CHECK_FALSE(r.significant);
  }

  SUBCASE("two accuracy-like vectors, n=20") {
    const std::vector<double> a = {
        75.0,              76.92711637083438, 76.03100274364293, 73.62446768163205,
        73.2330906885597,  75.43023997617563, 76.99708669074921, 75.6381967246987,
        73.3443470618287,  73.47603283216193, 75.84033407365328, 76.97354392854923,
        75.21550730459889, 73.14175197453126, 73.79033435518743, 76.2110797394392,
        76.85759046815448, 74.78272680915184, 73.0261688837587,  74.16127816785354};
    const std::vector<double> b = {
        75.5,              74.93241495240599, 73.65919685796037, 72.64389178697441,
        72.65486237549878, 73.68380630085383, 74.95203931391396, 75.49978795457513,
        74.91252697179839, 73.63468376939632, 72.63330460717299, 72.66621327106196,
        73.708505140317,   74.97139450798082, 75.49915187825151, 74.89238099496484,
        73.61027396567937, 72.62310382937856, 72.67794126445665, 73.73328639331532};
    const auto r = desfa::paired_t_test(a, b);
    CHECK(r.t_statistic == doctest::Approx(2.7272514910915913).epsilon(kTol));
    CHECK(r.p_value == doctest::Approx(0.013378073383784899).epsilon(kTol));
    CHECK(r.mean_diff == doctest::Approx(1.030656516960245).epsilon(kTol));
    CHECK(r.significant);
  }
}

TEST_CASE("degenerate difference vectors follow the fixed conventions") {
  const std::vector<double> same = {3, 4, 5};
  const auto zero = desfa::paired_t_test(same, same);
  CHECK(zero.t_statistic == 0.0);
  CHECK(zero.p_value == 1.0);
  CHECK_FALSE(zero.significant);

  const std::vector<double> shifted = {4, 5, 6};
  const auto inf = desfa::paired_t_test(shifted, same);
  CHECK(inf.t_statistic == std::numeric_limits<double>::infinity());
  CHECK(inf.p_value == 0.0);
  CHECK(inf.significant);

  const auto ninf = desfa::paired_t_test(same, shifted);
  CHECK(ninf.t_statistic == -std::numeric_limits<double>::infinity());
  CHECK(ninf.p_value == 0.0);
}

TEST_CASE("paired t-test input validation") {
  const std::vector<double> a = {1, 2, 3};
  const std::vector<double> b = {1, 2};
  CHECK_THROWS_AS(desfa::paired_t_test(a, b), desfa::ValidationError);
  const std::vector<double> one = {1};
  CHECK_THROWS_AS(desfa::paired_t_test(one, one), desfa::ValidationError);
  CHECK_THROWS_AS(desfa::paired_t_test(a, a, 0.0), desfa::ValidationError);
  CHECK_THROWS_AS(desfa::paired_t_test(a, a, 1.0), desfa::ValidationError);
}

TEST_CASE("two-sided t p-values against frozen references") {
  CHECK(desfa::student_t_two_sided_p(2.0, 19) ==
        doctest::Approx(0.060002036386098336).epsilon(kTol));
  CHECK(desfa::student_t_two_sided_p(0.5, 19) ==
        doctest::Approx(0.6228164912864418).epsilon(kTol));
  CHECK(desfa::student_t_two_sided_p(4.5, 7) ==
        doctest::Approx(0.0027983300778426294).epsilon(kTol));
  CHECK(desfa::student_t_two_sided_p(0.0, 5) == 1.0);
  CHECK(desfa::student_t_two_sided_p(-2.0, 19) == desfa::student_t_two_sided_p(2.0, 19));
  CHECK(desfa::student_t_two_sided_p(std::numeric_limits<double>::infinity(), 19) == 0.0);
  CHECK_THROWS_AS(desfa::student_t_two_sided_p(1.0, 0), desfa::ValidationError);
}

TEST_CASE("regularized incomplete beta: edges and symmetry") {
  CHECK(desfa::regularized_incomplete_beta(2.5, 1.5, 0.0) == 0.0);
  CHECK(desfa::regularized_incomplete_beta(2.5, 1.5, 1.0) == 1.0);

  // I_x(1, 1) is the identity.
  for (double x : {0.1, 0.25, 0.5, 0.9})
    CHECK(desfa::regularized_incomplete_beta(1.0, 1.0, x) == doctest::Approx(x).epsilon(kTol));

  // I_x(a, b) = 1 - I_{1-x}(b, a).
  for (double x : {0.05, 0.3, 0.5, 0.77, 0.99}) {
    const double lhs = desfa::regularized_incomplete_beta(3.5, 0.5, x);
    const double rhs = 1.0 - desfa::regularized_incomplete_beta(0.5, 3.5, 1.0 - x);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }

  CHECK_THROWS_AS(desfa::regularized_incomplete_beta(0.0, 1.0, 0.5), desfa::ValidationError);
  CHECK_THROWS_AS(desfa::regularized_incomplete_beta(1.0, 1.0, 1.5), desfa::ValidationError);
}
