// Tests for Simpson's rule, the adaptive Gauss-Kronrod reference
// integrator, and log_gamma.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "quadcert/expr.hpp"
#include "quadcert/integrate.hpp"
#include "quadcert/special_functions.hpp"

using quadcert::Interval;
using quadcert::IntegrationError;

namespace {

// Moments of the GK rules on [-1, 1]: x^k integrates to 0 (k odd) or
// 2/(k+1) (k even).  K15 must be exact through degree 23, G7 through 13.
double monomial_integral_error(int k, bool kronrod_only) {
  const auto f = [k](double x) { return std::pow(x, k); };
  const auto est = quadcert::detail::gk15_panel(f, -1.0, 1.0);
  const double exact = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
  if (kronrod_only) return std::fabs(est.k15 - exact);
  // est.key = |K15 - G7|; both rules exact => estimate collapses to roundoff.
  return est.key;
}

}  // namespace

TEST_CASE("Kronrod rule integrates degree <= 23 exactly", "[integrate]") {
  for (int k = 0; k <= 23; ++k)
    CHECK(monomial_integral_error(k, true) < 1e-14);
  // Degree 24 is genuinely beyond the rule: the error must be visible.
  CHECK(monomial_integral_error(24, true) > 1e-10);
}

TEST_CASE("embedded Gauss rule agrees through degree 13", "[integrate]") {
  for (int k = 0; k <= 13; ++k)
    CHECK(monomial_integral_error(k, false) < 1e-14);
}

TEST_CASE("simpson_estimate matches the closed five-value formula", "[integrate]") {
  const auto f = [](double x) { return x * x * x * x; };
  // (b-a)/6 [f(a) + 4 f(mid) + f(b)] on [0,1] = (0 + 4/16 + 1)/6 = 5/24.
  CHECK(quadcert::simpson_estimate(f, Interval(0.0, 1.0)) == 1.25 / 6.0);
  CHECK(quadcert::simpson_estimate([](double x) { return std::sin(x); },
                                   Interval(0.0, M_PI)) ==
        Catch::Approx(2.0 * M_PI / 3.0).epsilon(1e-15));
}

TEST_CASE("simpson is exact for cubics", "[integrate][property]") {
  std::mt19937 rng(911u);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  std::uniform_real_distribution<double> pt(-2.0, 2.0);

  for (int trial = 0; trial < 60; ++trial) {
    const double c0 = coef(rng), c1 = coef(rng), c2 = coef(rng), c3 = coef(rng);
    double a = pt(rng), b = pt(rng);
    if (a > b) std::swap(a, b);
    if (b - a < 0.1) b = a + 0.1;

    const auto f = [&](double x) { return ((c3 * x + c2) * x + c1) * x + c0; };
    const auto F = [&](double x) {
      return ((c3 / 4 * x + c2 / 3) * x + c1 / 2) * x * x + c0 * x;
    };
    const double exact = F(b) - F(a);
    CHECK(std::fabs(quadcert::simpson_estimate(f, Interval(a, b)) - exact) <= 1e-13);
    CHECK(std::fabs(quadcert::reference_integral(f, Interval(a, b), 1e-12) - exact) <= 1e-12);
  }
}

TEST_CASE("reference integrator hits standard values", "[integrate]") {
  const double tol = 1e-12;
  CHECK(quadcert::reference_integral([](double x) { return std::exp(x); },
                                     Interval(0.0, 1.0), tol) ==
        Catch::Approx(M_E - 1.0).epsilon(1e-14));
  CHECK(quadcert::reference_integral([](double x) { return std::sin(x); },
                                     Interval(0.0, M_PI), tol) ==
        Catch::Approx(2.0).epsilon(1e-14));
  // Oscillatory: forces real subdivision.
  const auto osc = [](double x) { return std::sin(50.0 * x); };
  const auto res = quadcert::integrate_adaptive(osc, Interval(0.0, 1.0), tol);
  CHECK(res.value == Catch::Approx((1.0 - std::cos(50.0)) / 50.0).margin(1e-12));
  CHECK(res.panels > 1);
  CHECK(res.error_estimate <= tol);
}

TEST_CASE("integrable endpoint singularities converge", "[integrate]") {
  // t^(-1/2) on (0,1]: open nodes never touch t = 0.
  CHECK(quadcert::reference_integral([](double t) { return 1.0 / std::sqrt(t); },
                                     Interval(0.0, 1.0), 1e-10) ==
        Catch::Approx(2.0).epsilon(1e-9));
  // t^0.1 * smooth factor.
  CHECK(quadcert::reference_integral([](double t) { return std::pow(t, 0.1); },
                                     Interval(0.0, 1.0), 1e-12) ==
        Catch::Approx(1.0 / 1.1).epsilon(1e-11));
}

TEST_CASE("non-integrable singularities raise IntegrationError", "[integrate]") {
  CHECK_THROWS_AS(quadcert::reference_integral([](double t) { return 1.0 / t; },
                                               Interval(0.0, 0.5), 1e-10),
                  IntegrationError);
  CHECK_THROWS_AS(quadcert::reference_integral([](double t) { return 1.0 / (t * t); },
                                               Interval(0.0, 1.0), 1e-10),
                  IntegrationError);
}

TEST_CASE("tolerance validation", "[integrate]") {
  const auto f = [](double x) { return x; };
  CHECK_THROWS_AS(quadcert::reference_integral(f, Interval(0.0, 1.0), 1e-15),
                  std::invalid_argument);
  CHECK_THROWS_AS(quadcert::reference_integral(f, Interval(0.0, 1.0), 1e-5),
                  std::invalid_argument);
  CHECK_THROWS_AS(quadcert::reference_integral(f, Interval(0.0, 1.0), 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(Interval(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("integration works directly on FunctionModel", "[integrate]") {
  const quadcert::FunctionModel f = quadcert::FunctionModel::parse("x^2");
  CHECK(quadcert::reference_integral(f, Interval(0.0, 3.0), 1e-12) ==
        Catch::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("log_gamma matches std::lgamma to 1e-12", "[special]") {
  // Dense sweep over [0.5, 200].
  for (double x = 0.5; x <= 200.0; x += 0.37) {
    const double ref = std::lgamma(x);
    const double got = quadcert::log_gamma(x);
    CHECK(std::fabs(got - ref) <= 1e-12 * std::max(1.0, std::fabs(ref)));
  }
  // Exact anchors.
  CHECK(std::fabs(quadcert::log_gamma(1.0)) < 1e-14);
  CHECK(std::fabs(quadcert::log_gamma(2.0)) < 1e-14);
  CHECK(quadcert::log_gamma(0.5) == Catch::Approx(0.5723649429247001).epsilon(1e-14));
  CHECK(quadcert::log_gamma(5.0) == Catch::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK_THROWS_AS(quadcert::log_gamma(0.0), std::invalid_argument);
  CHECK_THROWS_AS(quadcert::log_gamma(-1.5), std::invalid_argument);
}
