#pragma once

// kernel.hpp -- the Peano-type kernel behind Simpson's rule, the integral
// identity that anchors every bound in the catalog, and the kernel-weighted
// integrals the bounds are assembled from.
//
// On the unit interval the kernel is
//
//   p(t) = t^2 (t - 1/2) / 6         for t in [0, 1/2]
//   p(t) = (t-1)^2 (t - 1/2) / 6     for t in (1/2, 1]
//
// and satisfies the antisymmetry p(1 - t) = -p(t).  For a three-times
// differentiable f and scale parameter m in (0, 1] with a < m b, integration
// by parts gives
//
//   integral_a^{mb} f  -  Simpson(f; a, mb)
//     = (m b - a)^4 * integral_0^1 p(t) f'''(t a + m (1-t) b) dt.
//
// verify_kernel_identity() evaluates both sides numerically and returns the
// residual; the acceptance suite drives it over a family of monomials.

#include <cmath>
#include <stdexcept>

#include "quadcert/expr.hpp"
#include "quadcert/hspec.hpp"
#include "quadcert/integrate.hpp"
#include "quadcert/interval.hpp"
#include "quadcert/special_functions.hpp"

namespace quadcert {

/// The Simpson kernel p(t) on [0, 1].
inline double kernel_p(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("kernel_p argument must lie in [0, 1]");
  if (t <= 0.5) return t * t * (t - 0.5) / 6.0;
  const double u = t - 1.0;
  return u * u * (t - 0.5) / 6.0;
}

/// Residual |LHS - RHS| of the kernel identity for f on [a, m b].
///
/// Both sides are computed with the reference integrator at absolute
/// tolerance `tol`; the right-hand side is split at the kernel's kink
/// (t = 1/2) so each piece is smooth.  Requires m in (0, 1] and a < m b.
inline double verify_kernel_identity(const FunctionModel& f, const Interval& iv,
                                     double m = 1.0, double tol = 1e-12) {
  if (!(m > 0.0 && m <= 1.0))
    throw std::invalid_argument("scale parameter m must lie in (0, 1]");
  const double a = iv.a;
  const double b = iv.b;
  const double mb = m * b;
  if (!(a < mb))
    throw std::invalid_argument("kernel identity requires a < m*b");

  const Interval gov(a, mb);
  const double lhs = reference_integral([&f](double x) { return f(x); }, gov, tol) -
                     simpson_estimate([&f](double x) { return f(x); }, gov);

  const Expr& f3 = f.derivative(3);
  const auto integrand = [&](double t) {
    return kernel_p(t) * f3.evaluate(t * a + m * (1.0 - t) * b);
  };
  const double scale = mb - a;
  const double scale4 = scale * scale * scale * scale;
  const double rhs = scale4 * (reference_integral(integrand, Interval(0.0, 0.5), tol) +
                               reference_integral(integrand, Interval(0.5, 1.0), tol));

  return std::fabs(lhs - rhs);
}

/// Which argument the weight takes inside the kernel-weighted integral.
enum class KernelWeightSide {
  WithH,           // integrand  t^2 (1/2 - t) h(t)
  WithHComplement  // integrand  t^2 (1/2 - t) h(1 - t)
};

/// Kernel-weighted integral
///
///   integral_0^{1/2} t^2 (1/2 - t) h(t) dt      (WithH)
///   integral_0^{1/2} t^2 (1/2 - t) h(1 - t) dt  (WithHComplement)
///
/// computed by the adaptive reference integrator.  The Gauss-Kronrod nodes
/// are open, so weights singular at an endpoint (1/t and friends) are probed
/// only in the interior; if the combined integrand is not integrable the
/// engine's IntegrationError propagates.
inline double weighted_kernel_integral(const HSpec& h, KernelWeightSide side,
                                       double tol = 1e-13) {
  const auto integrand = [&](double t) {
    const double w = side == KernelWeightSide::WithH ? h(t) : h(1.0 - t);
    return t * t * (0.5 - t) * w;
  };
  return integrate_adaptive(integrand, Interval(0.0, 0.5), tol).value;
}

/// Closed form of the Holder companion integral
///
///   integral_0^{1/2} (t^2 (1/2 - t))^p dt
///     = Gamma(2p+1) Gamma(p+1) / (2^{3p+1} Gamma(3p+2)),
///
/// evaluated in log space so large p cannot overflow.  Requires p >= 1.
inline double kernel_holder_integral(double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::invalid_argument("kernel_holder_integral requires p >= 1");
  const double log_value = log_gamma(2.0 * p + 1.0) + log_gamma(p + 1.0) -
                           (3.0 * p + 1.0) * std::log(2.0) - log_gamma(3.0 * p + 2.0);
  return std::exp(log_value);
}

}  // namespace quadcert
