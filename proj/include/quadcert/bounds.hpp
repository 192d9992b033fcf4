#pragma once

// Simpson error-bound catalog.
//
// Every bound here controls the magnitude of
//
//   E(f; a, b) = integral_a^b f(x) dx - (b-a)/6 [f(a) + 4 f((a+b)/2) + f(b)]
//
// in terms of |f'''| at the endpoints, assuming |f'''| (or |f'''|^q) obeys a
// generalized-convexity hypothesis on [a, b].  All of them share one scaffold:
// the Simpson kernel t^2 (1/2 - t) on the left half interval (its mirror
// (1-t)^2 (t - 1/2) on the right), integrated against the convexity weight in
// one of three ways.
//
//   first-moment   bound = (b-a)^4/6 (W + W') (|f'''(a)| + |f'''(b)|)
//                  where W, W' are the kernel-weighted integrals of h(t) and
//                  h(1-t) over [0, 1/2];
//
//   conjugate      bound = (b-a)^4/6 K_p^{1/p} [(H0 A + H1 B)^{1/q}
//                                               + (H1 A + H0 B)^{1/q}],
//                  A = |f'''(a)|^q, B = |f'''(b)|^q, 1/p + 1/q = 1 (q > 1),
//                  K_p = integral_0^{1/2} (t^2 (1/2-t))^p dt, and H0, H1 are
//                  the plain half-interval integrals of h(t), h(1-t);
//
//   power-mean     bound = (b-a)^4/6 (1/192)^{1-1/q} [(W A + W' B)^{1/q}
//                                                     + (W' A + W B)^{1/q}],
//                  q >= 1, with W, W' as in the first-moment form (1/192 is
//                  the total kernel mass integral_0^{1/2} t^2 (1/2-t) dt).
//
// For the weight families h(t) = t^s and h(t) = t^alpha the moments W, W',
// H0, H1 have closed forms, which the s-convex and (alpha,m)-convex entries
// use; the h-convex entries evaluate the same moments by adaptive quadrature
// so the two routes stay independently checkable against each other.  The
// (alpha,m) entries govern the interval [a, m b] and carry the modulus m
// inside their brackets.
//
// A bound that fails to exist (the weight moment diverges, e.g. H0 for
// h(t) = 1/t) is reported as +infinity: the certificate is valid but carries
// no information.  certify() packages bound, measured Simpson error,
// numerically checked hypothesis, and the domination verdict into a
// BoundReport.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "quadcert/convexity.hpp"
#include "quadcert/expr.hpp"
#include "quadcert/hspec.hpp"
#include "quadcert/integrate.hpp"
#include "quadcert/interval.hpp"
#include "quadcert/kernel.hpp"
#include "quadcert/special_functions.hpp"

namespace quadcert {

// ---------------------------------------------------------------------------
// Theorem identifiers
// ---------------------------------------------------------------------------

/// The bound catalog.  Names encode hypothesis-class x bracket-assembly:
/// e.g. SConvexHolder assumes |f'''|^q is s-convex and assembles the bound
/// with the conjugate-exponent (Holder) bracket.  ClassicalSup is the
/// baseline sup|f''''| (b-a)^5 / 2880 bound and needs no convexity input.
enum class TheoremId {
  ClassicalSup,
  SConvexL1,
  SConvexHolder,
  SConvexPowerMean,
  HConvexL1,
  HConvexHolder,
  HConvexPowerMean,
  AlphaMHolder,
  AlphaMPowerMean,
};

inline constexpr std::array<TheoremId, 9> all_theorem_ids() noexcept {
  return {TheoremId::ClassicalSup,     TheoremId::SConvexL1,
          TheoremId::SConvexHolder,    TheoremId::SConvexPowerMean,
          TheoremId::HConvexL1,        TheoremId::HConvexHolder,
          TheoremId::HConvexPowerMean, TheoremId::AlphaMHolder,
          TheoremId::AlphaMPowerMean};
}

inline std::string_view to_string(TheoremId id) {
  switch (id) {
    case TheoremId::ClassicalSup: return "classical";
    case TheoremId::SConvexL1: return "s-l1";
    case TheoremId::SConvexHolder: return "s-holder";
    case TheoremId::SConvexPowerMean: return "s-powermean";
    case TheoremId::HConvexL1: return "h-l1";
    case TheoremId::HConvexHolder: return "h-holder";
    case TheoremId::HConvexPowerMean: return "h-powermean";
    case TheoremId::AlphaMHolder: return "am-holder";
    case TheoremId::AlphaMPowerMean: return "am-powermean";
  }
  throw std::invalid_argument("unknown theorem id");
}

inline std::optional<TheoremId> parse_theorem_id(std::string_view name) {
  for (TheoremId id : all_theorem_ids())
    if (name == to_string(id)) return id;
  return std::nullopt;
}

/// True for the theorems parameterized by an explicit weight h.
inline constexpr bool theorem_uses_weight(TheoremId id) noexcept {
  return id == TheoremId::HConvexL1 || id == TheoremId::HConvexHolder ||
         id == TheoremId::HConvexPowerMean;
}

/// True for the theorems parameterized by the s-convexity order s.
inline constexpr bool theorem_uses_s(TheoremId id) noexcept {
  return id == TheoremId::SConvexL1 || id == TheoremId::SConvexHolder ||
         id == TheoremId::SConvexPowerMean;
}

/// True for the (alpha,m)-convex theorems (govern [a, m b]).
inline constexpr bool theorem_uses_alpha_m(TheoremId id) noexcept {
  return id == TheoremId::AlphaMHolder || id == TheoremId::AlphaMPowerMean;
}

/// True when the theorem consumes an integrability exponent q.  These are
/// exactly the theorems whose hypothesis concerns |f'''|^q rather than
/// |f'''| itself.
inline constexpr bool theorem_uses_q(TheoremId id) noexcept {
  return id == TheoremId::SConvexHolder || id == TheoremId::SConvexPowerMean ||
         id == TheoremId::HConvexHolder || id == TheoremId::HConvexPowerMean ||
         id == TheoremId::AlphaMHolder || id == TheoremId::AlphaMPowerMean;
}

/// True for the conjugate-bracket (Holder) theorems, which require q > 1 so
/// that p = q/(q-1) is finite.  The power-mean theorems accept q >= 1.
inline constexpr bool theorem_requires_conjugate(TheoremId id) noexcept {
  return id == TheoremId::SConvexHolder || id == TheoremId::HConvexHolder ||
         id == TheoremId::AlphaMHolder;
}

// ---------------------------------------------------------------------------
// Bound inputs
// ---------------------------------------------------------------------------

/// Scalar inputs shared by the bound formulas.  fa3 and fb3 are |f'''(a)| and
/// |f'''(b)|; each theorem reads only the parameters it uses (q, h, s, m,
/// alpha).  certify() fills this from a FunctionModel; the struct is public
/// so bounds can also be evaluated from bare endpoint data.
struct BoundInputs {
  Interval iv{0.0, 1.0};
  double fa3 = 0.0;
  double fb3 = 0.0;
  double q = 1.0;
  HSpec h = HSpec::identity();
  double s = 1.0;
  double m = 1.0;
  double alpha = 1.0;

  /// Conjugate exponent p with 1/p + 1/q = 1.  Requires q > 1.
  double conjugate_p() const {
    if (!(q > 1.0) || !std::isfinite(q))
      throw std::invalid_argument("conjugate exponent requires q > 1");
    return q / (q - 1.0);
  }
};

namespace detail {

inline void require_endpoint_magnitudes(double fa3, double fb3) {
  if (!(fa3 >= 0.0) || !std::isfinite(fa3) || !(fb3 >= 0.0) || !std::isfinite(fb3))
    throw std::invalid_argument(
        "endpoint third-derivative magnitudes must be finite and nonnegative");
}

inline void require_s_order(double s) {
  if (!(s > 0.0) || !(s <= 1.0))
    throw std::invalid_argument("s-convexity order requires s in (0, 1]");
}

inline void require_q_conjugate(double q) {
  if (!(q > 1.0) || !std::isfinite(q))
    throw std::invalid_argument("Holder-bracket bounds require q > 1");
}

inline void require_q_power_mean(double q) {
  if (!(q >= 1.0) || !std::isfinite(q))
    throw std::invalid_argument("power-mean-bracket bounds require q >= 1");
}

inline void require_alpha_m(double alpha, double m) {
  if (!(alpha >= 0.0) || !(alpha <= 1.0))
    throw std::invalid_argument("(alpha,m) bounds require alpha in [0, 1]");
  if (!(m >= 0.0) || !(m <= 1.0))
    throw std::invalid_argument("(alpha,m) bounds require m in [0, 1]");
}

inline void require_governed_interval(double a, double m, double b) {
  if (!(a < m * b))
    throw std::invalid_argument("(alpha,m) bounds require a < m*b");
}

inline double fourth_power(double x) {
  const double x2 = x * x;
  return x2 * x2;
}

/// (Gamma(2p+1) Gamma(p+1) / Gamma(3p+2))^{1/p}, evaluated in log space.
/// Equals (2^{3p+1} K_p)^{1/p} for the kernel integral K_p of
/// kernel_holder_integral, so large p stays finite.
inline double holder_gamma_factor(double p) {
  return std::exp((log_gamma(2.0 * p + 1.0) + log_gamma(p + 1.0) -
                   log_gamma(3.0 * p + 2.0)) /
                  p);
}

/// (c0 A + c1 B)^{1/q} + (c1 A + c0 B)^{1/q}: the symmetric bracket pair
/// shared by the conjugate and power-mean assemblies.
inline double bracket_pair_sum(double c0, double c1, double A, double B, double q) {
  const double inv_q = 1.0 / q;
  return std::pow(c0 * A + c1 * B, inv_q) + std::pow(c1 * A + c0 * B, inv_q);
}

/// Half-interval weight moments H0 = integral_0^{1/2} h(t) dt and
/// H1 = integral_0^{1/2} h(1-t) dt by adaptive quadrature.  Divergence --
/// signalled structurally (known_h0_divergent) or by the integrator -- is
/// mapped to +infinity in H0 so callers can flag the bound uninformative.
inline std::array<double, 2> half_weight_moments(const HSpec& h, double tol = 1e-13) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (h.known_h0_divergent()) return {inf, inf};
  try {
    const Interval half(0.0, 0.5);
    const double h0 =
        integrate_adaptive([&h](double t) { return h(t); }, half, tol).value;
    const double h1 =
        integrate_adaptive([&h](double t) { return h(1.0 - t); }, half, tol).value;
    return {h0, h1};
  } catch (const IntegrationError&) {
    return {inf, inf};
  } catch (const EvalError&) {
    return {inf, inf};
  }
}

/// Kernel-weighted moments W = integral_0^{1/2} t^2 (1/2-t) h(t) dt and
/// W' = integral_0^{1/2} t^2 (1/2-t) h(1-t) dt, with divergence mapped to
/// +infinity exactly as in half_weight_moments.
inline std::array<double, 2> kernel_weight_moments(const HSpec& h, double tol = 1e-13) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  try {
    const double w = weighted_kernel_integral(h, KernelWeightSide::WithH, tol);
    const double wc =
        weighted_kernel_integral(h, KernelWeightSide::WithHComplement, tol);
    return {w, wc};
  } catch (const IntegrationError&) {
    return {inf, inf};
  } catch (const EvalError&) {
    return {inf, inf};
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Kernel moments for power weights (closed forms)
// ---------------------------------------------------------------------------

/// The four alpha-power moments of the half-interval Simpson kernels:
///
///   left_alpha        integral_0^{1/2}  t^2 (1/2-t) t^alpha dt
///   left_complement   integral_0^{1/2}  t^2 (1/2-t) (1 - t^alpha) dt
///   right_alpha       integral_{1/2}^1  (1-t)^2 (t-1/2) t^alpha dt
///   right_complement  integral_{1/2}^1  (1-t)^2 (t-1/2) (1 - t^alpha) dt
///
/// Each pair sums to the total kernel mass 1/192.  At alpha = 1 the values
/// are (1/640, 7/1920, 7/1920, 1/640); at alpha = 0 they collapse to
/// (1/192, 0, 1/192, 0).
struct AmMoments {
  double left_alpha;
  double left_complement;
  double right_alpha;
  double right_complement;
};

inline AmMoments am_moment_integrals(double alpha) {
  if (!(alpha >= 0.0) || !(alpha <= 1.0))
    throw std::invalid_argument("kernel power moments require alpha in [0, 1]");
  const double a = alpha;
  const double p2a = std::pow(2.0, a);
  const double d_left = p2a * (3.0 + a) * (4.0 + a);
  const double d_right = p2a * (1.0 + a) * (2.0 + a) * (3.0 + a) * (4.0 + a);
  const double right_num = a * a + 11.0 * a + 34.0 - std::pow(2.0, 4.0 + a) * (2.0 - a);
  AmMoments mom{};
  mom.left_alpha = 1.0 / (16.0 * d_left);
  mom.left_complement = (d_left - 12.0) / (192.0 * d_left);
  mom.right_alpha = right_num / (16.0 * d_right);
  mom.right_complement = (d_right - 12.0 * right_num) / (192.0 * d_right);
  return mom;
}

// ---------------------------------------------------------------------------
// Bound formulas
// ---------------------------------------------------------------------------

/// Baseline bound sup|f''''| (b-a)^5 / 2880.  Exact (ratio 1) for quartics,
/// whose fourth derivative is constant.
inline double classical_bound(double sup_f4, const Interval& iv) {
  if (!(sup_f4 >= 0.0) || !std::isfinite(sup_f4))
    throw std::invalid_argument("classical bound requires finite sup|f''''| >= 0");
  const double len = iv.length();
  return sup_f4 * detail::fourth_power(len) * len / 2880.0;
}

/// First-moment bound under "|f'''| is s-convex":
///   (b-a)^4/6 (W_s + W_s') (|f'''(a)| + |f'''(b)|)
/// with the closed-form power moments W_s = left_alpha(s), W_s' =
/// right_alpha(s).  At s = 1 the moment sum is 1/192.
inline double bound_s_l1(const BoundInputs& in) {
  detail::require_s_order(in.s);
  detail::require_endpoint_magnitudes(in.fa3, in.fb3);
  const AmMoments mom = am_moment_integrals(in.s);
  return detail::fourth_power(in.iv.length()) / 6.0 *
         (mom.left_alpha + mom.right_alpha) * (in.fa3 + in.fb3);
}

/// Conjugate-bracket bound under "|f'''|^q is s-convex" (q > 1):
///   (b-a)^4/48 (1/2)^{1/p} G_p [(H0 A + H1 B)^{1/q} + (H1 A + H0 B)^{1/q}]
/// with G_p the Gamma-ratio factor, H0 = 1/(2^{s+1}(s+1)),
/// H1 = (2^{s+1}-1)/(2^{s+1}(s+1)), A = |f'''(a)|^q, B = |f'''(b)|^q.
inline double bound_s_holder(const BoundInputs& in) {
  detail::require_s_order(in.s);
  detail::require_q_conjugate(in.q);
  detail::require_endpoint_magnitudes(in.fa3, in.fb3);
  const double p = in.conjugate_p();
  const double pow2 = std::pow(2.0, in.s + 1.0);
  const double h0 = 1.0 / (pow2 * (in.s + 1.0));
  const double h1 = (pow2 - 1.0) / (pow2 * (in.s + 1.0));
  const double A = std::pow(in.fa3, in.q);
  const double B = std::pow(in.fb3, in.q);
  const double pre = detail::fourth_power(in.iv.length()) / 48.0 *
                     std::pow(0.5, 1.0 / p) * detail::holder_gamma_factor(p);
  return pre * detail::bracket_pair_sum(h0, h1, A, B, in.q);
}

/// Power-mean bound under "|f'''|^q is s-convex" (q >= 1):
///   (b-a)^4/6 (1/192)^{1-1/q} [(W A + W' B)^{1/q} + (W' A + W B)^{1/q}]
/// with the closed power moments W = left_alpha(s), W' = right_alpha(s).
/// At q = 1 this collapses to the first-moment bound.
inline double bound_s_powermean(const BoundInputs& in) {
  detail::require_s_order(in.s);
  detail::require_q_power_mean(in.q);
  detail::require_endpoint_magnitudes(in.fa3, in.fb3);
  if (in.q == 1.0) return bound_s_l1(in);
  const AmMoments mom = am_moment_integrals(in.s);
  const double A = std::pow(in.fa3, in.q);
  const double B = std::pow(in.fb3, in.q);
  return detail::fourth_power(in.iv.length()) / 6.0 *
         std::pow(1.0 / 192.0, 1.0 - 1.0 / in.q) *
         detail::bracket_pair_sum(mom.left_alpha, mom.right_alpha, A, B, in.q);
}

/// First-moment bound under "|f'''| is h-convex":
///   (b-a)^4/6 (W + W') (|f'''(a)| + |f'''(b)|)
/// with W, W' the kernel-weighted moments of h computed by adaptive
/// quadrature.  A divergent weight moment yields +infinity.
inline double bound_h_l1(const BoundInputs& in) {
  detail::require_endpoint_magnitudes(in.fa3, in.fb3);
  const auto [w, wc] = detail::kernel_weight_moments(in.h);
  if (!std::isfinite(w) || !std::isfinite(wc))
    return std::numeric_limits<double>::infinity();
  return detail::fourth_power(in.iv.length()) / 6.0 * (w + wc) * (in.fa3 + in.fb3);
}

/// Conjugate-bracket bound under "|f'''|^q is h-convex" (q > 1), with the
/// plain half-interval moments H0 = integral h, H1 = integral h(1-t)
/// computed by adaptive quadrature.  H0 diverges for h(t) = 1/t (and any
/// weight at least that singular), in which case the bound is +infinity:
/// the certificate exists but is uninformative.
inline double bound_h_holder(const BoundInputs& in) {
  detail::require_q_conjugate(in.q);
  detail::require_endpoint_magnitudes(in.fa3, in.fb3);
  const double p = in.conjugate_p();
  const auto [h0, h1] = detail::half_weight_moments(in.h);
  if (!std::isfinite(h0) || !std::isfinite(h1))
    return std::numeric_limits<double>::infinity();
  const double A = std::pow(in.fa3, in.q);
  const double B = std::pow(in.fb3, in.q);
  const double pre = detail::fourth_power(in.iv.length()) / 48.0 *
                     std::pow(0.5, 1.0 / p) * detail::holder_gamma_factor(p);
  return pre * detail::bracket_pair_sum(h0, h1, A, B, in.q);
}

/// Power-mean bound under "|f'''|^q is h-convex" (q >= 1), with the
/// kernel-weighted moments W, W' computed by adaptive quadrature.  At q = 1
/// this is exactly bound_h_l1 (same code path, so the collapse is bitwise).
inline double bound_h_powermean(const BoundInputs& in) {
  detail::require_q_power_mean(in.q);
  detail::require_endpoint_magnitudes(in.fa3, in.fb3);
  if (in.q == 1.0) return bound_h_l1(in);
  const auto [w, wc] = detail::kernel_weight_moments(in.h);
  if (!std::isfinite(w) || !std::isfinite(wc))
    return std::numeric_limits<double>::infinity();
  const double A = std::pow(in.fa3, in.q);
  const double B = std::pow(in.fb3, in.q);
  return detail::fourth_power(in.iv.length()) / 6.0 *
         std::pow(1.0 / 192.0, 1.0 - 1.0 / in.q) *
         detail::bracket_pair_sum(w, wc, A, B, in.q);
}

/// Conjugate-bracket bound under "|f'''|^q is (alpha,m)-convex" (q > 1),
/// governing the interval [a, m b]:
///   (m b - a)^4/96 G_p [br1^{1/q} + br2^{1/q}],
///   br1 = (A + m (d-1) B) / d,
///   br2 = ((2^{alpha+1}-1) A + m (d - 2^{alpha+1} + 1) B) / d,
/// with d = 2^alpha (1+alpha), A = |f'''(a)|^q, B = |f'''(b)|^q.
inline double bound_am_holder(const BoundInputs& in) {
  detail::require_alpha_m(in.alpha, in.m);
  detail::require_q_conjugate(in.q);
  detail::require_endpoint_magnitudes(in.fa3, in.fb3);
  detail::require_governed_interval(in.iv.a, in.m, in.iv.b);
  const double p = in.conjugate_p();
  const double inv_q = 1.0 / in.q;
  const double A = std::pow(in.fa3, in.q);
  const double B = std::pow(in.fb3, in.q);
  const double d = std::pow(2.0, in.alpha) * (1.0 + in.alpha);
  const double e = std::pow(2.0, in.alpha + 1.0) - 1.0;
  const double br1 = (A + in.m * (d - 1.0) * B) / d;
  const double br2 = (e * A + in.m * (d - e) * B) / d;
  const double len = in.m * in.iv.b - in.iv.a;
  return detail::fourth_power(len) / 96.0 * detail::holder_gamma_factor(p) *
         (std::pow(br1, inv_q) + std::pow(br2, inv_q));
}

/// Power-mean bound under "|f'''|^q is (alpha,m)-convex" (q >= 1),
/// governing [a, m b]:
///   (m b - a)^4/1152 [br1^{1/q} + br2^{1/q}],
///   br1 = (12 A + m (d1 - 12) B) / d1,  d1 = 2^alpha (3+alpha)(4+alpha),
///   br2 = c A + m (1 - c) B,            c = 192 right_alpha(alpha).
/// Equivalently (same number, assembled differently):
///   (m b - a)^4/6 (1/192)^{1-1/q} [(L A + m L' B)^{1/q} + (R A + m R' B)^{1/q}]
/// with the four kernel power moments (L, L', R, R') of am_moment_integrals.
/// At q = 1 both collapse to the first-moment form (m b - a)^4 (A + B)/1152
/// when alpha = 1, m = 1.
inline double bound_am_powermean(const BoundInputs& in) {
  detail::require_alpha_m(in.alpha, in.m);
  detail::require_q_power_mean(in.q);
  detail::require_endpoint_magnitudes(in.fa3, in.fb3);
  detail::require_governed_interval(in.iv.a, in.m, in.iv.b);
  const double inv_q = 1.0 / in.q;
  const double A = std::pow(in.fa3, in.q);
  const double B = std::pow(in.fb3, in.q);
  const double a = in.alpha;
  const double d1 = std::pow(2.0, a) * (3.0 + a) * (4.0 + a);
  const double c = 12.0 * (a * a + 11.0 * a + 34.0 - std::pow(2.0, 4.0 + a) * (2.0 - a)) /
                   (std::pow(2.0, a) * (1.0 + a) * (2.0 + a) * (3.0 + a) * (4.0 + a));
  const double br1 = (12.0 * A + in.m * (d1 - 12.0) * B) / d1;
  const double br2 = c * A + in.m * (1.0 - c) * B;
  const double len = in.m * in.iv.b - in.iv.a;
  return detail::fourth_power(len) / 1152.0 *
         (std::pow(br1, inv_q) + std::pow(br2, inv_q));
}

// ---------------------------------------------------------------------------
// Certification
// ---------------------------------------------------------------------------

/// |f''''| maximized over a closed uniform sample grid (endpoints included).
/// Used by the classical bound; evaluation errors propagate to the caller.
inline double max_abs_fourth_derivative(const FunctionModel& f, const Interval& iv,
                                        int samples = 1025) {
  if (samples < 2) throw std::invalid_argument("derivative scan needs >= 2 samples");
  const Expr& d4 = f.derivative(4);
  double sup = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double frac = static_cast<double>(i) / (samples - 1);
    const double x = (i == 0) ? iv.a : (i == samples - 1 ? iv.b : iv.a + frac * iv.length());
    sup = std::max(sup, std::fabs(d4.evaluate(x)));
  }
  return sup;
}

/// |f'''|^power as a pointwise target for hypothesis checking.  power = 1
/// avoids the pow call so first-moment hypotheses see |f'''| exactly.
inline std::function<double(double)> abs_third_derivative_power(const FunctionModel& f,
                                                                double power) {
  if (power == 1.0) return abs_third_derivative(f);
  return [d3 = f.derivative(3), power](double x) {
    return std::pow(std::fabs(d3.evaluate(x)), power);
  };
}

/// Knobs for certify().  Only the parameters the chosen theorem reads are
/// consumed; the rest are ignored.
struct CertifyOptions {
  double s = 1.0;
  double q = 2.0;
  double alpha = 1.0;
  double m = 1.0;
  HSpec h = HSpec::identity();
  int grid_n = 64;               // convexity-check density per axis
  double convexity_tol = 1e-9;   // scaled slack tolerance for the check
  double integration_tol = 1e-12;  // reference-integral tolerance
};

/// The parameters a theorem actually consumed, echoed for reporting.
struct ReportedParams {
  std::optional<std::string> h;
  std::optional<double> s;
  std::optional<double> q;
  std::optional<double> alpha;
  std::optional<double> m;
};

/// Everything certify() establishes about one (function, interval, theorem)
/// triple.  `bound` is +infinity when the bound formula diverges for the
/// requested weight (certificate valid but uninformative).  `dominates`
/// is empty when the hypothesis failed: the bound is then unproven, and no
/// domination claim is made either way.  `ratio` = actual_error / bound is
/// reported whenever the bound is finite and positive; under a passed
/// hypothesis it lies in [0, 1] up to roundoff, and 1 means sharp.
struct BoundReport {
  TheoremId theorem = TheoremId::ClassicalSup;
  ReportedParams params;
  double bound = 0.0;
  double actual_error = 0.0;
  ConvexityVerdict hypothesis;
  std::optional<bool> dominates;
  std::optional<double> ratio;
};

namespace detail {

/// Slack for the domination comparison: actual <= bound + slack(bound).
/// Mixed absolute/relative so both tiny and large bounds compare sanely.
inline double domination_slack(double bound) { return 1e-12 * (1.0 + bound); }

inline ConvexityHypothesis make_hypothesis(TheoremId theorem, const FunctionModel& f,
                                           const Interval& iv, const CertifyOptions& opt) {
  const double power = theorem_uses_q(theorem) ? opt.q : 1.0;
  auto target = abs_third_derivative_power(f, power);
  if (theorem_uses_s(theorem))
    return ConvexityHypothesis::s_convex(opt.s, std::move(target), iv);
  if (theorem_uses_weight(theorem))
    return ConvexityHypothesis::h_convex(opt.h, std::move(target), iv);
  return ConvexityHypothesis::alpha_m_convex(opt.alpha, opt.m, std::move(target), iv);
}

inline double evaluate_bound(TheoremId theorem, const BoundInputs& in) {
  switch (theorem) {
    case TheoremId::SConvexL1: return bound_s_l1(in);
    case TheoremId::SConvexHolder: return bound_s_holder(in);
    case TheoremId::SConvexPowerMean: return bound_s_powermean(in);
    case TheoremId::HConvexL1: return bound_h_l1(in);
    case TheoremId::HConvexHolder: return bound_h_holder(in);
    case TheoremId::HConvexPowerMean: return bound_h_powermean(in);
    case TheoremId::AlphaMHolder: return bound_am_holder(in);
    case TheoremId::AlphaMPowerMean: return bound_am_powermean(in);
    case TheoremId::ClassicalSup:
      throw std::logic_error("classical bound is evaluated from sup|f''''|");
  }
  throw std::invalid_argument("unknown theorem id");
}

inline ReportedParams echo_params(TheoremId theorem, const CertifyOptions& opt) {
  ReportedParams params;
  if (theorem_uses_weight(theorem)) params.h = opt.h.name();
  if (theorem_uses_s(theorem)) params.s = opt.s;
  if (theorem_uses_q(theorem)) params.q = opt.q;
  if (theorem_uses_alpha_m(theorem)) {
    params.alpha = opt.alpha;
    params.m = opt.m;
  }
  return params;
}

}  // namespace detail

/// Full certification pipeline for one theorem:
///
///   1. evaluate |f'''| at the endpoints and the bound formula (validating
///      the theorem's parameters; a divergent weight gives bound = +inf);
///   2. check the convexity hypothesis of the theorem numerically -- |f'''|
///      for the first-moment theorems, |f'''|^q for the conjugate and
///      power-mean theorems -- on the hypothesis domain [a, b];
///   3. measure the actual Simpson error on the governed interval ([a, b],
///      or [a, m b] for the (alpha,m) theorems) against the adaptive
///      reference integral;
///   4. compare: dominates = actual <= bound + 1e-12 (1 + bound), reported
///      only when the hypothesis passed.
///
/// Evaluation and differentiation failures (EvalError, DifferentiationError)
/// propagate: a certificate is never issued for a function the engine could
/// not examine.
inline BoundReport certify(const FunctionModel& f, const Interval& iv, TheoremId theorem,
                           const CertifyOptions& opt = {}) {
  BoundReport report;
  report.theorem = theorem;
  report.params = detail::echo_params(theorem, opt);

  Interval governed = iv;
  if (theorem_uses_alpha_m(theorem)) {
    detail::require_alpha_m(opt.alpha, opt.m);
    detail::require_governed_interval(iv.a, opt.m, iv.b);
    governed = Interval(iv.a, opt.m * iv.b);
  }

  if (theorem == TheoremId::ClassicalSup) {
    report.bound = classical_bound(max_abs_fourth_derivative(f, iv), iv);
    report.hypothesis.passed = true;  // no convexity input; nothing to check
    report.hypothesis.grid_density = 0;
    report.hypothesis.slack_min = 0.0;
  } else {
    const Expr& d3 = f.derivative(3);
    BoundInputs in;
    in.iv = iv;
    in.fa3 = std::fabs(d3.evaluate(iv.a));
    in.fb3 = std::fabs(d3.evaluate(iv.b));
    in.q = opt.q;
    in.h = opt.h;
    in.s = opt.s;
    in.m = opt.m;
    in.alpha = opt.alpha;
    report.bound = detail::evaluate_bound(theorem, in);
    report.hypothesis = check_hypothesis(detail::make_hypothesis(theorem, f, iv, opt),
                                         opt.grid_n, opt.convexity_tol);
  }

  const double reference =
      reference_integral([&f](double x) { return f(x); }, governed, opt.integration_tol);
  const double simpson = simpson_estimate([&f](double x) { return f(x); }, governed);
  report.actual_error = std::fabs(reference - simpson);

  if (report.hypothesis.passed)
    report.dominates =
        report.actual_error <= report.bound + detail::domination_slack(report.bound);
  if (std::isfinite(report.bound) && report.bound > 0.0)
    report.ratio = report.actual_error / report.bound;
  return report;
}

}  // namespace quadcert
