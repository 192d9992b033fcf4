#pragma once

// convexity.hpp -- grid falsification of generalized-convexity hypotheses.
//
// A hypothesis names a convexity class for a scalar target (typically
// |f'''|) on an interval, and is checked by brute force over an (x, y, t)
// grid: the class's defining inequality either survives every sample ("not
// falsified at this density") or the worst violating triple is returned as
// an explicit counterexample.  A pass is grid evidence, not a proof.
//
// Supported classes, each with its defining inequality for t in [0,1]:
//   Godunova-Levin      f(tx+(1-t)y) <= f(x)/t + f(y)/(1-t),   t in (0,1)
//   P-function          f(tx+(1-t)y) <= f(x) + f(y)
//   s-convex (2nd kind) f(tx+(1-t)y) <= t^s f(x) + (1-t)^s f(y),  s in (0,1]
//   h-convex            f(tx+(1-t)y) <= h(t) f(x) + h(1-t) f(y)
//   m-convex            f(tx+m(1-t)y) <= t f(x) + m(1-t) f(y),   m in [0,1]
//   (alpha,m)-convex    f(tx+m(1-t)y) <= t^a f(x) + m(1-t^a) f(y)
//
// The t-grid is closed under the floating-point map t -> 1-t: the complement
// of every grid value is itself a grid value, exactly.  Two guarantees ride
// on this: swapping (x, y) while replacing t by 1-t reproduces bit-identical
// slacks (so slack_min is exactly symmetric), and the (alpha,m) = (1,1)
// check evaluates bit-identically to h-convexity with h(t) = t.
//
// Tolerance semantics: a sample only counts as a violation when
//   lhs > rhs + tol * max(1, max |target| over the x-grid),
// i.e. the tolerance is read relative to the target's magnitude (with an
// absolute floor of tol itself).  Slacks are reported unscaled.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "quadcert/expr.hpp"
#include "quadcert/hspec.hpp"
#include "quadcert/interval.hpp"

namespace quadcert {

enum class ConvexityKind {
  GodunovaLevin,
  PFunction,
  SConvexSecondSense,
  HConvex,
  MConvex,
  AlphaMConvex,
};

inline const char* to_string(ConvexityKind kind) {
  switch (kind) {
    case ConvexityKind::GodunovaLevin: return "godunova-levin";
    case ConvexityKind::PFunction: return "p-function";
    case ConvexityKind::SConvexSecondSense: return "s-convex";
    case ConvexityKind::HConvex: return "h-convex";
    case ConvexityKind::MConvex: return "m-convex";
    case ConvexityKind::AlphaMConvex: return "alpha-m-convex";
  }
  return "unknown";
}

/// A grid point where the defining inequality failed, with both sides.
struct Counterexample {
  double x, y, t;
  double lhs, rhs;
};

/// Outcome of a grid check.  `passed` iff no counterexample was found;
/// `slack_min` is the raw minimum of rhs - lhs over the whole grid (it may
/// be slightly negative on a pass, within the scaled tolerance).
struct ConvexityVerdict {
  bool passed = false;
  std::optional<Counterexample> counterexample;
  int grid_density = 0;
  double slack_min = 0.0;
};

namespace detail {

inline std::string short_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// A grid on [0,1] that is exactly closed under t -> 1.0 - t.  Each value in
// the lower half is snapped to the exact complement of its mirror: with
// hi = fl(1 - j/den) in [1/2, 1], Sterbenz's lemma makes lo = 1.0 - hi exact,
// so 1.0 - lo == hi and 1.0 - hi == lo hold bitwise.  `open` selects the
// endpoint-free layout t_j ~ j/(n+1), j = 1..n; otherwise t_j ~ j/(n-1),
// j = 0..n-1, including both endpoints.
inline std::vector<double> complement_closed_grid(int n, bool open) {
  std::vector<double> t(static_cast<std::size_t>(n));
  const double den = open ? n + 1 : n - 1;
  for (int j = open ? 1 : 0; j <= n / 2; ++j) {
    const double hi = 1.0 - static_cast<double>(j) / den;
    const double lo = 1.0 - hi;
    const int low_index = open ? j - 1 : j;
    t[static_cast<std::size_t>(low_index)] = lo;
    t[static_cast<std::size_t>(n - 1 - low_index)] = hi;
  }
  if (n % 2 == 1) t[static_cast<std::size_t>(n / 2)] = 0.5;
  return t;
}

}  // namespace detail

/// A convexity claim: which class, its parameters, the target function, and
/// the interval the claim is made on.  Build through the static factories,
/// which validate parameter ranges.
struct ConvexityHypothesis {
  ConvexityKind kind;
  HSpec h;             // weight for the h-form kinds; identity otherwise
  double s = 0.0;      // s-convexity exponent (SConvexSecondSense)
  double m = 1.0;      // m-convexity weight (MConvex, AlphaMConvex)
  double alpha = 1.0;  // exponent (AlphaMConvex)
  std::function<double(double)> target;
  Interval domain;

  static ConvexityHypothesis godunova_levin(std::function<double(double)> target,
                                            const Interval& domain) {
    return {ConvexityKind::GodunovaLevin, HSpec::reciprocal(), 0.0, 1.0, 1.0,
            require_target(std::move(target)), domain};
  }

  static ConvexityHypothesis p_function(std::function<double(double)> target,
                                        const Interval& domain) {
    return {ConvexityKind::PFunction, HSpec::one(), 0.0, 1.0, 1.0,
            require_target(std::move(target)), domain};
  }

  static ConvexityHypothesis s_convex(double s, std::function<double(double)> target,
                                      const Interval& domain) {
    if (!(s > 0.0 && s <= 1.0))
      throw std::invalid_argument("s-convexity exponent must lie in (0, 1]");
    return {ConvexityKind::SConvexSecondSense, HSpec::power(s), s, 1.0, 1.0,
            require_target(std::move(target)), domain};
  }

  static ConvexityHypothesis h_convex(HSpec h, std::function<double(double)> target,
                                      const Interval& domain) {
    return {ConvexityKind::HConvex, std::move(h), 0.0, 1.0, 1.0,
            require_target(std::move(target)), domain};
  }

  static ConvexityHypothesis m_convex(double m, std::function<double(double)> target,
                                      const Interval& domain) {
    require_m_domain(m, domain);
    return {ConvexityKind::MConvex, HSpec::identity(), 0.0, m, 1.0,
            require_target(std::move(target)), domain};
  }

  static ConvexityHypothesis alpha_m_convex(double alpha, double m,
                                            std::function<double(double)> target,
                                            const Interval& domain) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
      throw std::invalid_argument("alpha must lie in [0, 1]");
    require_m_domain(m, domain);
    return {ConvexityKind::AlphaMConvex, HSpec::identity(), 0.0, m, alpha,
            require_target(std::move(target)), domain};
  }

  /// Human-readable class name with parameters, e.g. "s-convex (s=0.5)".
  std::string name() const {
    switch (kind) {
      case ConvexityKind::GodunovaLevin: return "godunova-levin";
      case ConvexityKind::PFunction: return "p-function";
      case ConvexityKind::SConvexSecondSense:
        return "s-convex (s=" + detail::short_double(s) + ")";
      case ConvexityKind::HConvex: return "h-convex (h=" + h.name() + ")";
      case ConvexityKind::MConvex:
        return "m-convex (m=" + detail::short_double(m) + ")";
      case ConvexityKind::AlphaMConvex:
        return "(alpha,m)-convex (alpha=" + detail::short_double(alpha) +
               ", m=" + detail::short_double(m) + ")";
    }
    return "unknown";
  }

 private:
  static std::function<double(double)> require_target(std::function<double(double)> t) {
    if (!t) throw std::invalid_argument("convexity target must be callable");
    return t;
  }

  static void require_m_domain(double m, const Interval& domain) {
    if (!(m >= 0.0 && m <= 1.0))
      throw std::invalid_argument("m must lie in [0, 1]");
    if (domain.a < 0.0)
      throw std::invalid_argument(
          "m-convexity requires a domain contained in [0, +inf)");
  }
};

/// The target usually checked in practice: x -> |f'''(x)|.
inline std::function<double(double)> abs_third_derivative(const FunctionModel& f) {
  return [d3 = f.derivative(3)](double x) { return std::fabs(d3.evaluate(x)); };
}

namespace detail {

[[noreturn]] inline void rethrow_at_point(const EvalError& e, double x, double y,
                                          double t) {
  throw EvalError(std::string(e.what()) + " (while checking convexity at x=" +
                  short_double(x) + ", y=" + short_double(y) +
                  ", t=" + short_double(t) + ")");
}

}  // namespace detail

/// Evaluate the hypothesis's defining inequality on a grid_n^3 grid of
/// (x, y, t) samples.  Passes iff lhs <= rhs + tol*max(1, max|target|)
/// everywhere; otherwise reports the worst violating triple, chosen by
/// lexicographic (slack, x, y, t).  Throws std::invalid_argument for
/// grid_n < 16 or a non-finite/non-positive tol, and EvalError (annotated
/// with the grid point) when the target cannot be evaluated somewhere.
inline ConvexityVerdict check_hypothesis(const ConvexityHypothesis& hyp,
                                         int grid_n = 64, double tol = 1e-9) {
  if (grid_n < 16) throw std::invalid_argument("grid_n must be at least 16");
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw std::invalid_argument("convexity tolerance must be positive and finite");

  const std::size_t n = static_cast<std::size_t>(grid_n);
  const bool h_form = hyp.kind != ConvexityKind::MConvex &&
                      hyp.kind != ConvexityKind::AlphaMConvex;
  // Weights that blow up at an endpoint (1/t at 0, or a custom h undefined
  // there) force the endpoint-free grid; Godunova-Levin is defined on open
  // (0,1) and always uses it.
  const bool open_grid =
      hyp.kind == ConvexityKind::GodunovaLevin ||
      (hyp.kind == ConvexityKind::HConvex &&
       !(hyp.h.evaluable_at(0.0) && hyp.h.evaluable_at(1.0)));
  const std::vector<double> ts = detail::complement_closed_grid(grid_n, open_grid);

  // x and y share one grid over the domain.
  std::vector<double> xs(n);
  const double len = hyp.domain.length();
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = hyp.domain.a + static_cast<double>(i) * len / static_cast<double>(grid_n - 1);
  xs.front() = hyp.domain.a;
  xs.back() = hyp.domain.b;

  // Target values at the grid nodes feed every rhs; their magnitude sets the
  // comparison scale.
  std::vector<double> fx(n);
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    try {
      fx[i] = hyp.target(xs[i]);
    } catch (const EvalError& e) {
      detail::rethrow_at_point(e, xs[i], xs[i], 0.0);
    }
    scale = std::max(scale, std::fabs(fx[i]));
  }
  const double tol_eff = tol * scale;

  // Per-t weights.  h-form kinds pair h(t) with h(1-t) through the grid's
  // exact complement; the (alpha,m) form uses t^alpha and m(1 - t^alpha),
  // with alpha == 1 kept as plain t so the (1,1) case reproduces h(t)=t
  // arithmetic bit-for-bit.
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (h_form) {
      try {
        w[k] = hyp.h(ts[k]);
      } catch (const EvalError& e) {
        detail::rethrow_at_point(e, 0.0, 0.0, ts[k]);
      }
    } else {
      w[k] = hyp.alpha == 1.0 ? ts[k] : std::pow(ts[k], hyp.alpha);
    }
  }

  ConvexityVerdict verdict;
  verdict.grid_density = grid_n;
  double slack_min = std::numeric_limits<double>::infinity();
  bool have_worst = false;
  double worst_slack = 0.0;
  Counterexample worst{};

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double t = ts[k];
        const double tc = ts[n - 1 - k];  // == 1.0 - t, exactly
        double arg, rhs;
        if (h_form) {
          arg = t * xs[i] + tc * xs[j];
          rhs = w[k] * fx[i] + w[n - 1 - k] * fx[j];
        } else {
          arg = t * xs[i] + hyp.m * (tc * xs[j]);
          rhs = w[k] * fx[i] + hyp.m * ((1.0 - w[k]) * fx[j]);
        }
        double lhs;
        try {
          lhs = hyp.target(arg);
        } catch (const EvalError& e) {
          detail::rethrow_at_point(e, xs[i], xs[j], t);
        }
        const double slack = rhs - lhs;
        slack_min = std::min(slack_min, slack);
        if (lhs > rhs + tol_eff) {
          const bool better =
              !have_worst ||
              std::tie(slack, xs[i], xs[j], t) <
                  std::tie(worst_slack, worst.x, worst.y, worst.t);
          if (better) {
            worst = {xs[i], xs[j], t, lhs, rhs};
            worst_slack = slack;
          }
          have_worst = true;
        }
      }
    }
  }

  verdict.slack_min = slack_min;
  verdict.passed = !have_worst;
  if (have_worst) verdict.counterexample = worst;
  return verdict;
}

/// Verdicts for the four weight families the inclusion chain compares:
/// ordinary convexity (h=t), P-functions (h=1), Godunova-Levin (h=1/t), and
/// s-convexity (h=t^s).
struct InclusionReport {
  double s;
  ConvexityVerdict convex;          // SX(h=t)
  ConvexityVerdict p_function;      // SX(h=1)
  ConvexityVerdict godunova_levin;  // SX(h=1/t), open grid
  ConvexityVerdict s_convex;        // SX(h=t^s)
};

/// Probe which of the four classes a non-negative target belongs to (at grid
/// resolution).  Throws std::invalid_argument if the target goes negative on
/// the grid: the inclusion statements only make sense for non-negative f.
inline InclusionReport class_inclusion_probe(std::function<double(double)> target,
                                             const Interval& domain, double s,
                                             int grid_n = 64, double tol = 1e-9) {
  if (grid_n < 16) throw std::invalid_argument("grid_n must be at least 16");
  if (!target) throw std::invalid_argument("convexity target must be callable");
  for (int i = 0; i < grid_n; ++i) {
    const double x =
        domain.a + static_cast<double>(i) * domain.length() / (grid_n - 1);
    if (!(target(x) >= -tol))
      throw std::invalid_argument(
          "class_inclusion_probe requires a non-negative target");
  }

  InclusionReport report;
  report.s = s;
  report.convex = check_hypothesis(
      ConvexityHypothesis::h_convex(HSpec::identity(), target, domain), grid_n, tol);
  report.p_function = check_hypothesis(
      ConvexityHypothesis::p_function(target, domain), grid_n, tol);
  report.godunova_levin = check_hypothesis(
      ConvexityHypothesis::godunova_levin(target, domain), grid_n, tol);
  report.s_convex = check_hypothesis(
      ConvexityHypothesis::s_convex(s, target, domain), grid_n, tol);
  return report;
}

}  // namespace quadcert
