#pragma once

// integrate.hpp -- Simpson's rule and an adaptive Gauss-Kronrod reference
// integrator.
//
// The reference integrator drives a 7-point Gauss / 15-point Kronrod pair
// with global worst-first refinement: every panel carries the error estimate
// |K15 - G7|, and the panel with the largest estimate is bisected until the
// sum of all estimates fits inside half the requested tolerance.  Worst-first
// refinement (rather than a per-panel budget) is what lets integrable
// endpoint singularities such as t^(-1/2) converge: their per-panel error
// decays slower than the panel width, but the total still decays
// geometrically under bisection.
//
// Both rules are open: no node ever lands on a panel endpoint, so integrands
// singular exactly at an endpoint are only probed in the interior.  A
// non-integrable singularity never settles; it runs into the panel budget or
// into a panel too narrow to bisect, and either raises IntegrationError.
// (Expression-based integrands may instead overflow first and raise their
// own EvalError; callers treating divergence as a flag should catch both.)

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "quadcert/interval.hpp"

namespace quadcert {

/// The reference integrator could not converge (non-integrable singularity,
/// panel budget exhausted, or an unsplittably narrow panel).
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simpson's 3-point estimate on [a, b]:
///   (b-a) * [ f(a) + 4 f((a+b)/2) + f(b) ] / 6.
/// Exact for polynomials of degree <= 3.
template <typename F>
double simpson_estimate(F&& f, const Interval& iv) {
  const double fa = f(iv.a);
  const double fm = f(iv.midpoint());
  const double fb = f(iv.b);
  return iv.length() * (fa + 4.0 * fm + fb) / 6.0;
}

struct IntegralResult {
  double value;           // sum of per-panel K15 values
  double error_estimate;  // sum of per-panel |K15 - G7| (<= tol/2 on success)
  int panels;             // number of panels in the final partition
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss-Legendre on [-1, 1].
// Nodes are symmetric; only the non-negative half is stored.  The Gauss
// points are the odd-indexed Kronrod abscissae plus the center.  Correctness
// is pinned by moment tests: K15 integrates degree <= 23 exactly, G7
// degree <= 13.
inline constexpr double kKronrodX[8] = {
    0.9914553711208126392068547, 0.9491079123427585245261897,
    0.8648644233597690727897128, 0.7415311855993944398638648,
    0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0};
inline constexpr double kKronrodW[8] = {
    0.0229353220105292249637320, 0.0630920926299785532907007,
    0.1047900103222501838398763, 0.1406532597155259187451896,
    0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992};
inline constexpr double kGaussW[4] = {
    0.1294849661688696932706114, 0.2797053914892766679014678,
    0.3818300505051189449503698, 0.4179591836734693877551020};

struct Panel {
  double key;  // sanitized error estimate used for ordering and budgeting
  double a, b;
  double k15;
};

// Max-heap order with deterministic tie-breaking on the panel location.
struct PanelLess {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.key != y.key) return x.key < y.key;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }
};

template <typename F>
Panel gk15_panel(F& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = a + half;

  const double f0 = f(mid);
  double k15 = kKronrodW[7] * f0;
  double g7 = kGaussW[3] * f0;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodX[i];
    const double sum = f(mid - dx) + f(mid + dx);
    k15 += kKronrodW[i] * sum;
    if (i % 2 == 1) g7 += kGaussW[i / 2] * sum;
  }
  k15 *= half;
  g7 *= half;

  double err = std::fabs(k15 - g7);
  // Non-finite rule values mean the panel is nowhere near resolved; give it
  // top priority (and a key that keeps the heap ordering well defined).
  if (!std::isfinite(err) || !std::isfinite(k15))
    err = std::numeric_limits<double>::max();
  return {err, a, b, k15};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b] with an absolute
/// error target `tol`.  Throws IntegrationError when the panel budget is
/// exhausted or the worst panel becomes too narrow to bisect (both symptoms
/// of a non-integrable singularity or an unreachable tolerance).
template <typename F>
IntegralResult integrate_adaptive(F&& f, const Interval& iv, double tol,
                                  int max_panels = 1'000'000) {
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw std::invalid_argument("integration tolerance must be positive and finite");

  std::vector<detail::Panel> heap;
  heap.push_back(detail::gk15_panel(f, iv.a, iv.b));
  double total_err = heap.front().key;
  const detail::PanelLess less{};

  while (!(total_err <= 0.5 * tol)) {
    if (static_cast<int>(heap.size()) >= max_panels)
      throw IntegrationError("adaptive integration did not converge (panel budget exhausted)");

    std::pop_heap(heap.begin(), heap.end(), less);
    const detail::Panel worst = heap.back();
    heap.pop_back();

    const double mid = worst.a + 0.5 * (worst.b - worst.a);
    if (mid <= worst.a || mid >= worst.b)
      throw IntegrationError("adaptive integration did not converge (panel too narrow to split)");

    total_err -= worst.key;
    for (const auto& child : {detail::gk15_panel(f, worst.a, mid),
                              detail::gk15_panel(f, mid, worst.b)}) {
      total_err += child.key;
      heap.push_back(child);
      std::push_heap(heap.begin(), heap.end(), less);
    }
    // Guard against drift in the running sum: a non-finite total means some
    // panel is unresolved, which the loop condition already treats as "keep
    // going", so nothing special is needed here.
  }

  // Compensated (Neumaier) summation of the panel values: singular
  // integrands can leave thousands of panels spanning many magnitudes.
  double value = 0.0, comp = 0.0;
  double est = 0.0;
  for (const auto& p : heap) {
    const double t = value + p.k15;
    comp += std::fabs(value) >= std::fabs(p.k15) ? (value - t) + p.k15 : (p.k15 - t) + value;
    value = t;
    est += p.key;
  }
  return {value + comp, est, static_cast<int>(heap.size())};
}

/// Reference integral of f over iv.  `tol` is an absolute error target and
/// must lie in [1e-14, 1e-6]; the refinement loop keeps the summed error
/// estimate at or below tol/2.
template <typename F>
double reference_integral(F&& f, const Interval& iv, double tol) {
  if (!(tol >= 1e-14 && tol <= 1e-6))
    throw std::invalid_argument("reference tolerance must lie in [1e-14, 1e-6]");
  return integrate_adaptive(std::forward<F>(f), iv, tol).value;
}

}  // namespace quadcert
