#pragma once

// hspec.hpp -- the weight function h : (0,1) -> (0,inf) that parameterizes
// the h-convexity hypothesis and the weighted kernel integrals.
//
// Four built-in families cover the classical convexity classes:
//
//   identity    h(t) = t      ordinary convex functions
//   one         h(t) = 1      P-functions
//   reciprocal  h(t) = 1/t    Godunova-Levin class Q
//   power(s)    h(t) = t^s    s-convex functions (second sense), s in (0,1]
//
// plus `custom` for any positive expression in t.  Built-ins carry exact
// structural knowledge (e.g. that the half-interval integral of 1/t
// diverges), which the bound catalog uses instead of probing numerically.

#include <charconv>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "quadcert/expr.hpp"

namespace quadcert {

class HSpec {
 public:
  enum class Family { Identity, One, Reciprocal, Power, Custom };

  static HSpec identity() { return HSpec(Family::Identity); }
  static HSpec one() { return HSpec(Family::One); }
  static HSpec reciprocal() { return HSpec(Family::Reciprocal); }

  static HSpec power(double s) {
    if (!(s > 0.0 && s <= 1.0))
      throw std::invalid_argument("power weight requires s in (0, 1]");
    if (s == 1.0) return identity();  // t^1 and t are the same weight
    HSpec h(Family::Power);
    h.s_ = s;
    return h;
  }

  /// Wrap an arbitrary expression in the variable t.  Positivity on (0,1)
  /// is enforced by sampling; a weight that is zero, negative, or
  /// non-finite at any probe is rejected.
  static HSpec custom(Expr e) {
    HSpec h(Family::Custom);
    h.expr_ = std::move(e);
    for (int k = 1; k < 64; ++k) {
      const double t = k / 64.0;
      double v;
      try {
        v = h.expr_->evaluate(t);
      } catch (const EvalError& err) {
        throw std::invalid_argument(std::string("custom weight not evaluable on (0,1): ") +
                                    err.what());
      }
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument("custom weight must be positive and finite on (0,1)");
    }
    return h;
  }

  /// Parse a weight from CLI-style text.  Builtin shapes are recognized
  /// structurally, so "t", "1", "1/t", "t^0.5", and "t^1" all map onto their
  /// families; anything else becomes a custom weight.
  static HSpec parse(std::string_view text) {
    const Expr e = Expr::parse(text, "t");
    const std::string printed = e.to_string();
    if (printed == "t") return identity();
    if (printed == "1") return one();
    if (printed == "1/t") return reciprocal();
    if (printed.size() > 2 && printed.rfind("t^", 0) == 0) {
      // A bare power t^s with s in (0,1] is the s-convexity weight.
      double s = 0.0;
      const char* first = printed.data() + 2;
      const char* last = printed.data() + printed.size();
      auto res = std::from_chars(first, last, s, std::chars_format::general);
      if (res.ec == std::errc() && res.ptr == last && s > 0.0 && s <= 1.0)
        return power(s);
    }
    return custom(e);
  }

  double operator()(double t) const {
    switch (family_) {
      case Family::Identity: return t;
      case Family::One: return 1.0;
      case Family::Reciprocal:
        if (t == 0.0) throw EvalError("weight 1/t is singular at t = 0");
        return 1.0 / t;
      case Family::Power: return std::pow(t, s_);
      case Family::Custom: return expr_->evaluate(t);
    }
    throw EvalError("corrupt weight family");
  }

  Family family() const noexcept { return family_; }

  /// Exponent for the Power family (1 for Identity).
  double power_exponent() const noexcept { return family_ == Family::Identity ? 1.0 : s_; }

  bool evaluable_at(double t) const noexcept {
    try {
      return std::isfinite((*this)(t));
    } catch (...) {
      return false;
    }
  }

  /// True when the half-interval integral of h itself is known to diverge
  /// (structural knowledge, no quadrature involved).
  bool known_h0_divergent() const noexcept { return family_ == Family::Reciprocal; }

  std::string name() const {
    switch (family_) {
      case Family::Identity: return "t";
      case Family::One: return "1";
      case Family::Reciprocal: return "1/t";
      case Family::Power: {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof(buf), s_);
        return "t^" + std::string(buf, res.ptr);
      }
      case Family::Custom: return expr_->to_string();
    }
    return "?";
  }

 private:
  explicit HSpec(Family f) : family_(f) {}

  Family family_;
  double s_ = 1.0;
  std::optional<Expr> expr_;
};

}  // namespace quadcert
