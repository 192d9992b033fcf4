#pragma once

// expr.hpp -- immutable expression trees over a single free variable.
//
// Provides parsing (recursive descent), pointwise evaluation, symbolic
// differentiation up to fourth order, and printing that round-trips through
// the parser.  Trees are persistent: nodes are shared_ptr<const ExprNode>,
// so differentiation reuses subtrees instead of copying them.
//
// Grammar (operator precedence low to high; +,-,*,/ are left-associative):
//
//   expression := term    { ('+' | '-') term }
//   term       := unary   { ('*' | '/') unary }
//   unary      := '-' unary | power
//   power      := primary { '^' exponent }
//   primary    := number | variable | function '(' expression ')'
//               | '(' expression ')'
//   exponent   := ['-'] number | '(' ['-'] number ')'
//
// Exponents must be numeric literals: the derivative of u^c needs c to be a
// constant, and rejecting general exponents at parse time keeps every tree
// differentiable by construction (except for 'abs', see below).
//
// Functions: sin, cos, exp, log, sqrt, abs.  'abs' can be evaluated but not
// differentiated; asking for the derivative of a tree containing it throws.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "quadcert/interval.hpp"

namespace quadcert {

/// Syntax error, carrying the byte offset into the source text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Domain error during evaluation (division by zero, log of a non-positive
/// value, overflow to a non-finite result, ...).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested a symbolic derivative of a tree with no derivative (abs node).
class DifferentiationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExprKind { Number, Variable, Add, Sub, Mul, Div, Pow, Neg, Call };
enum class Builtin { Sin, Cos, Exp, Log, Sqrt, Abs };

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ExprKind kind;
  double number = 0.0;        // Number payload; for Pow, the literal exponent
  Builtin fn = Builtin::Sin;  // Call payload
  ExprNodePtr a;              // left child / only child of Neg, Call, Pow
  ExprNodePtr b;              // right child of binary nodes
};

namespace detail {

inline ExprNodePtr make_node(ExprKind k, double num, Builtin fn,
                             ExprNodePtr a, ExprNodePtr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->number = num;
  n->fn = fn;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

inline bool is_number(const ExprNodePtr& n, double v) {
  return n->kind == ExprKind::Number && n->number == v;
}

inline ExprNodePtr num_node(double v) {
  return make_node(ExprKind::Number, v, Builtin::Sin, nullptr, nullptr);
}
inline ExprNodePtr var_node() {
  return make_node(ExprKind::Variable, 0.0, Builtin::Sin, nullptr, nullptr);
}

// Smart constructors fold the identities of 0 and 1 so derivatives stay
// compact.  Folding is purely structural and fully deterministic: the same
// inputs always produce the same tree.
inline ExprNodePtr add_node(ExprNodePtr l, ExprNodePtr r) {
  if (is_number(l, 0.0)) return r;
  if (is_number(r, 0.0)) return l;
  return make_node(ExprKind::Add, 0.0, Builtin::Sin, std::move(l), std::move(r));
}

inline ExprNodePtr neg_node(ExprNodePtr c) {
  if (c->kind == ExprKind::Number) return num_node(-c->number);
  return make_node(ExprKind::Neg, 0.0, Builtin::Sin, std::move(c), nullptr);
}

inline ExprNodePtr sub_node(ExprNodePtr l, ExprNodePtr r) {
  if (is_number(r, 0.0)) return l;
  if (is_number(l, 0.0)) return neg_node(std::move(r));
  return make_node(ExprKind::Sub, 0.0, Builtin::Sin, std::move(l), std::move(r));
}

inline ExprNodePtr mul_node(ExprNodePtr l, ExprNodePtr r) {
  if (is_number(l, 0.0) || is_number(r, 0.0)) return num_node(0.0);
  if (is_number(l, 1.0)) return r;
  if (is_number(r, 1.0)) return l;
  return make_node(ExprKind::Mul, 0.0, Builtin::Sin, std::move(l), std::move(r));
}

inline ExprNodePtr div_node(ExprNodePtr l, ExprNodePtr r) {
  if (is_number(l, 0.0)) return num_node(0.0);
  if (is_number(r, 1.0)) return l;
  return make_node(ExprKind::Div, 0.0, Builtin::Sin, std::move(l), std::move(r));
}

inline ExprNodePtr pow_node(ExprNodePtr base, double e) {
  if (e == 0.0) return num_node(1.0);
  if (e == 1.0) return base;
  return make_node(ExprKind::Pow, e, Builtin::Sin, std::move(base), nullptr);
}

inline ExprNodePtr call_node(Builtin fn, ExprNodePtr arg) {
  return make_node(ExprKind::Call, 0.0, fn, std::move(arg), nullptr);
}

inline const char* builtin_name(Builtin fn) {
  switch (fn) {
    case Builtin::Sin:  return "sin";
    case Builtin::Cos:  return "cos";
    case Builtin::Exp:  return "exp";
    case Builtin::Log:  return "log";
    case Builtin::Sqrt: return "sqrt";
    case Builtin::Abs:  return "abs";
  }
  return "?";
}

inline std::optional<Builtin> builtin_by_name(std::string_view s) {
  if (s == "sin") return Builtin::Sin;
  if (s == "cos") return Builtin::Cos;
  if (s == "exp") return Builtin::Exp;
  if (s == "log") return Builtin::Log;
  if (s == "sqrt") return Builtin::Sqrt;
  if (s == "abs") return Builtin::Abs;
  return std::nullopt;
}

}  // namespace detail

/// An immutable expression in one free variable.  Copies are cheap (shared
/// root pointer).  Build one with parse()/number()/variable() and the
/// arithmetic operators; all constructed trees have finite literals.
class Expr {
 public:
  /// Parse `text` as an expression in the free variable `variable`.
  /// Throws ParseError (with byte offset) on any syntax problem.
  static Expr parse(std::string_view text, std::string_view variable = "x");

  static Expr number(double v) {
    if (!std::isfinite(v))
      throw std::invalid_argument("Expr::number requires a finite value");
    return Expr(detail::num_node(v), "");
  }
  static Expr variable(std::string name = "x") {
    return Expr(detail::var_node(), std::move(name));
  }
  static Expr call(Builtin fn, const Expr& arg) {
    return Expr(detail::call_node(fn, arg.root_), arg.var_);
  }

  /// Evaluate at x.  Throws EvalError on domain problems or when any
  /// intermediate result is non-finite.
  double evaluate(double x) const { return eval_node(root_.get(), x); }

  /// Symbolic derivative.  `order` must be in [1, 4].  Throws
  /// DifferentiationError if the tree contains an abs node.
  Expr derivative(int order = 1) const {
    if (order < 1 || order > 4)
      throw std::invalid_argument("derivative order must be in [1, 4]");
    ExprNodePtr d = root_;
    for (int i = 0; i < order; ++i) d = diff_node(d);
    return Expr(std::move(d), var_);
  }

  /// Render to text.  The output reparses to a structurally identical tree,
  /// and printing is a fixed point: parse(to_string()) prints the same text.
  std::string to_string() const {
    std::string out;
    print_node(root_.get(), out);
    return out;
  }

  std::size_t node_count() const noexcept { return count_nodes(root_.get()); }
  bool contains_abs() const noexcept { return has_abs(root_.get()); }
  const std::string& variable_name() const noexcept { return var_; }

  /// Structural equality: same shape, identical literal values.
  bool same_structure(const Expr& other) const noexcept {
    return nodes_equal(root_.get(), other.root_.get());
  }

  friend Expr operator+(const Expr& l, const Expr& r) {
    return Expr(detail::add_node(l.root_, r.root_), merged_var(l, r));
  }
  friend Expr operator-(const Expr& l, const Expr& r) {
    return Expr(detail::sub_node(l.root_, r.root_), merged_var(l, r));
  }
  friend Expr operator*(const Expr& l, const Expr& r) {
    return Expr(detail::mul_node(l.root_, r.root_), merged_var(l, r));
  }
  friend Expr operator/(const Expr& l, const Expr& r) {
    return Expr(detail::div_node(l.root_, r.root_), merged_var(l, r));
  }
  friend Expr operator-(const Expr& e) {
    return Expr(detail::neg_node(e.root_), e.var_);
  }
  /// Raise to a literal exponent (the only exponent form the grammar allows).
  Expr pow(double exponent) const {
    if (!std::isfinite(exponent))
      throw std::invalid_argument("exponent must be finite");
    return Expr(detail::pow_node(root_, exponent), var_);
  }

 private:
  Expr(ExprNodePtr root, std::string var)
      : root_(std::move(root)), var_(std::move(var)) {}

  static std::string merged_var(const Expr& l, const Expr& r) {
    if (l.var_.empty()) return r.var_;
    if (r.var_.empty() || l.var_ == r.var_) return l.var_;
    throw std::invalid_argument("cannot combine expressions with different free variables ('" +
                                l.var_ + "' vs '" + r.var_ + "')");
  }

  // ---- evaluation ----

  static void eval_fail(const char* what, double x) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s (while evaluating at x = %.17g)", what, x);
    throw EvalError(buf);
  }

  static double finite_or_fail(double v, const char* what, double x) {
    if (!std::isfinite(v)) eval_fail(what, x);
    return v;
  }

  static double eval_node(const ExprNode* n, double x) {
    switch (n->kind) {
      case ExprKind::Number:   return n->number;
      case ExprKind::Variable: return x;
      case ExprKind::Add:
        return finite_or_fail(eval_node(n->a.get(), x) + eval_node(n->b.get(), x),
                              "addition overflowed", x);
      case ExprKind::Sub:
        return finite_or_fail(eval_node(n->a.get(), x) - eval_node(n->b.get(), x),
                              "subtraction overflowed", x);
      case ExprKind::Mul:
        return finite_or_fail(eval_node(n->a.get(), x) * eval_node(n->b.get(), x),
                              "multiplication overflowed", x);
      case ExprKind::Div: {
        const double den = eval_node(n->b.get(), x);
        if (den == 0.0) eval_fail("division by zero", x);
        return finite_or_fail(eval_node(n->a.get(), x) / den, "division overflowed", x);
      }
      case ExprKind::Pow: {
        const double base = eval_node(n->a.get(), x);
        return finite_or_fail(std::pow(base, n->number),
                              "power produced a non-finite value", x);
      }
      case ExprKind::Neg:
        return -eval_node(n->a.get(), x);
      case ExprKind::Call: {
        const double u = eval_node(n->a.get(), x);
        switch (n->fn) {
          case Builtin::Sin:  return std::sin(u);
          case Builtin::Cos:  return std::cos(u);
          case Builtin::Exp:
            return finite_or_fail(std::exp(u), "exp overflowed", x);
          case Builtin::Log:
            if (u <= 0.0) eval_fail("log of a non-positive value", x);
            return std::log(u);
          case Builtin::Sqrt:
            if (u < 0.0) eval_fail("sqrt of a negative value", x);
            return std::sqrt(u);
          case Builtin::Abs:  return std::fabs(u);
        }
        break;
      }
    }
    throw EvalError("corrupt expression node");
  }

  // ---- differentiation ----

  static ExprNodePtr diff_node(const ExprNodePtr& n) {
    using namespace detail;
    switch (n->kind) {
      case ExprKind::Number:   return num_node(0.0);
      case ExprKind::Variable: return num_node(1.0);
      case ExprKind::Add:      return add_node(diff_node(n->a), diff_node(n->b));
      case ExprKind::Sub:      return sub_node(diff_node(n->a), diff_node(n->b));
      case ExprKind::Mul:
        return add_node(mul_node(diff_node(n->a), n->b),
                        mul_node(n->a, diff_node(n->b)));
      case ExprKind::Div:
        // (u/v)' = (u'v - uv') / v^2
        return div_node(sub_node(mul_node(diff_node(n->a), n->b),
                                 mul_node(n->a, diff_node(n->b))),
                        pow_node(n->b, 2.0));
      case ExprKind::Pow:
        // (u^c)' = c * u^(c-1) * u'
        return mul_node(mul_node(num_node(n->number), pow_node(n->a, n->number - 1.0)),
                        diff_node(n->a));
      case ExprKind::Neg:      return neg_node(diff_node(n->a));
      case ExprKind::Call: {
        const ExprNodePtr du = diff_node(n->a);
        switch (n->fn) {
          case Builtin::Sin:  return mul_node(call_node(Builtin::Cos, n->a), du);
          case Builtin::Cos:  return neg_node(mul_node(call_node(Builtin::Sin, n->a), du));
          case Builtin::Exp:  return mul_node(call_node(Builtin::Exp, n->a), du);
          case Builtin::Log:  return div_node(du, n->a);
          case Builtin::Sqrt:
            return div_node(du, mul_node(num_node(2.0), call_node(Builtin::Sqrt, n->a)));
          case Builtin::Abs:
            throw DifferentiationError("'abs' has no symbolic derivative");
        }
        break;
      }
    }
    throw DifferentiationError("corrupt expression node");
  }

  // ---- printing ----

  // Precedence for parenthesisation. Negative literals print with a leading
  // '-' and therefore bind like a unary minus.
  static int prec(const ExprNode* n) {
    switch (n->kind) {
      case ExprKind::Add:
      case ExprKind::Sub: return 1;
      case ExprKind::Mul:
      case ExprKind::Div: return 2;
      case ExprKind::Neg: return 3;
      case ExprKind::Number: return n->number < 0.0 ? 3 : 6;
      case ExprKind::Pow: return 4;
      default: return 6;  // Variable, Call
    }
  }

  static void append_number(double v, std::string& out) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
  }

  void print_child(const ExprNode* child, std::string& out, bool needs_parens) const {
    if (needs_parens) out.push_back('(');
    print_node(child, out);
    if (needs_parens) out.push_back(')');
  }

  void print_node(const ExprNode* n, std::string& out) const {
    const int p = prec(n);
    switch (n->kind) {
      case ExprKind::Number:
        append_number(n->number, out);
        return;
      case ExprKind::Variable:
        out.append(var_.empty() ? "x" : var_);
        return;
      case ExprKind::Add:
      case ExprKind::Sub:
      case ExprKind::Mul:
      case ExprKind::Div: {
        const char op = n->kind == ExprKind::Add ? '+'
                      : n->kind == ExprKind::Sub ? '-'
                      : n->kind == ExprKind::Mul ? '*' : '/';
        print_child(n->a.get(), out, prec(n->a.get()) < p);
        out.push_back(op);
        // Right operand needs parens at equal precedence too: a-(b-c), a*(b/c).
        print_child(n->b.get(), out, prec(n->b.get()) <= p);
        return;
      }
      case ExprKind::Neg:
        out.push_back('-');
        print_child(n->a.get(), out, prec(n->a.get()) <= 3);
        return;
      case ExprKind::Pow:
        print_child(n->a.get(), out, prec(n->a.get()) < 4);
        out.push_back('^');
        append_number(n->number, out);
        return;
      case ExprKind::Call:
        out.append(detail::builtin_name(n->fn));
        out.push_back('(');
        print_node(n->a.get(), out);
        out.push_back(')');
        return;
    }
  }

  // ---- misc traversals ----

  static std::size_t count_nodes(const ExprNode* n) noexcept {
    if (n == nullptr) return 0;
    return 1 + count_nodes(n->a.get()) + count_nodes(n->b.get());
  }

  static bool has_abs(const ExprNode* n) noexcept {
    if (n == nullptr) return false;
    if (n->kind == ExprKind::Call && n->fn == Builtin::Abs) return true;
    return has_abs(n->a.get()) || has_abs(n->b.get());
  }

  static bool nodes_equal(const ExprNode* l, const ExprNode* r) noexcept {
    if (l == r) return true;
    if (l == nullptr || r == nullptr) return false;
    if (l->kind != r->kind) return false;
    if (l->kind == ExprKind::Number || l->kind == ExprKind::Pow) {
      if (l->number != r->number) return false;
    }
    if (l->kind == ExprKind::Call && l->fn != r->fn) return false;
    return nodes_equal(l->a.get(), r->a.get()) && nodes_equal(l->b.get(), r->b.get());
  }

  ExprNodePtr root_;
  std::string var_;

  friend class Parser;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
 public:
  Parser(std::string_view text, std::string_view variable)
      : text_(text), var_(variable) {}

  Expr run() {
    ExprNodePtr root = parse_expression(0);
    skip_ws();
    if (pos_ != text_.size())
      fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return Expr(std::move(root), std::string(var_));
  }

 private:
  // Nesting cap so that a pathological input cannot overflow the C++ stack.
  // Each grammar layer consumes a few levels, so this allows ~400 nested parens.
  static constexpr int kMaxDepth = 2000;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool consume(char c) {
    if (!peek_is(c)) return false;
    ++pos_;
    return true;
  }

  ExprNodePtr parse_expression(int depth) {
    check_depth(depth);
    ExprNodePtr lhs = parse_term(depth + 1);
    for (;;) {
      if (consume('+'))      lhs = detail::add_node(std::move(lhs), parse_term(depth + 1));
      else if (consume('-')) lhs = detail::sub_node(std::move(lhs), parse_term(depth + 1));
      else return lhs;
    }
  }

  ExprNodePtr parse_term(int depth) {
    check_depth(depth);
    ExprNodePtr lhs = parse_unary(depth + 1);
    for (;;) {
      if (consume('*'))      lhs = detail::mul_node(std::move(lhs), parse_unary(depth + 1));
      else if (consume('/')) lhs = detail::div_node(std::move(lhs), parse_unary(depth + 1));
      else return lhs;
    }
  }

  ExprNodePtr parse_unary(int depth) {
    check_depth(depth);
    if (consume('-')) return detail::neg_node(parse_unary(depth + 1));
    return parse_power(depth + 1);
  }

  ExprNodePtr parse_power(int depth) {
    check_depth(depth);
    ExprNodePtr base = parse_primary(depth + 1);
    while (consume('^')) base = detail::pow_node(std::move(base), parse_exponent());
    return base;
  }

  ExprNodePtr parse_primary(int depth) {
    check_depth(depth);
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];

    if (c == '(') {
      ++pos_;
      ExprNodePtr inner = parse_expression(depth + 1);
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    if ((c >= '0' && c <= '9') || c == '.') return detail::num_node(parse_number());
    if (is_ident_start(c)) {
      const std::string_view ident = parse_identifier();
      if (ident == var_) return detail::var_node();
      if (auto fn = detail::builtin_by_name(ident)) {
        if (!consume('(')) fail("function '" + std::string(ident) + "' must be followed by '('");
        ExprNodePtr arg = parse_expression(depth + 1);
        if (!consume(')')) fail("expected ')' after argument of '" + std::string(ident) + "'");
        return detail::call_node(*fn, std::move(arg));
      }
      fail("unknown identifier '" + std::string(ident) + "' (free variable is '" +
           std::string(var_) + "')");
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  // exponent := ['-'] number | '(' ['-'] number ')'
  double parse_exponent() {
    skip_ws();
    const bool parens = consume('(');
    double sign = 1.0;
    if (consume('-')) sign = -1.0;
    skip_ws();
    if (pos_ >= text_.size() || !((text_[pos_] >= '0' && text_[pos_] <= '9') || text_[pos_] == '.'))
      fail("exponent must be a numeric literal");
    const double value = sign * parse_number();
    if (parens && !consume(')')) fail("expected ')' after exponent");
    return value;
  }

  double parse_number() {
    double value = 0.0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto res = std::from_chars(begin, end, value, std::chars_format::general);
    if (res.ec == std::errc::result_out_of_range) fail("numeric literal out of range");
    if (res.ec != std::errc() || res.ptr == begin) fail("malformed numeric literal");
    pos_ += static_cast<std::size_t>(res.ptr - begin);
    return value;
  }

  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
  }

  std::string_view parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  void check_depth(int depth) const {
    if (depth > kMaxDepth) fail("expression nested too deeply");
  }

  std::string_view text_;
  std::string_view var_;
  std::size_t pos_ = 0;
};

inline Expr Expr::parse(std::string_view text, std::string_view variable) {
  return Parser(text, variable).run();
}

/// Free-function spellings of the core operations.
inline Expr parse_expr(std::string_view text, std::string_view variable = "x") {
  return Expr::parse(text, variable);
}
inline Expr differentiate(const Expr& e, int order = 1) { return e.derivative(order); }
inline double evaluate(const Expr& e, double x) { return e.evaluate(x); }

// ---------------------------------------------------------------------------
// FunctionModel
// ---------------------------------------------------------------------------

/// An expression bundled with lazily computed symbolic derivatives f', ...,
/// f''''.  Derivatives are built once per underlying function (thread-safe)
/// and shared across copies.  The optional domain hint records where the
/// model is meant to be evaluated; it is metadata, not an enforced fence.
class FunctionModel {
 public:
  explicit FunctionModel(Expr f, std::optional<Interval> domain_hint = std::nullopt)
      : f_(std::move(f)),
        domain_(domain_hint),
        cache_(std::make_shared<Cache>()) {}

  static FunctionModel parse(std::string_view text, std::string_view variable = "x",
                             std::optional<Interval> domain_hint = std::nullopt) {
    return FunctionModel(Expr::parse(text, variable), domain_hint);
  }

  const Expr& expr() const noexcept { return f_; }
  const std::optional<Interval>& domain_hint() const noexcept { return domain_; }

  double operator()(double x) const { return f_.evaluate(x); }

  /// The `order`-th symbolic derivative, order in [1, 4].
  const Expr& derivative(int order) const {
    if (order < 1 || order > 4)
      throw std::invalid_argument("derivative order must be in [1, 4]");
    for (int i = 1; i <= order; ++i) {
      std::call_once(cache_->built[i - 1], [this, i] {
        const Expr& prev = (i == 1) ? f_ : *cache_->deriv[i - 2];
        cache_->deriv[i - 1].emplace(prev.derivative());
      });
    }
    return *cache_->deriv[order - 1];
  }

  double derivative_at(int order, double x) const { return derivative(order).evaluate(x); }

 private:
  struct Cache {
    std::array<std::once_flag, 4> built;
    std::array<std::optional<Expr>, 4> deriv;
  };

  Expr f_;
  std::optional<Interval> domain_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace quadcert
