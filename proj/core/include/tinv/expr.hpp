#pragma once

// Scalar fields over chart coordinates, stored as immutable expression trees.
//
// Grammar (whitespace ignored):
//
//   expr     := term (('+' | '-') term)*
//   term     := factor (('*' | '/') factor)*
//   factor   := '-' factor | primary ('^' exponent)?
//   primary  := number | ident | '(' expr ')' | func '(' expr ')'
//   exponent := '-'? primary ('^' exponent)?      -- must be variable-free
//   func     := sin | cos | ln | exp | sqrt
//
// `^` binds tighter than unary minus (-u^2 == -(u^2)) and chains to the
// right (u^2^3 == u^8). Exponents are folded to a single constant at parse
// time so that differentiation stays total. Adding a function means one new
// UnaryOp, one parser keyword and one derivative table entry in jet.cpp.

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tinv {

/// Coordinate system of an N-dimensional chart (N >= 2).
class Chart {
 public:
  explicit Chart(std::vector<std::string> names);

  int dim() const noexcept { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<int> index_of(std::string_view name) const;

  bool operator==(const Chart&) const = default;

 private:
  std::vector<std::string> names_;
};

enum class UnaryOp { neg, sin, cos, ln, exp, sqrt };
enum class BinaryOp { add, sub, mul, div, pow };

std::string_view name(UnaryOp op) noexcept;

/// Shared handle to an immutable AST node. Copying is cheap; equality is
/// structural.
class Expr {
 public:
  enum class Kind { constant, variable, unary, binary };

  Expr();  // constant 0

  static Expr constant(double value);
  static Expr variable(int index);
  static Expr unary(UnaryOp op, Expr operand);
  /// Throws std::invalid_argument for pow with a non-constant exponent.
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);

  Kind kind() const noexcept;
  double value() const;
  int variable_index() const;
  UnaryOp unary_op() const;
  BinaryOp binary_op() const;
  const Expr& operand() const;
  const Expr& lhs() const;
  const Expr& rhs() const;

  bool is_zero() const noexcept;
  /// Largest variable index referenced, or -1.
  int max_variable_index() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

Expr parse(std::string_view text, const Chart& chart);

/// Inverse of parse: parse(print(e)) == e for every AST parse can produce.
std::string print(const Expr& expr, const Chart& chart);

/// Tree-walking evaluation. Throws DomainError naming the offending
/// subexpression.
double evaluate(const Expr& expr, std::span<const double> point);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

namespace detail {

/// Description of the domain violation of `op` at `x` when derivatives up to
/// `order` are requested, or nullopt if the point is admissible.
std::optional<std::string> unary_domain_violation(UnaryOp op, double x,
                                                  int order);
std::optional<std::string> pow_domain_violation(double base, double exponent,
                                                int order);

/// Text used in domain-error messages for a subexpression; variables are
/// written x0, x1, ...
std::string describe(const Expr& expr);

}  // namespace detail
}  // namespace tinv
