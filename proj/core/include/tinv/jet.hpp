#pragma once

// Truncated multivariate Taylor arithmetic ("jets") up to order 3.
//
// A Jet carries a value together with all partial derivatives up to its
// order with respect to the N chart coordinates. Arithmetic propagates them
// exactly (up to rounding); nothing here uses finite differences.
//
// A jet with dim() == 0 is a plain constant. Constants combine with any jet
// and never lower the order of a result.

#include <span>
#include <vector>

#include "tinv/expr.hpp"

namespace tinv {

class Jet {
 public:
  static constexpr int kMaxOrder = 3;

  Jet() : Jet(0.0) {}
  Jet(double constant) : coeffs_{constant} {}  // NOLINT: implicit by design of the algebra

  /// The coordinate function x_index at `value`, seeded with d/dx_index = 1.
  static Jet variable(int dim, int index, double value, int order = kMaxOrder);

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  bool is_constant() const noexcept { return dim_ == 0; }

  double value() const noexcept { return coeffs_[0]; }
  double d(int i) const;
  double d(int i, int j) const;
  double d(int i, int j, int k) const;

  /// d/dx_l as a jet of one order less.
  Jet partial(int l) const;
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(const Jet& other);
  Jet& operator/=(const Jet& other);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a);

  /// phi(this) given phi and its first three derivatives at value().
  Jet compose(double f0, double f1, double f2, double f3) const;

 private:
  Jet(int dim, int order);

  std::size_t grad_offset() const noexcept { return 1; }
  std::size_t hess_offset() const noexcept { return 1 + static_cast<std::size_t>(dim_); }
  std::size_t third_offset() const noexcept {
    return 1 + static_cast<std::size_t>(dim_) + static_cast<std::size_t>(dim_ * dim_);
  }
  double& g(int i) { return coeffs_[grad_offset() + i]; }
  double& h(int i, int j) { return coeffs_[hess_offset() + i * dim_ + j]; }
  double& t(int i, int j, int k) {
    return coeffs_[third_offset() + (i * dim_ + j) * dim_ + k];
  }

  int dim_ = 0;
  int order_ = kMaxOrder;
  std::vector<double> coeffs_;
};

Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sqrt(const Jet& x);
Jet pow(const Jet& x, double exponent);

/// Value and partial derivatives up to `order` of `expr` at `point`.
/// Throws DomainError where evaluate() would, and additionally where a
/// requested derivative does not exist (sqrt at 0, ...).
Jet eval_jet(const Expr& expr, std::span<const double> point,
             int order = Jet::kMaxOrder);

}  // namespace tinv
