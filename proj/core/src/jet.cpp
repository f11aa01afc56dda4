#include "tinv/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tinv/error.hpp"

namespace tinv {
namespace {

std::size_t jet_size(int dim, int order) {
  std::size_t size = 1;
  std::size_t term = 1;
  for (int k = 1; k <= order; ++k) {
    term *= static_cast<std::size_t>(dim);
    size += term;
  }
  return size;
}

void check_index(int i, int dim) {
  if (i < 0 || i >= dim) throw std::out_of_range("jet derivative index out of range");
}

}  // namespace

Jet::Jet(int dim, int order)
    : dim_(dim), order_(order), coeffs_(jet_size(dim, order), 0.0) {}

Jet Jet::variable(int dim, int index, double value, int order) {
  if (dim < 1) throw std::invalid_argument("jet dimension must be positive");
  if (order < 0 || order > kMaxOrder) throw std::invalid_argument("jet order must be in 0..3");
  check_index(index, dim);
  Jet r(dim, order);
  r.coeffs_[0] = value;
  if (order >= 1) r.g(index) = 1.0;
  return r;
}

double Jet::d(int i) const {
  if (is_constant()) return 0.0;
  check_index(i, dim_);
  if (order_ < 1) throw std::logic_error("jet carries no first derivatives");
  return coeffs_[grad_offset() + i];
}

double Jet::d(int i, int j) const {
  if (is_constant()) return 0.0;
  check_index(i, dim_);
  check_index(j, dim_);
  if (order_ < 2) throw std::logic_error("jet carries no second derivatives");
  return coeffs_[hess_offset() + i * dim_ + j];
}

double Jet::d(int i, int j, int k) const {
  if (is_constant()) return 0.0;
  check_index(i, dim_);
  check_index(j, dim_);
  check_index(k, dim_);
  if (order_ < 3) throw std::logic_error("jet carries no third derivatives");
  return coeffs_[third_offset() + (i * dim_ + j) * dim_ + k];
}

Jet Jet::partial(int l) const {
  if (is_constant()) return Jet(0.0);
  check_index(l, dim_);
  if (order_ < 1) throw std::logic_error("cannot differentiate an order-0 jet");
  Jet r(dim_, order_ - 1);
  r.coeffs_[0] = coeffs_[grad_offset() + l];
  const int n = dim_;
  if (r.order_ >= 1) {
    for (int i = 0; i < n; ++i) r.g(i) = coeffs_[hess_offset() + l * n + i];
  }
  if (r.order_ >= 2) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.h(i, j) = coeffs_[third_offset() + (l * n + i) * n + j];
  }
  return r;
}

Jet Jet::truncated(int order) const {
  if (is_constant() || order >= order_) return *this;
  Jet r = *this;
  r.order_ = std::max(order, 0);
  r.coeffs_.resize(jet_size(dim_, r.order_));
  return r;
}

Jet& Jet::operator+=(const Jet& other) {
  if (other.is_constant()) {
    coeffs_[0] += other.coeffs_[0];
    return *this;
  }
  if (is_constant()) {
    const double c = coeffs_[0];
    *this = other;
    coeffs_[0] += c;
    return *this;
  }
  if (dim_ != other.dim_) throw std::invalid_argument("jet dimension mismatch");
  if (other.order_ < order_) *this = truncated(other.order_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& other) { return *this += -other; }

Jet operator-(const Jet& a) {
  Jet r = a;
  for (double& c : r.coeffs_) c = -c;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  if (a.is_constant() || b.is_constant()) {
    const bool a_const = a.is_constant();
    Jet r = a_const ? b : a;
    const double s = a_const ? a.value() : b.value();
    for (double& c : r.coeffs_) c *= s;
    return r;
  }
  if (a.dim_ != b.dim_) throw std::invalid_argument("jet dimension mismatch");
  const int n = a.dim_;
  const int order = std::min(a.order_, b.order_);
  Jet r(n, order);
  const double a0 = a.coeffs_[0];
  const double b0 = b.coeffs_[0];
  r.coeffs_[0] = a0 * b0;
  if (order < 1) return r;
  const double* ag = a.coeffs_.data() + a.grad_offset();
  const double* bg = b.coeffs_.data() + b.grad_offset();
  for (int i = 0; i < n; ++i) r.g(i) = ag[i] * b0 + a0 * bg[i];
  if (order < 2) return r;
  const double* ah = a.coeffs_.data() + a.hess_offset();
  const double* bh = b.coeffs_.data() + b.hess_offset();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r.h(i, j) = ah[i * n + j] * b0 + ag[i] * bg[j] + ag[j] * bg[i] + a0 * bh[i * n + j];
  if (order < 3) return r;
  const double* at = a.coeffs_.data() + a.third_offset();
  const double* bt = b.coeffs_.data() + b.third_offset();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const int ijk = (i * n + j) * n + k;
        r.t(i, j, k) = at[ijk] * b0 + a0 * bt[ijk] +
                       ah[i * n + j] * bg[k] + ah[i * n + k] * bg[j] + ah[j * n + k] * bg[i] +
                       ag[i] * bh[j * n + k] + ag[j] * bh[i * n + k] + ag[k] * bh[i * n + j];
      }
  return r;
}

Jet& Jet::operator*=(const Jet& other) { return *this = *this * other; }

Jet Jet::compose(double f0, double f1, double f2, double f3) const {
  if (is_constant()) return Jet(f0);
  const int n = dim_;
  Jet r(n, order_);
  r.coeffs_[0] = f0;
  if (order_ < 1) return r;
  const double* ag = coeffs_.data() + grad_offset();
  for (int i = 0; i < n; ++i) r.g(i) = f1 * ag[i];
  if (order_ < 2) return r;
  const double* ah = coeffs_.data() + hess_offset();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.h(i, j) = f1 * ah[i * n + j] + f2 * ag[i] * ag[j];
  if (order_ < 3) return r;
  const double* at = coeffs_.data() + third_offset();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        r.t(i, j, k) = f1 * at[(i * n + j) * n + k] +
                       f2 * (ah[i * n + j] * ag[k] + ah[i * n + k] * ag[j] + ah[j * n + k] * ag[i]) +
                       f3 * ag[i] * ag[j] * ag[k];
      }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  const double x = b.value();
  if (x == 0.0) throw DomainError("domain error: division by zero");
  if (b.is_constant()) return a * Jet(1.0 / x);
  const double inv = 1.0 / x;
  return a * b.compose(inv, -inv * inv, 2.0 * inv * inv * inv, -6.0 * inv * inv * inv * inv);
}

Jet& Jet::operator/=(const Jet& other) { return *this = *this / other; }

Jet sin(const Jet& x) {
  const double s = std::sin(x.value());
  const double c = std::cos(x.value());
  return x.compose(s, c, -s, -c);
}

Jet cos(const Jet& x) {
  const double s = std::sin(x.value());
  const double c = std::cos(x.value());
  return x.compose(c, -s, -c, s);
}

Jet exp(const Jet& x) {
  const double e = std::exp(x.value());
  return x.compose(e, e, e, e);
}

Jet log(const Jet& x) {
  const double v = x.value();
  if (auto bad = detail::unary_domain_violation(UnaryOp::ln, v, x.order())) {
    throw DomainError("domain error: " + *bad);
  }
  const double inv = 1.0 / v;
  return x.compose(std::log(v), inv, -inv * inv, 2.0 * inv * inv * inv);
}

Jet sqrt(const Jet& x) {
  const double v = x.value();
  if (auto bad = detail::unary_domain_violation(UnaryOp::sqrt, v,
                                                x.is_constant() ? 0 : x.order())) {
    throw DomainError("domain error: " + *bad);
  }
  const double s = std::sqrt(v);
  if (x.is_constant() || x.order() == 0) return x.compose(s, 0.0, 0.0, 0.0);
  return x.compose(s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v));
}

Jet pow(const Jet& x, double p) {
  const double v = x.value();
  const int order = x.is_constant() ? 0 : x.order();
  if (auto bad = detail::pow_domain_violation(v, p, order)) {
    throw DomainError("domain error: " + *bad);
  }
  std::array<double, 4> f{};
  double coeff = 1.0;
  for (int k = 0; k <= std::min(order, 3); ++k) {
    if (k > 0) coeff *= p - (k - 1);
    f[static_cast<std::size_t>(k)] = coeff == 0.0 ? 0.0 : coeff * std::pow(v, p - k);
  }
  return x.compose(f[0], f[1], f[2], f[3]);
}

namespace {

[[noreturn]] void jet_domain_fail(const std::string& what, const Expr& at) {
  throw DomainError("domain error: " + what + " in '" + detail::describe(at) + "'");
}

Jet eval_jet_node(const Expr& e, std::span<const double> x, int order) {
  Jet r;
  switch (e.kind()) {
    case Expr::Kind::constant:
      return Jet(e.value());
    case Expr::Kind::variable: {
      const int i = e.variable_index();
      if (static_cast<std::size_t>(i) >= x.size()) {
        throw std::invalid_argument("point has fewer coordinates than the expression uses");
      }
      return Jet::variable(static_cast<int>(x.size()), i, x[static_cast<std::size_t>(i)], order);
    }
    case Expr::Kind::unary: {
      const Jet a = eval_jet_node(e.operand(), x, order);
      if (auto bad = detail::unary_domain_violation(e.unary_op(), a.value(),
                                                    a.is_constant() ? 0 : a.order())) {
        jet_domain_fail(*bad, e);
      }
      switch (e.unary_op()) {
        case UnaryOp::neg: r = -a; break;
        case UnaryOp::sin: r = sin(a); break;
        case UnaryOp::cos: r = cos(a); break;
        case UnaryOp::ln: r = log(a); break;
        case UnaryOp::exp: r = exp(a); break;
        case UnaryOp::sqrt: r = sqrt(a); break;
      }
      break;
    }
    case Expr::Kind::binary: {
      const Jet a = eval_jet_node(e.lhs(), x, order);
      if (e.binary_op() == BinaryOp::pow) {
        const double p = e.rhs().value();
        if (auto bad = detail::pow_domain_violation(a.value(), p,
                                                    a.is_constant() ? 0 : a.order())) {
          jet_domain_fail(*bad, e);
        }
        r = pow(a, p);
        break;
      }
      const Jet b = eval_jet_node(e.rhs(), x, order);
      switch (e.binary_op()) {
        case BinaryOp::add: r = a + b; break;
        case BinaryOp::sub: r = a - b; break;
        case BinaryOp::mul: r = a * b; break;
        case BinaryOp::div:
          if (b.value() == 0.0) jet_domain_fail("division by zero", e);
          r = a / b;
          break;
        case BinaryOp::pow: break;
      }
      break;
    }
  }
  if (!std::isfinite(r.value())) jet_domain_fail("non-finite result", e);
  return r;
}

}  // namespace

Jet eval_jet(const Expr& expr, std::span<const double> point, int order) {
  if (order < 0 || order > Jet::kMaxOrder) throw std::invalid_argument("jet order must be in 0..3");
  return eval_jet_node(expr, point, order);
}

}  // namespace tinv
