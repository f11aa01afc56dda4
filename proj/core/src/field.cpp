#include "tinv/field.hpp"

#include <stdexcept>

namespace tinv {
namespace {

std::size_t expected_size(int dim, std::size_t rank) {
  std::size_t n = 1;
  for (std::size_t k = 0; k < rank; ++k) n *= static_cast<std::size_t>(dim);
  return n;
}

void check_point(Point x, int dim) {
  if (static_cast<int>(x.size()) != dim) {
    throw std::invalid_argument("point has " + std::to_string(x.size()) +
                                " coordinates, chart has " + std::to_string(dim));
  }
}

}  // namespace

TensorField::TensorField(Chart chart, Signature variance, std::vector<Expr> entries)
    : chart_(std::move(chart)), variance_(std::move(variance)), entries_(std::move(entries)) {
  if (entries_.size() != expected_size(chart_.dim(), variance_.size())) {
    throw TensorError("tensor field needs " +
                      std::to_string(expected_size(chart_.dim(), variance_.size())) +
                      " entries, got " + std::to_string(entries_.size()));
  }
  for (const Expr& e : entries_) {
    if (e.max_variable_index() >= chart_.dim()) {
      throw TensorError("tensor field entry references a coordinate outside the chart");
    }
  }
}

TensorField TensorField::parse(const Chart& chart, Signature variance,
                               const std::vector<std::string>& entries) {
  std::vector<Expr> parsed;
  parsed.reserve(entries.size());
  for (const auto& text : entries) parsed.push_back(tinv::parse(text, chart));
  return TensorField(chart, std::move(variance), std::move(parsed));
}

TensorField TensorField::zero(const Chart& chart, Signature variance) {
  const std::size_t n = expected_size(chart.dim(), variance.size());
  return TensorField(chart, std::move(variance), std::vector<Expr>(n));
}

const Expr& TensorField::entry(std::span<const int> idx) const {
  std::size_t off = 0;
  if (idx.size() != variance_.size()) throw TensorError("index rank mismatch");
  for (int i : idx) {
    if (i < 0 || i >= dim()) throw TensorError("index out of range");
    off = off * static_cast<std::size_t>(dim()) + static_cast<std::size_t>(i);
  }
  return entries_[off];
}

TensorValue TensorField::evaluate(Point x) const {
  check_point(x, dim());
  TensorValue out(dim(), variance_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out[k] = tinv::evaluate(entries_[k], x);
  return out;
}

JetTensor TensorField::jets(Point x, int order) const {
  check_point(x, dim());
  JetTensor out(dim(), variance_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out[k] = eval_jet(entries_[k], x, order);
  return out;
}

Field::Field(int dim, Signature variance, Eval eval)
    : dim_(dim), variance_(std::move(variance)), eval_(std::move(eval)) {}

Field::Field(const TensorField& field)
    : dim_(field.dim()),
      variance_(field.variance()),
      eval_([f = std::make_shared<const TensorField>(field)](Point x) { return f->jets(x); }) {}

Field Field::zero(int dim, Signature variance) {
  return Field(dim, variance, [dim, variance](Point) { return JetTensor(dim, variance); });
}

JetTensor Field::operator()(Point x) const {
  if (!eval_) throw std::logic_error("evaluating an empty field");
  check_point(x, dim_);
  JetTensor t = eval_(x);
  if (t.dim() != dim_ || t.variance() != variance_) {
    throw TensorError("field evaluator returned a tensor of the wrong shape");
  }
  return t;
}

Field operator+(const Field& a, const Field& b) {
  if (a.dim() != b.dim() || a.variance() != b.variance()) throw TensorError("field shape mismatch");
  return Field(a.dim(), a.variance(), [a, b](Point x) { return a(x) + b(x); });
}

Field operator-(const Field& a, const Field& b) {
  if (a.dim() != b.dim() || a.variance() != b.variance()) throw TensorError("field shape mismatch");
  return Field(a.dim(), a.variance(), [a, b](Point x) { return a(x) - b(x); });
}

Field operator*(double s, const Field& a) {
  return Field(a.dim(), a.variance(), [s, a](Point x) { return s * a(x); });
}

}  // namespace tinv
