#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tinv/expr.hpp"
#include "tinv/jet.hpp"
#include "tinv/tensor.hpp"

namespace tinv {

using Point = std::span<const double>;

/// A tensor whose entries are expressions over one chart.
class TensorField {
 public:
  TensorField(Chart chart, Signature variance, std::vector<Expr> entries);

  /// Parses `entries` (row-major, N^rank strings).
  static TensorField parse(const Chart& chart, Signature variance,
                           const std::vector<std::string>& entries);
  static TensorField zero(const Chart& chart, Signature variance);

  const Chart& chart() const noexcept { return chart_; }
  const Signature& variance() const noexcept { return variance_; }
  int dim() const noexcept { return chart_.dim(); }
  int rank() const noexcept { return static_cast<int>(variance_.size()); }
  const std::vector<Expr>& entries() const noexcept { return entries_; }
  const Expr& entry(std::span<const int> idx) const;

  TensorValue evaluate(Point x) const;
  JetTensor jets(Point x, int order = Jet::kMaxOrder) const;

 private:
  Chart chart_;
  Signature variance_;
  std::vector<Expr> entries_;
};

/// A tensor-valued function of position, evaluated with derivative jets.
/// Either backed by expressions or computed from other fields (e.g. a trace
/// of a connection).
class Field {
 public:
  using Eval = std::function<JetTensor(Point)>;

  Field() = default;
  Field(int dim, Signature variance, Eval eval);
  Field(const TensorField& field);  // NOLINT: expressions are fields

  static Field zero(int dim, Signature variance);

  bool empty() const noexcept { return !eval_; }
  int dim() const noexcept { return dim_; }
  const Signature& variance() const noexcept { return variance_; }
  int rank() const noexcept { return static_cast<int>(variance_.size()); }

  JetTensor operator()(Point x) const;

 private:
  int dim_ = 0;
  Signature variance_;
  Eval eval_;
};

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);

}  // namespace tinv
