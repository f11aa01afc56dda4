#pragma once

// Dense tensors over an N-dimensional chart.
//
// Storage is row-major with slots in the order they are written in index
// notation, contravariant slot first: R^i_{jmn} is R(i, j, m, n).
//
// Bracket conventions (the most error-prone part of the codebase):
//   alternate(t, a, b)  ==  t_{..a..b..} - t_{..b..a..}        (no 1/2)
//   sym(t, a, b)        ==  (t_{..a..b..} + t_{..b..a..}) / 2   (with 1/2)
// With these, the projective Weyl tensor of a space with symmetric Ricci
// tensor reduces to R + (d^i_m R_jn - d^i_n R_jm)/(N-1), because
// N/(N^2-1) + 1/(N^2-1) == 1/(N-1).

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tinv/error.hpp"
#include "tinv/jet.hpp"

namespace tinv {

enum class Variance : std::uint8_t { upper, lower };
using Signature = std::vector<Variance>;

/// Visit every multi-index of a rank-`rank` tensor over `dim` values, in
/// storage order.
template <class F>
void for_each_index(int rank, int dim, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(rank), 0);
  if (dim <= 0 && rank > 0) return;
  for (;;) {
    f(std::as_const(idx));
    int slot = rank - 1;
    while (slot >= 0 && ++idx[static_cast<std::size_t>(slot)] == dim) {
      idx[static_cast<std::size_t>(slot)] = 0;
      --slot;
    }
    if (slot < 0) return;
  }
}

template <class T>
class Tensor {
 public:
  using value_type = T;

  Tensor() = default;
  Tensor(int dim, Signature variance, T fill = T{})
      : dim_(dim), variance_(std::move(variance)) {
    if (dim < 1) throw TensorError("tensor dimension must be positive");
    std::size_t n = 1;
    for (std::size_t k = 0; k < variance_.size(); ++k) n *= static_cast<std::size_t>(dim);
    data_.assign(n, fill);
  }

  int dim() const noexcept { return dim_; }
  int rank() const noexcept { return static_cast<int>(variance_.size()); }
  const Signature& variance() const noexcept { return variance_; }
  Variance variance(int slot) const { return variance_.at(static_cast<std::size_t>(slot)); }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }
  T& operator[](std::size_t flat) { return data_[flat]; }
  const T& operator[](std::size_t flat) const { return data_[flat]; }

  template <std::integral... I>
  T& operator()(I... idx) {
    return data_[offset_of(idx...)];
  }
  template <std::integral... I>
  const T& operator()(I... idx) const {
    return data_[offset_of(idx...)];
  }

  T& at(std::span<const int> idx) { return data_[offset(idx)]; }
  const T& at(std::span<const int> idx) const { return data_[offset(idx)]; }

  std::size_t offset(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != rank()) throw TensorError("index rank mismatch");
    std::size_t off = 0;
    for (int i : idx) {
      if (i < 0 || i >= dim_) throw TensorError("index out of range");
      off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    }
    return off;
  }

  template <class F>
  auto map(F&& f) const {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    Tensor<U> out(dim_, variance_);
    for (std::size_t k = 0; k < data_.size(); ++k) out[k] = f(data_[k]);
    return out;
  }

  Tensor& operator+=(const Tensor& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  template <class S>
  Tensor& operator*=(const S& s) {
    for (auto& v : data_) v = v * s;
    return *this;
  }

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator-(Tensor a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }
  template <class S>
  friend Tensor operator*(const S& s, Tensor a)
    requires(!std::same_as<S, Tensor>)
  {
    return a *= s;
  }

  void require_same_shape(const Tensor& o) const {
    if (dim_ != o.dim_ || variance_ != o.variance_) {
      throw TensorError("tensor shape or variance mismatch");
    }
  }

 private:
  template <class... I>
  std::size_t offset_of(I... idx) const {
    if (static_cast<int>(sizeof...(I)) != rank()) throw TensorError("index rank mismatch");
    std::size_t off = 0;
    ((off = off * static_cast<std::size_t>(dim_) + checked(static_cast<int>(idx))), ...);
    return off;
  }
  std::size_t checked(int i) const {
    if (i < 0 || i >= dim_) throw TensorError("index out of range");
    return static_cast<std::size_t>(i);
  }

  int dim_ = 0;
  Signature variance_;
  std::vector<T> data_;
};

using TensorValue = Tensor<double>;
using JetTensor = Tensor<Jet>;

namespace detail {

inline void check_slot(int rank, int slot) {
  if (slot < 0 || slot >= rank) throw TensorError("slot " + std::to_string(slot) + " out of range");
}

}  // namespace detail

/// Sum over the diagonal of one upper and one lower slot.
template <class T>
Tensor<T> contract(const Tensor<T>& t, int a, int b) {
  detail::check_slot(t.rank(), a);
  detail::check_slot(t.rank(), b);
  if (a == b) throw TensorError("cannot contract a slot with itself");
  if (t.variance(a) == t.variance(b)) {
    throw TensorError("contraction needs one upper and one lower slot");
  }
  Signature sig;
  for (int s = 0; s < t.rank(); ++s) {
    if (s != a && s != b) sig.push_back(t.variance(s));
  }
  Tensor<T> out(t.dim(), sig);
  std::vector<int> full(static_cast<std::size_t>(t.rank()));
  for_each_index(out.rank(), t.dim(), [&](const std::vector<int>& idx) {
    std::size_t k = 0;
    for (int s = 0; s < t.rank(); ++s) {
      if (s != a && s != b) full[static_cast<std::size_t>(s)] = idx[k++];
    }
    T sum{};
    for (int d = 0; d < t.dim(); ++d) {
      full[static_cast<std::size_t>(a)] = d;
      full[static_cast<std::size_t>(b)] = d;
      sum += t.at(full);
    }
    out.at(idx) = sum;
  });
  return out;
}

/// t with slots a and b exchanged (same variance required).
template <class T>
Tensor<T> swap_slots(const Tensor<T>& t, int a, int b) {
  detail::check_slot(t.rank(), a);
  detail::check_slot(t.rank(), b);
  if (t.variance(a) != t.variance(b)) throw TensorError("cannot swap slots of different variance");
  Tensor<T> out(t.dim(), t.variance());
  std::vector<int> src;
  for_each_index(t.rank(), t.dim(), [&](const std::vector<int>& idx) {
    src = idx;
    std::swap(src[static_cast<std::size_t>(a)], src[static_cast<std::size_t>(b)]);
    out.at(idx) = t.at(src);
  });
  return out;
}

/// The bracket [ab]: t_{..a..b..} - t_{..b..a..}, without a factor 1/2.
template <class T>
Tensor<T> alternate(const Tensor<T>& t, int a, int b) {
  return t - swap_slots(t, a, b);
}

/// The parenthesis (ab): (t_{..a..b..} + t_{..b..a..}) / 2.
template <class T>
Tensor<T> sym(const Tensor<T>& t, int a, int b) {
  return 0.5 * (t + swap_slots(t, a, b));
}

template <class T>
Tensor<T> outer(const Tensor<T>& a, const Tensor<T>& b) {
  if (a.dim() != b.dim()) throw TensorError("outer product of tensors over different dimensions");
  Signature sig = a.variance();
  sig.insert(sig.end(), b.variance().begin(), b.variance().end());
  Tensor<T> out(a.dim(), sig);
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[k++] = a[i] * b[j];
  return out;
}

/// delta^i_j.
template <class T = double>
Tensor<T> kronecker(int dim) {
  Tensor<T> out(dim, {Variance::upper, Variance::lower});
  for (int i = 0; i < dim; ++i) out(i, i) = T(1.0);
  return out;
}

inline TensorValue values(const JetTensor& t) {
  return t.map([](const Jet& j) { return j.value(); });
}

/// max |entry|.
inline double max_abs(const TensorValue& t) {
  double m = 0.0;
  for (double v : t.data()) {
    if (std::isnan(v)) return v;
    m = std::max(m, std::abs(v));
  }
  return m;
}

inline double max_abs_diff(const TensorValue& a, const TensorValue& b) {
  a.require_same_shape(b);
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = std::abs(a[k] - b[k]);
    if (std::isnan(d)) return d;
    m = std::max(m, d);
  }
  return m;
}

inline double max_abs_diff(const JetTensor& a, const JetTensor& b) {
  return max_abs_diff(values(a), values(b));
}

}  // namespace tinv
