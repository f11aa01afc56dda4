#pragma once

// Independent reference implementations used only by the tests.

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tinv/expr.hpp"
#include "tinv/tensor.hpp"

namespace oracle {

// Postfix program for an expression tree, run on an explicit value stack.
struct Instr {
  enum Op { push, load, neg, sin, cos, ln, exp, sqrt, add, sub, mul, div, pow } op;
  double value = 0.0;
  int index = 0;
};

inline void compile(const tinv::Expr& e, std::vector<Instr>& prog) {
  using K = tinv::Expr::Kind;
  switch (e.kind()) {
    case K::constant:
      prog.push_back({Instr::push, e.value(), 0});
      return;
    case K::variable:
      prog.push_back({Instr::load, 0.0, e.variable_index()});
      return;
    case K::unary: {
      compile(e.operand(), prog);
      static constexpr Instr::Op ops[] = {Instr::neg, Instr::sin, Instr::cos, Instr::ln, Instr::exp, Instr::sqrt};
      prog.push_back({ops[static_cast<int>(e.unary_op())], 0.0, 0});
      return;
    }
    case K::binary: {
      compile(e.lhs(), prog);
      compile(e.rhs(), prog);
      static constexpr Instr::Op ops[] = {Instr::add, Instr::sub, Instr::mul, Instr::div, Instr::pow};
      prog.push_back({ops[static_cast<int>(e.binary_op())], 0.0, 0});
      return;
    }
  }
}

inline double run(const std::vector<Instr>& prog, const std::vector<double>& x) {
  std::vector<double> st;
  for (const Instr& in : prog) {
    double b = 0.0;
    switch (in.op) {
      case Instr::push: st.push_back(in.value); break;
      case Instr::load: st.push_back(x.at(static_cast<std::size_t>(in.index))); break;
      case Instr::neg: st.back() = -st.back(); break;
      case Instr::sin: st.back() = std::sin(st.back()); break;
      case Instr::cos: st.back() = std::cos(st.back()); break;
      case Instr::ln: st.back() = std::log(st.back()); break;
      case Instr::exp: st.back() = std::exp(st.back()); break;
      case Instr::sqrt: st.back() = std::sqrt(st.back()); break;
      default:
        b = st.back();
        st.pop_back();
        switch (in.op) {
          case Instr::add: st.back() += b; break;
          case Instr::sub: st.back() -= b; break;
          case Instr::mul: st.back() *= b; break;
          case Instr::div: st.back() /= b; break;
          case Instr::pow: st.back() = std::pow(st.back(), b); break;
          default: throw std::logic_error("bad opcode");
        }
    }
  }
  if (st.size() != 1) throw std::logic_error("unbalanced program");
  return st.back();
}

inline double stack_eval(const tinv::Expr& e, const std::vector<double>& x) {
  std::vector<Instr> prog;
  compile(e, prog);
  return run(prog, x);
}

// Random trees whose every subexpression is defined on all of R^n.
inline tinv::Expr random_expr(std::mt19937_64& rng, int dim, int depth) {
  using tinv::BinaryOp;
  using tinv::Expr;
  using tinv::UnaryOp;
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_int_distribution<int> var(0, dim - 1);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  if (depth == 0) {
    return pick(rng) < 6 ? Expr::variable(var(rng)) : Expr::constant(std::round(c(rng) * 100) / 100);
  }
  auto sub = [&] { return random_expr(rng, dim, depth - 1); };
  auto one_plus_square = [&](Expr a) {
    return Expr::binary(BinaryOp::add, Expr::constant(1.0),
                        Expr::binary(BinaryOp::pow, std::move(a), Expr::constant(2.0)));
  };
  switch (pick(rng)) {
    case 0: return Expr::binary(BinaryOp::add, sub(), sub());
    case 1: return Expr::binary(BinaryOp::sub, sub(), sub());
    case 2: return Expr::binary(BinaryOp::mul, sub(), sub());
    case 3: return Expr::binary(BinaryOp::div, sub(), one_plus_square(sub()));
    case 4: return Expr::unary(UnaryOp::sin, sub());
    case 5: return Expr::unary(UnaryOp::cos, sub());
    case 6: return Expr::unary(UnaryOp::ln, one_plus_square(sub()));
    case 7: return Expr::unary(UnaryOp::sqrt, one_plus_square(sub()));
    case 8: return Expr::unary(UnaryOp::exp, Expr::unary(UnaryOp::sin, sub()));
    default: return Expr::unary(UnaryOp::neg, Expr::binary(BinaryOp::pow, sub(), Expr::constant(3.0)));
  }
}

using Scalar = std::function<double(const std::vector<double>&)>;

// Central difference of f along coordinate i.
inline double central(const Scalar& f, std::vector<double> x, int i, double h = 1e-4) {
  const double x0 = x[static_cast<std::size_t>(i)];
  x[static_cast<std::size_t>(i)] = x0 + h;
  const double fp = f(x);
  x[static_cast<std::size_t>(i)] = x0 - h;
  const double fm = f(x);
  return (fp - fm) / (2.0 * h);
}

inline Scalar partial(Scalar f, int i, double h = 1e-4) {
  return [f = std::move(f), i, h](const std::vector<double>& x) { return central(f, x, i, h); };
}

inline bool close(double got, double want, double rel, double abs_tol) {
  return std::abs(got - want) <= std::max(abs_tol, rel * std::abs(want));
}

// Brute-force tensor algebra on flat row-major arrays.
inline std::vector<int> unflatten(std::size_t flat, int rank, int dim) {
  std::vector<int> idx(static_cast<std::size_t>(rank));
  for (int s = rank; s-- > 0;) {
    idx[static_cast<std::size_t>(s)] = static_cast<int>(flat % static_cast<std::size_t>(dim));
    flat /= static_cast<std::size_t>(dim);
  }
  return idx;
}

inline tinv::TensorValue random_tensor(std::mt19937_64& rng, int dim, tinv::Signature sig) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  tinv::TensorValue t(dim, std::move(sig));
  for (auto& v : t.data()) v = d(rng);
  return t;
}

// Sum over every full index tuple with slots a, b equal.
inline tinv::TensorValue brute_contract(const tinv::TensorValue& t, int a, int b) {
  tinv::Signature sig;
  for (int s = 0; s < t.rank(); ++s)
    if (s != a && s != b) sig.push_back(t.variance(s));
  tinv::TensorValue out(t.dim(), sig);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    const auto idx = unflatten(flat, t.rank(), t.dim());
    if (idx[static_cast<std::size_t>(a)] != idx[static_cast<std::size_t>(b)]) continue;
    std::size_t off = 0;
    for (int s = 0; s < t.rank(); ++s) {
      if (s == a || s == b) continue;
      off = off * static_cast<std::size_t>(t.dim()) + static_cast<std::size_t>(idx[static_cast<std::size_t>(s)]);
    }
    out[off] += t[flat];
  }
  return out;
}

}  // namespace oracle
