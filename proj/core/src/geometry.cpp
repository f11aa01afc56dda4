#include "tinv/geometry.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace tinv {
namespace {

const Signature kConnectionSig{Variance::upper, Variance::lower, Variance::lower};
const Signature kCurvatureSig{Variance::upper, Variance::lower, Variance::lower, Variance::lower};

constexpr double kSingularDet = 1e-12;

void require_connection(const JetTensor& l) {
  if (l.variance() != kConnectionSig) throw TensorError("expected a (1,2) connection");
}

bool same_expr_text(const Expr& a, const Expr& b) { return a == b; }

}  // namespace

Space::Space(Chart chart, SpaceOrigin origin, std::optional<TensorField> metric, Field connection)
    : chart_(std::move(chart)),
      origin_(origin),
      metric_(std::move(metric)),
      connection_(std::move(connection)) {
  if (connection_.dim() != chart_.dim() || connection_.variance() != kConnectionSig) {
    throw TensorError("connection must be a (1,2) field over the space's chart");
  }
  std::tie(symmetric_, torsion_) = symmetrize_connection(connection_);
}

Space Space::from_metric(const TensorField& metric) {
  if (metric.variance() != Signature{Variance::lower, Variance::lower}) {
    throw TensorError("metric must be a (0,2) tensor field");
  }
  const int n = metric.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::array<int, 2> ij{i, j};
      const std::array<int, 2> ji{j, i};
      if (!same_expr_text(metric.entry(ij), metric.entry(ji))) {
        throw TensorError("metric must be symmetric: g_" + std::to_string(i + 1) +
                          std::to_string(j + 1) + " differs from g_" + std::to_string(j + 1) +
                          std::to_string(i + 1));
      }
    }
  }
  auto g = std::make_shared<const TensorField>(metric);
  Field gamma(n, kConnectionSig, [g](Point x) { return christoffel(*g, x); });
  return Space(metric.chart(), SpaceOrigin::from_metric, metric, std::move(gamma));
}

Space Space::from_connection(const TensorField& connection) {
  if (connection.variance() != kConnectionSig) throw TensorError("connection must be a (1,2) tensor field");
  return Space(connection.chart(), SpaceOrigin::given_connection, std::nullopt, Field(connection));
}

Space Space::from_field(const Chart& chart, Field connection) {
  return Space(chart, SpaceOrigin::derived, std::nullopt, std::move(connection));
}

JetTensor inverse_metric(const JetTensor& metric) {
  if (metric.rank() != 2) throw TensorError("inverse_metric expects a rank-2 tensor");
  const int n = metric.dim();
  std::vector<std::vector<Jet>> a(static_cast<std::size_t>(n));
  std::vector<std::vector<Jet>> inv(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a[i].push_back(metric(i, j));
      inv[i].push_back(Jet(i == j ? 1.0 : 0.0));
    }
  }
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c].value()) > std::abs(a[pivot][c].value())) pivot = r;
    }
    if (pivot != c) {
      std::swap(a[pivot], a[c]);
      std::swap(inv[pivot], inv[c]);
      det = -det;
    }
    det *= a[c][c].value();
    if (std::abs(det) < kSingularDet || a[c][c].value() == 0.0) {
      throw SingularMetricError("singular metric: |det g| < 1e-12");
    }
    const Jet p = a[c][c];
    for (int j = 0; j < n; ++j) {
      a[c][j] /= p;
      inv[c][j] /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const Jet f = a[r][c];
      if (f.is_constant() && f.value() == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  JetTensor out(n, {Variance::upper, Variance::upper});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = inv[i][j];
  return out;
}

JetTensor christoffel(const TensorField& metric, Point x) {
  const int n = metric.dim();
  const JetTensor g = metric.jets(x, Jet::kMaxOrder);
  const JetTensor ginv = inverse_metric(g.map([](const Jet& j) { return j.truncated(Jet::kMaxOrder - 1); }));
  // dg(l, j, k) = d_l g_{jk}
  std::vector<Jet> dg(static_cast<std::size_t>(n * n * n));
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) dg[(l * n + j) * n + k] = g(j, k).partial(l);
  auto d = [&](int l, int j, int k) -> const Jet& { return dg[(l * n + j) * n + k]; };

  JetTensor gamma(n, kConnectionSig);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        Jet sum;
        for (int l = 0; l < n; ++l) {
          const Jet& gil = ginv(i, l);
          if (gil.is_constant() && gil.value() == 0.0) continue;
          sum += gil * (d(j, l, k) + d(k, l, j) - d(l, j, k));
        }
        gamma(i, j, k) = 0.5 * sum;
        gamma(i, k, j) = gamma(i, j, k);
      }
  return gamma;
}

ConnectionParts symmetrize_connection(const JetTensor& connection) {
  require_connection(connection);
  const JetTensor swapped = swap_slots(connection, 1, 2);
  return {0.5 * (connection + swapped), 0.5 * (connection - swapped)};
}

std::pair<Field, Field> symmetrize_connection(const Field& connection) {
  const int n = connection.dim();
  Field sym(n, kConnectionSig, [connection](Point x) {
    return symmetrize_connection(connection(x)).symmetric;
  });
  Field tor(n, kConnectionSig, [connection](Point x) {
    return symmetrize_connection(connection(x)).torsion;
  });
  return {std::move(sym), std::move(tor)};
}

JetTensor cov_deriv(const JetTensor& t, const JetTensor& lsym) {
  require_connection(lsym);
  if (t.dim() != lsym.dim()) throw TensorError("covariant derivative over mismatched dimensions");
  const int n = t.dim();
  const int r = t.rank();
  Signature sig = t.variance();
  sig.push_back(Variance::lower);
  JetTensor out(n, sig);
  std::vector<int> src(static_cast<std::size_t>(r));
  for_each_index(r + 1, n, [&](const std::vector<int>& idx) {
    const int dn = idx.back();
    std::copy(idx.begin(), idx.end() - 1, src.begin());
    Jet v = t.at(src).partial(dn);
    for (int s = 0; s < r; ++s) {
      const int own = idx[static_cast<std::size_t>(s)];
      for (int a = 0; a < n; ++a) {
        src[static_cast<std::size_t>(s)] = a;
        if (t.variance(s) == Variance::upper) {
          v += lsym(own, a, dn) * t.at(src);
        } else {
          v -= lsym(a, own, dn) * t.at(src);
        }
      }
      src[static_cast<std::size_t>(s)] = own;
    }
    out.at(idx) = std::move(v);
  });
  return out;
}

JetTensor cov_deriv(const Field& t, const Space& space, Point x) {
  return cov_deriv(t(x), space.lsym(x));
}

Field cov_deriv(const Field& t, const Space& space) {
  Signature sig = t.variance();
  sig.push_back(Variance::lower);
  return Field(t.dim(), sig, [t, space](Point x) { return cov_deriv(t, space, x); });
}

JetTensor connection_trace(const JetTensor& lsym) {
  require_connection(lsym);
  return contract(lsym, 0, 2);
}

JetTensor curvature(const JetTensor& l) {
  require_connection(l);
  const int n = l.dim();
  JetTensor r(n, kCurvatureSig);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
          Jet v = l(i, j, m).partial(k) - l(i, j, k).partial(m);
          for (int a = 0; a < n; ++a) v += l(a, j, m) * l(i, a, k) - l(a, j, k) * l(i, a, m);
          r(i, j, m, k) = std::move(v);
        }
  return r;
}

JetTensor curvature(const Space& space, Point x) { return curvature(space.lsym(x)); }

JetTensor ricci(const JetTensor& r, RicciConvention convention) {
  if (r.variance() != kCurvatureSig) throw TensorError("expected a (1,3) curvature tensor");
  return convention == RicciConvention::last ? contract(r, 0, 3) : contract(r, 0, 2);
}

JetTensor ricci(const Space& space, Point x, RicciConvention convention) {
  return ricci(curvature(space, x), convention);
}

JetTensor ricci_antisymmetric(const JetTensor& ric) { return alternate(ric, 0, 1); }

JetTensor thomas(const JetTensor& l) {
  const int n = l.dim();
  const JetTensor tr = connection_trace(l);
  const double c = 1.0 / (n + 1);
  JetTensor t = l;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Jet corr;
        if (i == k) corr += tr(j);
        if (i == j) corr += tr(k);
        if (i == j || i == k) t(i, j, k) -= c * corr;
      }
  return t;
}

JetTensor thomas(const Space& space, Point x) { return thomas(space.lsym(x)); }

JetTensor weyl(const JetTensor& r, RicciConvention convention) {
  const int n = r.dim();
  const JetTensor ric = ricci(r, convention);
  const double nn = static_cast<double>(n);
  const double c1 = 1.0 / (nn + 1.0);
  const double c2 = nn / (nn * nn - 1.0);
  const double c3 = 1.0 / (nn * nn - 1.0);
  JetTensor w = r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
          Jet v;
          if (i == j) v += c1 * (ric(m, k) - ric(k, m));
          if (i == m) v += c2 * ric(j, k) + c3 * ric(k, j);
          if (i == k) v -= c2 * ric(j, m) + c3 * ric(m, j);
          w(i, j, m, k) += v;
        }
  return w;
}

JetTensor weyl(const Space& space, Point x, RicciConvention convention) {
  return weyl(curvature(space, x), convention);
}

JetTensor riemannian_weyl(const JetTensor& r, RicciConvention convention) {
  const int n = r.dim();
  const JetTensor ric = ricci(r, convention);
  const double c = 1.0 / (n - 1.0);
  JetTensor w = r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
          Jet v;
          if (i == m) v += ric(j, k);
          if (i == k) v -= ric(j, m);
          w(i, j, m, k) += c * v;
        }
  return w;
}

JetTensor riemannian_weyl(const Space& space, Point x, RicciConvention convention) {
  return riemannian_weyl(curvature(space, x), convention);
}

}  // namespace tinv
