#include "tinv/invariants.hpp"

#include <string>

namespace tinv {
namespace {

const Signature kCovector{Variance::lower};
const Signature kVector{Variance::upper};
const Signature kAffinor{Variance::upper, Variance::lower};
const Signature kBilinear{Variance::lower, Variance::lower};
const Signature kConnection{Variance::upper, Variance::lower, Variance::lower};
const Signature kCurvature{Variance::upper, Variance::lower, Variance::lower, Variance::lower};

bool is_zero(const Jet& j) { return j.is_constant() && j.value() == 0.0; }

void require(const Field& f, int dim, const Signature& sig, const char* what) {
  if (f.empty()) throw TensorError(std::string("omega field '") + what + "' is not set");
  if (f.dim() != dim || f.variance() != sig) {
    throw TensorError(std::string("omega field '") + what + "' has the wrong shape");
  }
}

JetTensor derivative_connection(const Space& space, Point x, const InvariantOptions& opts) {
  return opts.derivative_space ? opts.derivative_space->lsym(x) : space.lsym(x);
}

/// The rho-free part of omega: s2 (F^i_j s_k + F^i_k s_j) + s3 s_{jk} p^i.
JetTensor omega_tail(const OmegaJets& w) {
  const int n = w.F.dim();
  JetTensor out(n, kConnection);
  if (w.s.s2 == 0.0 && w.s.s3 == 0.0) return out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        Jet v;
        if (w.s.s2 != 0.0) v += w.s.s2 * (w.F(i, j) * w.sigma(k) + w.F(i, k) * w.sigma(j));
        if (w.s.s3 != 0.0) v += w.s.s3 * (w.sigma2(j, k) * w.phi(i));
        out(i, j, k) = v;
        out(i, k, j) = v;
      }
  return out;
}

/// Contractions that appear over and over in the quadratic groups.
struct Contractions {
  explicit Contractions(const OmegaJets& w) : n(w.F.dim()) {
    rp = 0.0;
    sp = 0.0;
    Ftr = affinor_trace(w.F);
    Fr.assign(n, Jet());
    Fs.assign(n, Jet());
    Fp.assign(n, Jet());
    Sp.assign(n, Jet());
    FF.assign(n * n, Jet());
    FS.assign(n * n, Jet());
    for (int a = 0; a < n; ++a) {
      rp += w.rho(a) * w.phi(a);
      sp += w.sigma(a) * w.phi(a);
    }
    for (int m = 0; m < n; ++m) {
      for (int a = 0; a < n; ++a) {
        Fr[m] += w.F(a, m) * w.rho(a);
        Fs[m] += w.F(a, m) * w.sigma(a);
        Fp[m] += w.F(m, a) * w.phi(a);
        Sp[m] += w.sigma2(m, a) * w.phi(a);
      }
      for (int k = 0; k < n; ++k) {
        for (int a = 0; a < n; ++a) {
          FF[m * n + k] += w.F(m, a) * w.F(a, k);
          FS[m * n + k] += w.F(a, m) * w.sigma2(a, k);
        }
      }
    }
  }

  int n;
  Jet rp;                // r_a p^a
  Jet sp;                // s_a p^a
  Jet Ftr;               // F^a_a
  std::vector<Jet> Fr;   // F^a_m r_a
  std::vector<Jet> Fs;   // F^a_m s_a
  std::vector<Jet> Fp;   // F^i_a p^a
  std::vector<Jet> Sp;   // s_{ma} p^a
  std::vector<Jet> FF;   // F^i_a F^a_m at [i*n+m]
  std::vector<Jet> FS;   // F^a_m s_{an} at [m*n+n']
};

/// Algebraic (derivative-free) part of D^i_{jmn}.
JetTensor dee_quadratic(const OmegaJets& w, const Contractions& c) {
  const int n = c.n;
  const double s2 = w.s.s2;
  const double s3 = w.s.s3;
  JetTensor out(n, kCurvature);
  if (s2 == 0.0 && s3 == 0.0) return out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
          Jet v;
          if (s2 != 0.0) {
            v += (s2 * s2) * (w.F(i, k) * (c.Fs[m] * w.sigma(j) + c.Fs[j] * w.sigma(m)) +
                              c.FF[i * n + m] * w.sigma(j) * w.sigma(k));
          }
          if (s3 != 0.0) {
            Jet sum;
            for (int a = 0; a < n; ++a) sum += w.sigma2(a, k) * w.phi(a);
            v += (s3 * s3) * (w.sigma2(j, m) * sum * w.phi(i));
          }
          if (s2 != 0.0 && s3 != 0.0) {
            v += (s2 * s3) * ((c.FS[m * n + k] * w.sigma(j) + c.FS[j * n + k] * w.sigma(m)) * w.phi(i) -
                              (w.F(i, m) * c.sp + c.Fp[i] * w.sigma(m)) * w.sigma2(j, k));
          }
          out(i, j, m, k) = std::move(v);
        }
  return out;
}

JetTensor dee_at(const JetTensor& dl, const OmegaJets& w) {
  const Contractions c(w);
  JetTensor d = dee_quadratic(w, c);
  if (w.s.s2 != 0.0 || w.s.s3 != 0.0) d -= cov_deriv(omega_tail(w), dl);
  return d;
}

/// R + projective Ricci corrections, as in the Weyl projective tensor.
JetTensor weyl_assembly(const JetTensor& r, const JetTensor& ric) {
  const int n = r.dim();
  const double nn = n;
  JetTensor w = r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
          Jet v = w(i, j, m, k);
          if (i == j) v += (ric(m, k) - ric(k, m)) / (nn + 1.0);
          if (i == m) v += (nn * ric(j, k) + ric(k, j)) / (nn * nn - 1.0);
          if (i == k) v -= (nn * ric(j, m) + ric(m, j)) / (nn * nn - 1.0);
          w(i, j, m, k) = std::move(v);
        }
  return w;
}

}  // namespace

OmegaSpec::OmegaSpec(int dim_, SValues s_)
    : dim(dim_),
      s(s_),
      rho(Field::zero(dim_, kCovector)),
      sigma(Field::zero(dim_, kCovector)),
      F(Field::zero(dim_, kAffinor)),
      phi(Field::zero(dim_, kVector)),
      sigma2(Field::zero(dim_, kBilinear)) {}

void OmegaSpec::validate() const {
  require(rho, dim, kCovector, "rho");
  require(sigma, dim, kCovector, "sigma");
  require(F, dim, kAffinor, "F");
  require(phi, dim, kVector, "phi");
  require(sigma2, dim, kBilinear, "sigma_jk");
}

void OmegaSpec::check_symmetric(std::span<const std::vector<double>> points, double tol) const {
  for (const auto& p : points) {
    const TensorValue v = values(sigma2(p));
    for (int j = 0; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k) {
        if (!(std::abs(v(j, k) - v(k, j)) <= tol)) {
          throw ConfigError("sigma_jk is not symmetric: entries (" + std::to_string(j + 1) + "," +
                            std::to_string(k + 1) + ") and (" + std::to_string(k + 1) + "," +
                            std::to_string(j + 1) + ") differ");
        }
      }
  }
}

OmegaJets OmegaSpec::at(Point x) const {
  validate();
  return {s, rho(x), sigma(x), F(x), phi(x), sigma2(x)};
}

Jet affinor_trace(const JetTensor& F) {
  Jet t;
  for (int a = 0; a < F.dim(); ++a) t += F(a, a);
  return t;
}

JetTensor omega(const OmegaJets& w) {
  const int n = w.F.dim();
  JetTensor out = omega_tail(w);
  if (w.s.s1 == 0.0) return out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j) out(i, j, k) += w.s.s1 * w.rho(k);
        if (i == k) out(i, j, k) += w.s.s1 * w.rho(j);
      }
  return out;
}

TensorValue omega(const OmegaSpec& spec, Point x) { return values(omega(spec.at(x))); }

Field omega_field(const OmegaSpec& spec) {
  spec.validate();
  return Field(spec.dim, kConnection, [spec](Point x) { return omega(spec.at(x)); });
}

JetTensor omega_square_expanded(const OmegaJets& w) {
  const Contractions c(w);
  const int n = c.n;
  const double s1 = w.s.s1, s2 = w.s.s2, s3 = w.s.s3;
  const auto& r = w.rho;
  const auto& sg = w.sigma;
  const auto& F = w.F;
  const auto& S = w.sigma2;
  const auto& p = w.phi;
  JetTensor out(n, kCurvature);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
          Jet v;
          // (s1)^2 d^i_j r_m r_n + (s1)^2 d^i_m r_j r_n
          if (s1 != 0.0) {
            if (i == j) v += (s1 * s1) * r(m) * r(k);
            if (i == m) v += (s1 * s1) * r(j) * r(k);
          }
          // d^i_n (...)
          if (i == k) {
            Jet g = (2.0 * s1 * s1) * r(j) * r(m);
            g += (s1 * s2) * (c.Fr[m] * sg(j) + c.Fr[j] * sg(m));
            g += (s1 * s3) * S(j, m) * c.rp;
            v += g;
          }
          // (s2)^2 group
          if (s2 != 0.0) {
            const Jet pair = c.Fs[m] * sg(j) + c.Fs[j] * sg(m);
            v += (s2 * s2) * (F(i, k) * pair +
                              (c.FF[i * n + m] * sg(j) + c.FF[i * n + j] * sg(m)) * sg(k));
          }
          // (s3)^2 group
          if (s3 != 0.0) {
            Jet sum;
            for (int a = 0; a < n; ++a) sum += S(a, k) * p(a);
            v += (s3 * s3) * S(j, m) * sum * p(i);
          }
          // s1 s2 group
          if (s1 != 0.0 && s2 != 0.0) {
            v += (s1 * s2) * (F(i, k) * (r(j) * sg(m) + r(m) * sg(j)) +
                              F(i, m) * (r(j) * sg(k) + r(k) * sg(j)) +
                              F(i, j) * (r(m) * sg(k) + r(k) * sg(m)));
          }
          // s1 s3 group
          if (s1 != 0.0 && s3 != 0.0) {
            v += (s1 * s3) * (S(m, k) * r(j) + S(j, k) * r(m) + S(j, m) * r(k)) * p(i);
          }
          // s2 s3 group
          if (s2 != 0.0 && s3 != 0.0) {
            v += (s2 * s3) * ((c.FS[m * n + k] * sg(j) + c.FS[j * n + k] * sg(m)) * p(i) +
                              (F(i, k) * c.sp + c.Fp[i] * sg(k)) * S(j, m));
          }
          out(i, j, m, k) = std::move(v);
        }
  return out;
}

JetTensor omega_square_direct(const JetTensor& w) {
  const int n = w.dim();
  JetTensor out(n, kCurvature);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
          Jet v;
          for (int a = 0; a < n; ++a) {
            if (is_zero(w(a, j, m)) || is_zero(w(i, a, k))) continue;
            v += w(a, j, m) * w(i, a, k);
          }
          out(i, j, m, k) = std::move(v);
        }
  return out;
}

JetTensor basic_thomas(const Space& space, const OmegaSpec& spec, Point x) {
  return space.lsym(x) - omega(spec.at(x));
}

JetTensor zeta(const Space& space, const OmegaSpec& spec, Point x, const InvariantOptions& opts) {
  const OmegaJets w = spec.at(x);
  const int n = space.dim();
  const double s1 = w.s.s1, s2 = w.s.s2, s3 = w.s.s3;
  JetTensor z(n, kBilinear);
  if (s1 == 0.0) return z;
  const JetTensor dr = cov_deriv(w.rho, derivative_connection(space, x, opts));
  const Contractions c(w);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet v = s1 * dr(i, j) + (s1 * s1) * w.rho(i) * w.rho(j);
      if (s2 != 0.0) v += (s1 * s2) * (c.Fr[i] * w.sigma(j) + c.Fr[j] * w.sigma(i));
      if (s3 != 0.0) v += (s1 * s3) * w.sigma2(i, j) * c.rp;
      z(i, j) = std::move(v);
    }
  return z;
}

JetTensor dee(const Space& space, const OmegaSpec& spec, Point x, const InvariantOptions& opts) {
  return dee_at(derivative_connection(space, x, opts), spec.at(x));
}

JetTensor basic_weyl(const Space& space, const OmegaSpec& spec, Point x, WeylAssembly mode,
                     const InvariantOptions& opts) {
  const int n = space.dim();
  JetTensor out = curvature(space, x);
  if (mode == WeylAssembly::direct) {
    const OmegaJets w = spec.at(x);
    const JetTensor om = omega(w);
    const JetTensor dom = cov_deriv(om, derivative_connection(space, x, opts));
    const JetTensor sq = omega_square_direct(om);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m)
          for (int k = 0; k < n; ++k) {
            out(i, j, m, k) += dom(i, j, k, m) - dom(i, j, m, k) + sq(i, j, m, k) - sq(i, j, k, m);
          }
    return out;
  }
  const JetTensor z = zeta(space, spec, x, opts);
  const JetTensor d = dee(space, spec, x, opts);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
          Jet v = d(i, j, m, k) - d(i, j, k, m);
          if (i == j) v -= z(m, k) - z(k, m);
          if (i == m) v -= z(j, k);
          if (i == k) v += z(j, m);
          out(i, j, m, k) += v;
        }
  return out;
}

JetTensor reduced_trace(const Space& space, const OmegaSpec& spec, Point x) {
  const OmegaJets w = spec.at(x);
  const int n = space.dim();
  const JetTensor tr = connection_trace(space.lsym(x));
  const Contractions c(w);
  JetTensor out(n, kCovector);
  for (int j = 0; j < n; ++j) {
    Jet v = tr(j);
    if (w.s.s2 != 0.0) v -= w.s.s2 * (c.Fs[j] + c.Ftr * w.sigma(j));
    if (w.s.s3 != 0.0) v -= w.s.s3 * c.Sp[j];
    out(j) = v / static_cast<double>(n + 1);
  }
  return out;
}

Field eliminated_rho(const Space& space, const OmegaSpec& spec) {
  if (spec.s.s1 == 0.0) throw DomainError("rho cannot be eliminated when s1 = 0");
  spec.validate();
  const double inv = 1.0 / spec.s.s1;
  return Field(space.dim(), kCovector,
               [space, spec, inv](Point x) { return inv * reduced_trace(space, spec, x); });
}

JetTensor derived_thomas(const Space& space, const OmegaSpec& spec, Point x) {
  const OmegaJets w = spec.at(x);
  const int n = space.dim();
  const double s1 = w.s.s1;
  const JetTensor red = reduced_trace(space, spec, x);
  JetTensor t = space.lsym(x) - omega_tail(w);
  if (s1 == 0.0) return t;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j) t(i, j, k) -= s1 * red(k);
        if (i == k) t(i, j, k) -= s1 * red(j);
      }
  return t;
}

JetTensor derived_thomas_correlation(const Space& space, const OmegaSpec& spec, Point x) {
  const OmegaJets w = spec.at(x);
  const int n = space.dim();
  const double s1 = w.s.s1, s2 = w.s.s2, s3 = w.s.s3;
  const JetTensor l = space.lsym(x);
  const Contractions c(w);
  JetTensor out = s1 * thomas(l) + (1.0 - s1) * l - omega_tail(w);
  std::vector<Jet> corr(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    corr[k] = (s1 / (n + 1.0)) * (s2 * (c.Fs[k] + c.Ftr * w.sigma(k)) + s3 * c.Sp[k]);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j) out(i, j, k) += corr[k];
        if (i == k) out(i, j, k) += corr[j];
      }
  return out;
}

WeylChain derived_weyl_chain(const Space& space, const OmegaSpec& spec, Point x,
                             const InvariantOptions& opts) {
  const int n = space.dim();
  const double nn = n;
  const JetTensor r = curvature(space, x);
  const JetTensor ric = ricci(r, opts.ricci);
  const JetTensor wcl = weyl(r, opts.ricci);
  const JetTensor d = dee(space, spec, x, opts);

  // A(m,n) = D^a_{a[mn]},  B(j,n) = D^a_{j[na]}
  JetTensor da(n, kBilinear);
  JetTensor db(n, kBilinear);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      Jet a, b;
      for (int al = 0; al < n; ++al) {
        a += d(al, al, p, q) - d(al, al, q, p);
        b += d(al, p, q, al) - d(al, p, al, q);
      }
      da(p, q) = std::move(a);
      db(p, q) = std::move(b);
    }

  WeylChain chain{wcl, wcl, weyl_assembly(r, ric)};
  const double c1 = 1.0 / (nn + 1.0);
  const double c3 = 1.0 / (nn * nn - 1.0);
  const double c4 = 1.0 / (nn - 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
          const Jet alt = d(i, j, m, k) - d(i, j, k, m);
          Jet v1 = alt;
          Jet v2 = alt;
          if (i == j) v1 -= c1 * da(m, k);
          if (i == m) {
            v1 += c3 * ((nn + 1.0) * db(j, k) - da(j, k));
            v2 += c4 * db(j, k);
          }
          if (i == k) {
            v1 -= c3 * ((nn + 1.0) * db(j, m) - da(j, m));
            v2 -= c4 * db(j, m);
          }
          chain.first(i, j, m, k) += v1;
          chain.second(i, j, m, k) += v2;
          chain.final(i, j, m, k) += alt;
        }
  return chain;
}

JetTensor derived_weyl_correlation(const Space& space, const OmegaSpec& spec, Point x,
                                   const InvariantOptions& opts) {
  const JetTensor d = dee(space, spec, x, opts);
  return weyl(space, x, opts.ricci) + alternate(d, 2, 3);
}

}  // namespace tinv
