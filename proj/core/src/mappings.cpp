#include "tinv/mappings.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <thread>

namespace tinv {
namespace {

const Signature kCovector{Variance::lower};
const Signature kAffinor{Variance::upper, Variance::lower};
const Signature kConnection{Variance::upper, Variance::lower, Variance::lower};

void require_chart(const Space& space, const Field& f, const Signature& sig, const char* what) {
  if (f.empty()) throw ConfigError(std::string(what) + " is not set");
  if (f.dim() != space.dim()) throw ConfigError(std::string(what) + " is defined over another chart");
  if (f.variance() != sig) throw ConfigError(std::string(what) + " has the wrong variance");
}

/// F^a_j s_a + F s_j.
JetTensor fs_trace(const JetTensor& F, const JetTensor& sigma) {
  const int n = F.dim();
  const Jet ftr = affinor_trace(F);
  JetTensor out(n, kCovector);
  for (int j = 0; j < n; ++j) {
    Jet v = ftr * sigma(j);
    for (int a = 0; a < n; ++a) v += F(a, j) * sigma(a);
    out(j) = std::move(v);
  }
  return out;
}

JetTensor derivative_connection(const Space& space, Point x, const InvariantOptions& opts) {
  return opts.derivative_space ? opts.derivative_space->lsym(x) : space.lsym(x);
}

}  // namespace

Space apply_mapping(const Space& source, const MappingSpec& m) {
  if (!(m.source.s == m.target.s)) {
    throw ConfigError("source and target omega must share s1, s2, s3");
  }
  if (m.source.dim != source.dim() || m.target.dim != source.dim()) {
    throw ConfigError("omega fields are defined over another chart");
  }
  Field lbar = source.connection() + (omega_field(m.target) - omega_field(m.source));
  if (!m.torsion_delta.empty()) {
    require_chart(source, m.torsion_delta, kConnection, "torsion delta");
    lbar = lbar + m.torsion_delta;
  }
  return Space::from_field(source.chart(), std::move(lbar));
}

Space fplanar_build(const Space& source, const FPlanarSpec& f) {
  require_chart(source, f.psi, kCovector, "psi");
  require_chart(source, f.sigma, kCovector, "sigma");
  require_chart(source, f.F, kAffinor, "F");
  const int n = source.dim();
  Field deformation(n, kConnection, [f, n](Point x) {
    const JetTensor psi = f.psi(x);
    const JetTensor cf = fplanar::calF(f.F(x), f.sigma(x));
    JetTensor p = cf;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          if (i == k) p(i, j, k) += psi(j);
          if (i == j) p(i, j, k) += psi(k);
        }
    return p;
  });
  return Space::from_field(source.chart(), source.connection() + deformation);
}

FPlanarSpec fplanar_inverse(const FPlanarSpec& f) { return {-1.0 * f.psi, -1.0 * f.sigma, f.F}; }

Field fplanar_rho(const Space& space, const Field& F, const Field& sigma) {
  require_chart(space, F, kAffinor, "F");
  require_chart(space, sigma, kCovector, "sigma");
  const int n = space.dim();
  return Field(n, kCovector, [space, F, sigma, n](Point x) {
    const JetTensor tr = connection_trace(space.lsym(x));
    const JetTensor fs = fs_trace(F(x), sigma(x));
    JetTensor r(n, kCovector);
    for (int j = 0; j < n; ++j) r(j) = (tr(j) + 0.5 * fs(j)) / static_cast<double>(n + 1);
    return r;
  });
}

MappingSpec fplanar_as_omega(const Space& source, const FPlanarSpec& f) {
  require_chart(source, f.psi, kCovector, "psi");
  const int n = source.dim();
  const SValues s{1.0, 0.5, 0.0};
  MappingSpec m{OmegaSpec(n, s), OmegaSpec(n, s), Field()};
  m.source.F = f.F;
  m.source.sigma = -1.0 * f.sigma;
  m.source.rho = fplanar_rho(source, f.F, f.sigma);
  m.target.F = f.F;
  m.target.sigma = f.sigma;
  m.target.rho = m.source.rho + f.psi;
  return m;
}

RecoveredPsi fplanar_recover(const Space& source, const Space& target, const Field& F,
                             const Field& sigma, const std::vector<std::vector<double>>& points,
                             double tol) {
  require_chart(source, F, kAffinor, "F");
  require_chart(source, sigma, kCovector, "sigma");
  if (target.dim() != source.dim()) throw ConfigError("source and target charts differ");
  const int n = source.dim();
  Field psi(n, kCovector, [source, target, F, sigma, n](Point x) {
    const JetTensor tr = connection_trace(source.lsym(x));
    const JetTensor trbar = connection_trace(target.lsym(x));
    const JetTensor fs = fs_trace(F(x), sigma(x));
    JetTensor p(n, kCovector);
    for (int j = 0; j < n; ++j) p(j) = (trbar(j) - tr(j) - fs(j)) / static_cast<double>(n + 1);
    return p;
  });
  RecoveredPsi out{psi, fplanar_rho(source, F, sigma), 0.0};
  const Space rebuilt = fplanar_build(source, {psi, sigma, F});
  for (const auto& x : points) {
    const double d = max_abs_diff(rebuilt.lsym(x), target.lsym(x));
    if (std::isnan(d) || d > out.residual) out.residual = d;
    if (std::isnan(d)) break;
  }
  if (!(out.residual <= tol)) {
    throw NotFPlanarError("target is not F-planar over the source for the given F and sigma", out.residual);
  }
  return out;
}

namespace fplanar {

JetTensor calF(const JetTensor& F, const JetTensor& sigma) {
  const int n = F.dim();
  JetTensor out(n, kConnection);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out(i, j, k) = F(i, k) * sigma(j) + F(i, j) * sigma(k);
  return out;
}

JetTensor thomas(const Space& space, const Field& F, const Field& sigma, Point x) {
  const int n = space.dim();
  const JetTensor l = space.lsym(x);
  const JetTensor tr = connection_trace(l);
  const JetTensor f = F(x);
  const JetTensor s = sigma(x);
  const JetTensor fs = fs_trace(f, s);
  const double c = 1.0 / (n + 1.0);
  JetTensor t = l - 0.5 * calF(f, s);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j) t(i, j, k) -= c * (tr(k) - 0.5 * fs(k));
        if (i == k) t(i, j, k) -= c * (tr(j) - 0.5 * fs(j));
      }
  return t;
}

JetTensor thomas_prime(const Space& space, const Field& F, const Field& sigma, Point x) {
  const int n = space.dim();
  const JetTensor f = F(x);
  const JetTensor s = sigma(x);
  const JetTensor fs = fs_trace(f, s);
  const double c = 1.0 / (2.0 * (n + 1.0));
  JetTensor t = tinv::thomas(space, x) - 0.5 * calF(f, s);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j) t(i, j, k) += c * fs(k);
        if (i == k) t(i, j, k) += c * fs(j);
      }
  return t;
}

JetTensor dee(const Space& space, const Field& F, const Field& sigma, Point x,
              const InvariantOptions& opts) {
  return -0.5 * cov_deriv(calF(F(x), sigma(x)), derivative_connection(space, x, opts));
}

JetTensor zeta(const Space& space, const Field& F, const Field& sigma, Point x,
               const InvariantOptions& opts) {
  const int n = space.dim();
  const JetTensor dl = derivative_connection(space, x, opts);
  const JetTensor tr = connection_trace(space.lsym(x));
  const JetTensor f = F(x);
  const JetTensor s = sigma(x);
  const JetTensor g = fs_trace(f, s);
  const JetTensor dtr = cov_deriv(tr, dl);
  const JetTensor dg = cov_deriv(g, dl);
  const double c = 1.0 / (n + 1.0);
  JetTensor z(n, {Variance::lower, Variance::lower});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet v = c * dtr(i, j) + (c * c) * tr(i) * tr(j);
      Jet mixed;
      for (int a = 0; a < n; ++a) mixed += tr(a) * (f(a, i) * s(j) + f(a, j) * s(i));
      v += (0.5 * c) * mixed;
      v += (0.5 * c) * (dg(i, j) + tr(i) * g(j) + tr(j) * g(i));
      z(i, j) = std::move(v);
    }
  return z;
}

JetTensor weyl_basic(const Space& space, const Field& F, const Field& sigma, Point x,
                     const InvariantOptions& opts) {
  const int n = space.dim();
  const JetTensor r = curvature(space, x);
  const JetTensor ric = ricci(r, opts.ricci);
  const JetTensor d = cov_deriv(calF(F(x), sigma(x)), derivative_connection(space, x, opts));
  const JetTensor z = zeta(space, F, sigma, x, opts);
  const double c = 1.0 / (n + 1.0);
  JetTensor w = r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
          Jet v = 0.5 * (d(i, j, k, m) - d(i, j, m, k));
          if (i == j) v += c * (ric(m, k) - ric(k, m));
          if (i == m) v -= z(j, k);
          if (i == k) v += z(j, m);
          w(i, j, m, k) += v;
        }
  return w;
}

JetTensor weyl_derived(const Space& space, const Field& F, const Field& sigma, Point x,
                       const InvariantOptions& opts) {
  const JetTensor d = cov_deriv(calF(F(x), sigma(x)), derivative_connection(space, x, opts));
  return tinv::weyl(space, x, opts.ricci) - 0.5 * alternate(d, 2, 3);
}

}  // namespace fplanar

std::vector<std::vector<double>> sample_points(std::uint64_t seed, int count, int dim, double lo,
                                               double hi) {
  if (count < 0 || dim < 1) throw ConfigError("invalid sample size");
  if (!(lo < hi)) throw ConfigError("sample box needs lo < hi");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(count));
  for (auto& p : pts) {
    p.resize(static_cast<std::size_t>(dim));
    for (auto& c : p) c = dist(rng);
  }
  return pts;
}

namespace {

struct NamedInvariant {
  Invariant id;
  const char* name;
};

constexpr NamedInvariant kNames[] = {
    {Invariant::thomas, "thomas"},
    {Invariant::weyl, "weyl"},
    {Invariant::basic_thomas, "basic_thomas"},
    {Invariant::basic_weyl_direct, "basic_weyl_direct"},
    {Invariant::basic_weyl_structured, "basic_weyl_structured"},
    {Invariant::derived_thomas, "derived_thomas"},
    {Invariant::derived_weyl_first, "derived_weyl_1"},
    {Invariant::derived_weyl_second, "derived_weyl_2"},
    {Invariant::derived_weyl, "derived_weyl"},
    {Invariant::fplanar_thomas, "fplanar_thomas"},
    {Invariant::fplanar_thomas_prime, "fplanar_thomas_prime"},
    {Invariant::fplanar_weyl_basic, "fplanar_weyl_basic"},
    {Invariant::fplanar_weyl_derived, "fplanar_weyl_derived"},
};

bool needs_omega(Invariant inv) {
  switch (inv) {
    case Invariant::basic_thomas:
    case Invariant::basic_weyl_direct:
    case Invariant::basic_weyl_structured:
    case Invariant::derived_thomas:
    case Invariant::derived_weyl_first:
    case Invariant::derived_weyl_second:
    case Invariant::derived_weyl:
      return true;
    default:
      return false;
  }
}

bool needs_fplanar(Invariant inv) {
  switch (inv) {
    case Invariant::fplanar_thomas:
    case Invariant::fplanar_thomas_prime:
    case Invariant::fplanar_weyl_basic:
    case Invariant::fplanar_weyl_derived:
      return true;
    default:
      return false;
  }
}

struct Side {
  const Space* space;
  const OmegaSpec* omega;
  const Field* F;
  const Field* sigma;
  InvariantOptions opts;
};

TensorValue evaluate_side(Invariant inv, const Side& s, Point x) {
  const Space& sp = *s.space;
  switch (inv) {
    case Invariant::thomas:
      return values(thomas(sp, x));
    case Invariant::weyl:
      return values(weyl(sp, x, s.opts.ricci));
    case Invariant::basic_thomas:
      return values(basic_thomas(sp, *s.omega, x));
    case Invariant::basic_weyl_direct:
      return values(basic_weyl(sp, *s.omega, x, WeylAssembly::direct, s.opts));
    case Invariant::basic_weyl_structured:
      return values(basic_weyl(sp, *s.omega, x, WeylAssembly::structured, s.opts));
    case Invariant::derived_thomas:
      return values(derived_thomas(sp, *s.omega, x));
    case Invariant::derived_weyl_first:
      return values(derived_weyl_chain(sp, *s.omega, x, s.opts).first);
    case Invariant::derived_weyl_second:
      return values(derived_weyl_chain(sp, *s.omega, x, s.opts).second);
    case Invariant::derived_weyl:
      return values(derived_weyl_chain(sp, *s.omega, x, s.opts).final);
    case Invariant::fplanar_thomas:
      return values(fplanar::thomas(sp, *s.F, *s.sigma, x));
    case Invariant::fplanar_thomas_prime:
      return values(fplanar::thomas_prime(sp, *s.F, *s.sigma, x));
    case Invariant::fplanar_weyl_basic:
      return values(fplanar::weyl_basic(sp, *s.F, *s.sigma, x, s.opts));
    case Invariant::fplanar_weyl_derived:
      return values(fplanar::weyl_derived(sp, *s.F, *s.sigma, x, s.opts));
  }
  throw std::logic_error("unhandled invariant");
}

}  // namespace

std::string to_string(Invariant inv) {
  for (const auto& e : kNames)
    if (e.id == inv) return e.name;
  throw std::logic_error("unnamed invariant");
}

Invariant invariant_from_string(const std::string& name) {
  for (const auto& e : kNames)
    if (name == e.name) return e.id;
  throw ConfigError("unknown invariant '" + name + "'");
}

const std::vector<Invariant>& classical_invariants() {
  static const std::vector<Invariant> v{Invariant::thomas, Invariant::weyl};
  return v;
}

const std::vector<Invariant>& omega_invariants() {
  static const std::vector<Invariant> v{
      Invariant::basic_thomas,   Invariant::basic_weyl_direct,  Invariant::basic_weyl_structured,
      Invariant::derived_thomas, Invariant::derived_weyl_first, Invariant::derived_weyl_second,
      Invariant::derived_weyl};
  return v;
}

const std::vector<Invariant>& fplanar_literal_invariants() {
  static const std::vector<Invariant> v{Invariant::fplanar_thomas, Invariant::fplanar_thomas_prime,
                                        Invariant::fplanar_weyl_basic,
                                        Invariant::fplanar_weyl_derived};
  return v;
}

TensorValue evaluate_invariant(Invariant inv, const Space& space, const InvariantInputs& in, Point x) {
  if (needs_omega(inv) && !in.omega) throw ConfigError("invariant '" + to_string(inv) + "' needs omega data");
  if (needs_fplanar(inv) && !(in.F && in.sigma)) {
    throw ConfigError("invariant '" + to_string(inv) + "' needs F-planar data");
  }
  return evaluate_side(inv, {&space, in.omega, in.F, in.sigma, in.opts}, x);
}

FPlanarSides fplanar_sides(const FPlanarSpec& f) { return {f.F, -1.0 * f.sigma, f.sigma}; }

bool InvarianceReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

const InvariantResult& InvarianceReport::at(const std::string& name) const {
  for (const auto& r : results)
    if (r.name == name) return r;
  throw std::out_of_range("no result for invariant '" + name + "'");
}

InvarianceReport verify_invariance(const Space& source, const Space& target,
                                   const VerifyRequest& request,
                                   const std::vector<std::vector<double>>& points) {
  if (source.dim() != target.dim()) throw ConfigError("source and target charts differ");
  for (Invariant inv : request.invariants) {
    if (needs_omega(inv) && !request.omegas) {
      throw ConfigError("invariant '" + to_string(inv) + "' needs omega data for both spaces");
    }
    if (needs_fplanar(inv) && !request.fplanar) {
      throw ConfigError("invariant '" + to_string(inv) + "' needs F-planar data");
    }
  }
  const OmegaSpec* wsrc = request.omegas ? &request.omegas->source : nullptr;
  const OmegaSpec* wtgt = request.omegas ? &request.omegas->target : nullptr;
  const Field* F = request.fplanar ? &request.fplanar->F : nullptr;
  const Side src{&source, wsrc, F, request.fplanar ? &request.fplanar->sigma_source : nullptr,
                 {request.ricci, nullptr}};
  const Side tgt{&target, wtgt, F, request.fplanar ? &request.fplanar->sigma_target : nullptr,
                 {request.ricci, request.source_derivatives ? &source : nullptr}};

  const std::size_t ninv = request.invariants.size();
  const std::size_t npts = points.size();
  std::vector<PointDiscrepancy> cells(ninv * npts);

  auto work = [&](std::size_t p) {
    for (std::size_t k = 0; k < ninv; ++k) {
      PointDiscrepancy& cell = cells[k * npts + p];
      cell.point = points[p];
      try {
        const Invariant inv = request.invariants[k];
        cell.max_abs = max_abs_diff(evaluate_side(inv, src, points[p]),
                                    evaluate_side(inv, tgt, points[p]));
      } catch (const std::exception& e) {
        cell.max_abs = std::numeric_limits<double>::quiet_NaN();
        cell.error = e.what();
      }
    }
  };

  unsigned nthreads = request.threads ? request.threads : std::thread::hardware_concurrency();
  nthreads = std::max(1u, std::min<unsigned>(nthreads, static_cast<unsigned>(npts)));
  if (nthreads <= 1) {
    for (std::size_t p = 0; p < npts; ++p) work(p);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t p = t; p < npts; p += nthreads) work(p);
      });
    }
    for (auto& th : pool) th.join();
  }

  InvarianceReport report;
  report.tol = request.tol;
  for (std::size_t k = 0; k < ninv; ++k) {
    InvariantResult r;
    r.name = to_string(request.invariants[k]);
    bool ok = true;
    for (std::size_t p = 0; p < npts; ++p) {
      const PointDiscrepancy& cell = cells[k * npts + p];
      if (std::isnan(cell.max_abs)) {
        ok = false;
        r.max_abs = cell.max_abs;
      } else if (!std::isnan(r.max_abs)) {
        r.max_abs = std::max(r.max_abs, cell.max_abs);
      }
      if (!(cell.max_abs <= request.tol)) ok = false;
      r.points.push_back(cell);
    }
    r.passed = ok;
    report.results.push_back(std::move(r));
  }
  return report;
}

}  // namespace tinv
