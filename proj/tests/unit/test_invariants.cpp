#include <doctest.h>

#include <cmath>
#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "tinv/error.hpp"
#include "tinv/invariants.hpp"
#include "tinv/mappings.hpp"

using namespace tinv;

namespace {

const std::vector<double> kP{1.0, 2.0, 3.0};
const double kLn15 = std::log(15.0);

// F^i_n (F^a_m s_j + F^a_j s_m) s_a + F^i_a F^a_m s_j s_n at one point.
TensorValue quadratic_F_group(const TensorValue& F, const TensorValue& s) {
  TensorValue q(3, {Variance::upper, Variance::lower, Variance::lower, Variance::lower});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
          double v = 0.0;
          for (int a = 0; a < 3; ++a)
            v += F(i, n) * (F(a, m) * s(j) + F(a, j) * s(m)) * s(a) + F(i, a) * F(a, m) * s(j) * s(n);
          q(i, j, m, n) = v;
        }
  return q;
}

// The whole quadratic part of D, written out index by index.
TensorValue quadratic_dee(const OmegaSpec& spec, const std::vector<double>& x) {
  const OmegaJets w = spec.at(x);
  const TensorValue F = values(w.F), s = values(w.sigma), p = values(w.phi), S = values(w.sigma2);
  const double s2 = w.s.s2, s3 = w.s.s3;
  TensorValue out = (s2 * s2) * quadratic_F_group(F, s);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
          double v = 0.0;
          for (int a = 0; a < 3; ++a) {
            v += s3 * s3 * S(j, m) * S(a, n) * p(a) * p(i);
            v += s2 * s3 * ((F(a, m) * s(j) + F(a, j) * s(m)) * S(a, n) * p(i) -
                            (F(i, m) * s(a) + F(i, a) * s(m)) * S(j, n) * p(a));
          }
          out(i, j, m, n) += v;
        }
  return out;
}

}  // namespace

TEST_CASE("omega bookkeeping") {
  CHECK(max_abs(omega(OmegaSpec(3), kP)) == 0.0);
  OmegaSpec spec(3, {1.0, 0.0, 0.0});
  spec.rho = fixture::field(fixture::kCovector, {"1", "0", "0"});
  const TensorValue w = omega(spec, kP);
  CHECK(w(0, 0, 0) == 2.0);
  CHECK(w(0, 0, 1) == 0.0);
  CHECK(w(1, 0, 1) == 1.0);
  CHECK(w(1, 1, 0) == 1.0);

  CHECK(omega(fixture::example_spec(), kP)(2, 2, 2) == doctest::Approx(3.0 * kLn15).epsilon(1e-14));

  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    const OmegaSpec r = fixture::random_spec(rng, fixture::random_s(rng));
    const TensorValue rw = omega(r, fixture::random_point(rng));
    CHECK(max_abs(rw - swap_slots(rw, 1, 2)) < 1e-15);
  }
}

TEST_CASE("expanded omega square equals direct contraction") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 50; ++t) {
    const OmegaSpec spec = fixture::random_spec(rng, fixture::random_s(rng));
    const auto x = fixture::random_point(rng);
    const OmegaJets w = spec.at(x);
    const TensorValue wv = values(omega(w));
    // outer(w, w) has slots (a, j, m, i, a', n); contracting a with a' leaves (j, m, i, n).
    const TensorValue c = oracle::brute_contract(outer(wv, wv), 0, 4);
    TensorValue oracle(3, {Variance::upper, Variance::lower, Variance::lower, Variance::lower});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m)
          for (int n = 0; n < 3; ++n) oracle(i, j, m, n) = c(j, m, i, n);
    CHECK(max_abs_diff(values(omega_square_expanded(w)), oracle) < 1e-12);
    CHECK(max_abs_diff(omega_square_expanded(w), omega_square_direct(omega(w))) < 1e-12);
  }
}

TEST_CASE("omega square special cases") {
  std::mt19937_64 rng(23);
  const auto x = fixture::random_point(rng);
  OmegaSpec full = fixture::random_spec(rng, {1.0, 0.0, 0.0});
  OmegaSpec rho_only(3, {1.0, 0.0, 0.0});
  rho_only.rho = full.rho;
  CHECK(max_abs_diff(omega_square_expanded(full.at(x)), omega_square_expanded(rho_only.at(x))) == 0.0);

  OmegaSpec s3(3, {0.0, 0.0, 1.0});
  s3.sigma2 = fixture::field(fixture::kBilinear, {"1", "0", "0", "0", "1", "0", "0", "0", "1"});
  s3.phi = fixture::field(fixture::kVector, {"0", "0", "1"});
  for (const auto& y : {kP, x}) {
    const TensorValue q = values(omega_square_expanded(s3.at(y)));
    CHECK(q(2, 0, 0, 2) == 1.0);
    CHECK(q(2, 0, 0, 1) == 0.0);
  }
}

TEST_CASE("basic Thomas invariant") {
  const Space s = fixture::example_space();
  CHECK(max_abs_diff(basic_thomas(s, OmegaSpec(3), kP), s.lsym(kP)) == 0.0);
  const TensorValue t = values(basic_thomas(s, fixture::example_spec(), kP));
  CHECK(t(2, 2, 2) == doctest::Approx(1.0 / 3.0 - 3.0 * kLn15).epsilon(1e-14));
  CHECK(t(2, 2, 2) == doctest::Approx(-7.7909).epsilon(1e-5));
}

TEST_CASE("zeta") {
  std::mt19937_64 rng(24);
  const Space curved = fixture::random_space(rng);
  const OmegaSpec no_s1 = fixture::random_spec(rng, {0.0, 0.7, -0.3});
  CHECK(max_abs(values(zeta(curved, no_s1, kP))) == 0.0);

  OmegaSpec spec(3, {1.0, 0.0, 0.0});
  spec.rho = fixture::field(fixture::kCovector, {"v", "u", "0"});  // d(uv)
  const TensorValue z = values(zeta(fixture::flat_space(), spec, kP));
  CHECK(z(0, 1) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(z(0, 0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(z(2, 2) == 0.0);

  // Against an explicit assembly with a finite-difference rho_{i|j}.
  const OmegaSpec r = fixture::random_spec(rng, fixture::random_s(rng));
  const auto x = fixture::random_point(rng);
  const OmegaJets w = r.at(x);
  const TensorValue l = values(curved.lsym(x));
  const TensorValue rho = values(w.rho), sg = values(w.sigma), F = values(w.F), p = values(w.phi),
                    S = values(w.sigma2);
  const double s1 = w.s.s1, s2 = w.s.s2, s3 = w.s.s3;
  const TensorValue got = values(zeta(curved, r, x));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const oracle::Scalar ri = [&](const std::vector<double>& y) { return values(r.rho(y))(i); };
      double want = s1 * oracle::central(ri, x, j) + s1 * s1 * rho(i) * rho(j);
      for (int a = 0; a < 3; ++a) {
        want -= s1 * l(a, i, j) * rho(a);
        want += s1 * s2 * (F(a, i) * sg(j) + F(a, j) * sg(i)) * rho(a);
        want += s1 * s3 * S(i, j) * rho(a) * p(a);
      }
      CHECK(std::abs(got(i, j) - want) < 1e-7);
    }
}

TEST_CASE("D tensor") {
  std::mt19937_64 rng(25);
  const Space curved = fixture::random_space(rng);
  const OmegaSpec no_s23 = fixture::random_spec(rng, {0.8, 0.0, 0.0});
  CHECK(max_abs(values(dee(curved, no_s23, kP))) == 0.0);

  // Constant ingredients on flat space: only the quadratic groups survive.
  OmegaSpec c(3, {0.4, -0.7, 1.3});
  c.sigma = fixture::field(fixture::kCovector, {"0.3", "-1", "2"});
  c.F = fixture::field(fixture::kAffinor, {"1", "2", "0", "-0.5", "0.25", "1", "3", "0", "-1"});
  c.phi = fixture::field(fixture::kVector, {"0.5", "1.5", "-2"});
  c.sigma2 = fixture::field(fixture::kBilinear, {"1", "0.2", "0", "0.2", "-1", "0.7", "0", "0.7", "2"});
  CHECK(max_abs_diff(values(dee(fixture::flat_space(), c, kP)), quadratic_dee(c, kP)) < 1e-13);

  OmegaSpec hand(3, {0.0, 0.0, 1.0});
  hand.sigma2 = fixture::field(fixture::kBilinear, {"1", "0", "0", "0", "1", "0", "0", "0", "1"});
  hand.phi = fixture::field(fixture::kVector, {"2", "0", "1"});
  const TensorValue d = values(dee(fixture::flat_space(), hand, kP));
  CHECK(d(0, 1, 1, 0) == 4.0);  // d_{jm} d_{an} p^a p^i = p^1 p^1
  CHECK(d(2, 0, 0, 0) == 2.0);
  CHECK(d(0, 0, 1, 0) == 0.0);

  // Non-constant ingredients: the derivative part against central differences of omega.
  const OmegaSpec r = fixture::random_spec(rng, fixture::random_s(rng));
  const auto x = fixture::random_point(rng);
  const TensorValue got = values(dee(fixture::flat_space(), r, x));
  const TensorValue quad = quadratic_dee(r, x);
  OmegaSpec tail = r;
  tail.s.s1 = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
          const oracle::Scalar f = [&](const std::vector<double>& y) { return omega(tail, y)(i, j, m); };
          CHECK(std::abs(got(i, j, m, n) - (quad(i, j, m, n) - oracle::central(f, x, n))) < 1e-6);
        }
}

TEST_CASE("basic Weyl assemblies") {
  std::mt19937_64 rng(26);
  const Space curved = fixture::random_space(rng);
  const auto x = fixture::random_point(rng);
  for (auto mode : {WeylAssembly::direct, WeylAssembly::structured})
    CHECK(max_abs_diff(basic_weyl(curved, OmegaSpec(3), x, mode), curvature(curved, x)) < 1e-14);

  // Flat space, DIRECT: -w_{jm,n} + w_{jn,m} + w w - w w.
  const OmegaSpec r = fixture::random_spec(rng, fixture::random_s(rng));
  const TensorValue got = values(basic_weyl(fixture::flat_space(), r, x));
  const TensorValue w = omega(r, x);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
          const oracle::Scalar wjm = [&](const std::vector<double>& y) { return omega(r, y)(i, j, m); };
          const oracle::Scalar wjn = [&](const std::vector<double>& y) { return omega(r, y)(i, j, n); };
          double want = -oracle::central(wjm, x, n) + oracle::central(wjn, x, m);
          for (int a = 0; a < 3; ++a) want += w(a, j, m) * w(i, a, n) - w(a, j, n) * w(i, a, m);
          CHECK(std::abs(got(i, j, m, n) - want) < 1e-6);
        }

  // DIRECT and STRUCTURED agree.
  const Space ex = fixture::example_space();
  const OmegaSpec es = fixture::example_spec();
  for (int t = 0; t < 5; ++t) {
    const auto y = fixture::random_point(rng);
    CHECK(max_abs_diff(basic_weyl(ex, es, y, WeylAssembly::direct), basic_weyl(ex, es, y, WeylAssembly::structured)) <
          1e-9);
    const OmegaSpec rs = fixture::random_spec(rng, fixture::random_s(rng));
    CHECK(max_abs_diff(basic_weyl(curved, rs, y, WeylAssembly::direct),
                       basic_weyl(curved, rs, y, WeylAssembly::structured)) < 1e-9);
  }
}

TEST_CASE("derived invariants collapse to the classical ones") {
  std::mt19937_64 rng(27);
  for (int t = 0; t < 10; ++t) {
    const Space curved = fixture::random_space(rng);
    const auto x = fixture::random_point(rng);
    const OmegaSpec geo = fixture::random_spec(rng, {1.0, 0.0, 0.0});
    CHECK(max_abs_diff(derived_thomas(curved, geo, x), thomas(curved, x)) < 1e-14);
    const OmegaSpec s1_only = fixture::random_spec(rng, {fixture::random_s(rng).s1, 0.0, 0.0});
    const WeylChain chain = derived_weyl_chain(curved, s1_only, x);
    const JetTensor w = weyl(curved, x);
    CHECK(max_abs_diff(chain.first, w) < 1e-12);
    CHECK(max_abs_diff(chain.second, w) < 1e-12);
    CHECK(max_abs_diff(chain.final, w) < 1e-12);
  }
}

TEST_CASE("correlation identities") {
  std::mt19937_64 rng(28);
  for (int t = 0; t < 20; ++t) {
    const Space curved = fixture::random_space(rng);
    const OmegaSpec spec = fixture::random_spec(rng, fixture::random_s(rng));
    const auto x = fixture::random_point(rng);
    CHECK(max_abs_diff(derived_thomas(curved, spec, x), derived_thomas_correlation(curved, spec, x)) < 1e-12);
    CHECK(max_abs_diff(derived_weyl_chain(curved, spec, x).final, derived_weyl_correlation(curved, spec, x)) <
          1e-12);
  }
}

TEST_CASE("derived Thomas invariant of the example") {
  // T - 1/2 cF + 1/8 d^i_j cF^a_{ka} + 1/8 d^i_k cF^a_{ja}, with cF built from +sigma.
  const Space s = fixture::example_space();
  std::mt19937_64 rng(29);
  for (int t = 0; t < 5; ++t) {
    const auto x = t == 0 ? kP : fixture::random_point(rng);
    const TensorValue F = fixture::example_F().evaluate(x), sg = fixture::example_sigma().evaluate(x);
    const TensorValue T = values(thomas(s, x));
    TensorValue cf(3, fixture::kConnection);
    std::vector<double> tr(3, 0.0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) cf(i, j, k) = F(i, k) * sg(j) + F(i, j) * sg(k);
    for (int j = 0; j < 3; ++j)
      for (int a = 0; a < 3; ++a) tr[j] += cf(a, j, a);
    const TensorValue got = values(derived_thomas(s, fixture::example_spec(), x));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const double want = T(i, j, k) - 0.5 * cf(i, j, k) + (i == j ? tr[k] / 8 : 0.0) + (i == k ? tr[j] / 8 : 0.0);
          CHECK(got(i, j, k) == doctest::Approx(want).epsilon(1e-13));
        }
  }
}

TEST_CASE("F-planar reduction of D leaves the quadratic F group") {
  // The literal reduced D is -1/2 (F s)_{|n}; the general D with s2 = 1/2 keeps
  // (s2)^2 times the quadratic F group, which does not vanish on the example.
  const Space s = fixture::example_space();
  const OmegaSpec spec = fixture::example_spec();
  const Field F = fixture::example_F(), sg = fixture::example_sigma();
  std::mt19937_64 rng(30);
  double largest = 0.0;
  for (int t = 0; t < 5; ++t) {
    const auto x = fixture::random_point(rng);
    const TensorValue gap = values(dee(s, spec, x)) - values(fplanar::dee(s, F, sg, x));
    const TensorValue q = 0.25 * quadratic_F_group(fixture::example_F().evaluate(x), fixture::example_sigma().evaluate(x));
    CHECK(max_abs_diff(gap, q) < 1e-12);
    largest = std::max(largest, max_abs(q));
  }
  CHECK(largest > 1.0);
}

TEST_CASE("symmetric sigma_jk is enforced") {
  OmegaSpec spec(3, {0.0, 0.0, 1.0});
  spec.sigma2 = fixture::field(fixture::kBilinear, {"1", "u", "0", "v", "1", "0", "0", "0", "1"});
  const std::vector<std::vector<double>> pts{{1.0, 1.0, 1.0}, {1.0, 2.0, 3.0}};
  CHECK_THROWS_AS(spec.check_symmetric(pts), ConfigError);
  spec.sigma2 = fixture::field(fixture::kBilinear, {"1", "u", "0", "u", "1", "0", "0", "0", "1"});
  CHECK_NOTHROW(spec.check_symmetric(pts));
}
