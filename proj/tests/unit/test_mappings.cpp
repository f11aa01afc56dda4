#include <doctest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "tinv/error.hpp"
#include "tinv/mappings.hpp"

using namespace tinv;

namespace {

const std::vector<double> kP{1.0, 2.0, 3.0};
const double kLn15 = std::log(15.0);

FPlanarSpec example_fplanar(const std::vector<std::string>& psi) {
  return {fixture::field(fixture::kCovector, psi), fixture::example_sigma(), fixture::example_F()};
}

TensorValue conn(const Space& s, const std::vector<double>& x) { return values(s.connection()(x)); }

// cF^i_{jk} = F^i_k s_j + F^i_j s_k from evaluated F and sigma.
TensorValue calF_at(const std::vector<double>& x) {
  const TensorValue F = fixture::example_F().evaluate(x), s = fixture::example_sigma().evaluate(x);
  TensorValue c(3, fixture::kConnection);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c(i, j, k) = F(i, k) * s(j) + F(i, j) * s(k);
  return c;
}

}  // namespace

TEST_CASE("identity and geodesic deformations") {
  std::mt19937_64 rng(31);
  const Space src = fixture::example_space();
  const OmegaSpec w = fixture::random_spec(rng, fixture::random_s(rng));
  const Space same = apply_mapping(src, {w, w, {}});
  const auto x = fixture::random_point(rng);
  CHECK(max_abs_diff(conn(same, x), conn(src, x)) == 0.0);

  MappingSpec geo{OmegaSpec(3, {1.0, 0.0, 0.0}), OmegaSpec(3, {1.0, 0.0, 0.0}), {}};
  geo.target.rho = fixture::field(fixture::kCovector, {"1", "1", "0"});  // d(u + v)
  const Space tgt = apply_mapping(src, geo);
  for (int t = 0; t < 5; ++t) {
    const auto y = fixture::random_point(rng);
    CHECK(conn(tgt, y)(0, 0, 0) == doctest::Approx(conn(src, y)(0, 0, 0) + 2.0).epsilon(1e-15));
    CHECK(conn(tgt, y)(0, 0, 1) == doctest::Approx(conn(src, y)(0, 0, 1) + 1.0).epsilon(1e-15));
    CHECK(conn(tgt, y)(2, 0, 1) == conn(src, y)(2, 0, 1));
  }

  // Swapping the omegas undoes the mapping.
  const OmegaSpec wb = fixture::random_spec(rng, w.s);
  const Space there = apply_mapping(src, {w, wb, {}});
  const Space back = apply_mapping(there, {wb, w, {}});
  CHECK(max_abs_diff(conn(back, x), conn(src, x)) < 1e-14);

  OmegaSpec other = wb;
  other.s.s2 += 1.0;
  CHECK_THROWS_AS(apply_mapping(src, {w, other, {}}), Error);
}

TEST_CASE("torsion delta is carried into the target connection") {
  const Space src = fixture::example_space();
  std::vector<std::string> e(27, "0");
  e[0 * 9 + 1 * 3 + 2] = "u";
  e[0 * 9 + 2 * 3 + 1] = "-u";
  const Space tgt = apply_mapping(src, {OmegaSpec(3), OmegaSpec(3), fixture::field(fixture::kConnection, e)});
  CHECK(values(tgt.torsion()(kP))(0, 1, 2) == 1.0);
  CHECK(max_abs_diff(tgt.lsym(kP), src.lsym(kP)) == 0.0);
}

TEST_CASE("F-planar construction") {
  const Space src = fixture::example_space();
  const Space plain = fplanar_build(src, {Field::zero(3, fixture::kCovector), Field::zero(3, fixture::kCovector),
                                          fixture::example_F()});
  CHECK(max_abs_diff(conn(plain, kP), conn(src, kP)) == 0.0);

  const Space tgt = fplanar_build(src, example_fplanar({"0", "0", "0"}));
  CHECK(conn(tgt, kP)(2, 2, 2) == doctest::Approx(1.0 / 3.0 + 6.0 * kLn15).epsilon(1e-14));
  CHECK(conn(tgt, kP)(2, 2, 2) == doctest::Approx(16.5816).epsilon(1e-5));
  CHECK(conn(tgt, kP)(0, 0, 2) == doctest::Approx(std::sin(1.0) * kLn15).epsilon(1e-14));

  std::mt19937_64 rng(32);
  const FPlanarSpec f = example_fplanar({"v", "u*w", "sin(u)"});
  const Space built = fplanar_build(src, f);
  const Space via_omega = apply_mapping(src, fplanar_as_omega(src, f));
  const Space round_trip = fplanar_build(built, fplanar_inverse(f));
  for (int t = 0; t < 10; ++t) {
    const auto x = fixture::random_point(rng);
    CHECK(max_abs_diff(conn(built, x), conn(via_omega, x)) < 1e-14);
    CHECK(max_abs_diff(conn(round_trip, x), conn(src, x)) < 1e-14);
  }
}

TEST_CASE("psi recovery") {
  const Space src = fixture::example_space();
  const auto pts = sample_points(5, 10, 3, 1.0, 2.0);
  const FPlanarSpec f = example_fplanar({"v", "u", "0"});  // d(uv)
  const Space tgt = fplanar_build(src, f);
  const RecoveredPsi rec = fplanar_recover(src, tgt, f.F, f.sigma, pts);
  CHECK(rec.residual < 1e-10);
  for (const auto& x : pts) CHECK(max_abs_diff(rec.psi(x), f.psi(x)) < 1e-10);

  const Field none = Field::zero(3, fixture::kCovector);
  const RecoveredPsi id = fplanar_recover(src, src, f.F, none, pts);
  for (const auto& x : pts) CHECK(max_abs(values(id.psi(x))) < 1e-15);

  // A deformation that is not of F-planar form: s_{jk} p^i with s_22 = 1, p = (1, 0, 0).
  OmegaSpec bent(3, {0.0, 0.0, 1.0});
  bent.sigma2 = fixture::field(fixture::kBilinear, {"0", "0", "0", "0", "1", "0", "0", "0", "0"});
  bent.phi = fixture::field(fixture::kVector, {"1", "0", "0"});
  const Space odd = apply_mapping(src, {OmegaSpec(3, bent.s), bent, {}});
  CHECK_THROWS_AS(fplanar_recover(src, odd, f.F, f.sigma, pts), NotFPlanarError);
}

TEST_CASE("F-planar rho of the example") {
  const Field rho = fplanar_rho(fixture::example_space(), fixture::example_F(), fixture::example_sigma());
  // (L^a_{3a} + F s_3 / 2 + F^a_3 s_a / 2) / 4 with L^a_{3a} = 1/w.
  const double want = 0.25 * (1.0 / 3.0 + 0.5 * (std::sin(1.0) + std::cos(2.0) + 3.0) * kLn15 + 0.5 * 3.0 * kLn15);
  const TensorValue r = values(rho(kP));
  CHECK(r(2) == doctest::Approx(want).epsilon(1e-14));
  CHECK(r(2) == doctest::Approx(2.258346).epsilon(1e-6));
  CHECK(r(0) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("F-planar omega pair") {
  const Space src = fixture::example_space();
  const FPlanarSpec f = example_fplanar({"v", "u", "0"});
  const MappingSpec m = fplanar_as_omega(src, f);
  CHECK(m.source.s == SValues{1.0, 0.5, 0.0});
  CHECK(m.target.s == m.source.s);
  std::mt19937_64 rng(33);
  for (int t = 0; t < 5; ++t) {
    const auto x = fixture::random_point(rng);
    const OmegaJets a = m.source.at(x), b = m.target.at(x);
    // F-bar F-bar s-bar s-bar == F F s s
    const TensorValue Fa = values(a.F), Fb = values(b.F), sa = values(a.sigma), sb = values(b.sigma);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int m2 = 0; m2 < 3; ++m2)
          for (int n = 0; n < 3; ++n)
            for (int p = 0; p < 3; ++p)
              for (int q = 0; q < 3; ++q)
                worst = std::max(worst, std::abs(Fb(i, j) * Fb(m2, n) * sb(p) * sb(q) - Fa(i, j) * Fa(m2, n) * sa(p) * sa(q)));
    CHECK(worst < 1e-13);
    CHECK(max_abs_diff(values(b.rho) - values(a.rho), values(f.psi(x))) < 1e-14);
    // w-bar - w = d^i_j psi_k + d^i_k psi_j + F^i_j s_k + F^i_k s_j
    JetTensor dw = fplanar::calF(a.F, f.sigma(x));
    const JetTensor psi = f.psi(x);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          if (i == j) dw(i, j, k) += psi(k);
          if (i == k) dw(i, j, k) += psi(j);
        }
    CHECK(max_abs_diff(omega(b) - omega(a), dw) < 1e-14);
  }
}

TEST_CASE("literal F-planar assemblies") {
  const Space s = fixture::example_space();
  const Field F = fixture::example_F(), sg = fixture::example_sigma();
  const Field none = Field::zero(3, fixture::kCovector);
  std::mt19937_64 rng(34);
  for (int t = 0; t < 5; ++t) {
    const auto x = fixture::random_point(rng);
    CHECK(max_abs_diff(fplanar::thomas(s, F, none, x), thomas(s, x)) < 1e-15);
    CHECK(max_abs_diff(fplanar::thomas(s, F, sg, x), fplanar::thomas_prime(s, F, sg, x)) < 1e-13);
  }

  // W - 1/2 cF_{jm|n} + 1/2 cF_{jn|m}, with cF_{jm|n} from central differences.
  const auto x = fixture::random_point(rng);
  const TensorValue got = values(fplanar::weyl_derived(s, F, sg, x));
  const TensorValue l = values(s.lsym(x));
  const TensorValue cf = calF_at(x);
  const TensorValue W = values(weyl(s, x));
  auto d = [&](int i, int j, int m, int n) {
    const oracle::Scalar f = [&](const std::vector<double>& y) { return calF_at(y)(i, j, m); };
    double v = oracle::central(f, x, n);
    for (int a = 0; a < 3; ++a) v += l(i, a, n) * cf(a, j, m) - l(a, j, n) * cf(i, a, m) - l(a, m, n) * cf(i, j, a);
    return v;
  };
  CHECK(max_abs(W) < 1e-12);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n)
          CHECK(std::abs(got(i, j, m, n) - (W(i, j, m, n) - 0.5 * d(i, j, m, n) + 0.5 * d(i, j, n, m))) < 1e-6);
}

TEST_CASE("single-space invariant evaluation") {
  const Space s = fixture::example_space();
  const OmegaSpec spec = fixture::example_spec();
  CHECK(max_abs_diff(evaluate_invariant(Invariant::thomas, s, {}, kP), values(thomas(s, kP))) == 0.0);
  CHECK_THROWS_AS(evaluate_invariant(Invariant::basic_thomas, s, {}, kP), ConfigError);
  CHECK_THROWS_AS(evaluate_invariant(Invariant::fplanar_thomas, s, {}, kP), ConfigError);
  InvariantInputs in;
  in.omega = &spec;
  CHECK(max_abs_diff(evaluate_invariant(Invariant::basic_thomas, s, in, kP), values(basic_thomas(s, spec, kP))) == 0.0);
  for (auto inv : {Invariant::thomas, Invariant::fplanar_weyl_derived, Invariant::derived_weyl_first})
    CHECK(invariant_from_string(to_string(inv)) == inv);
  CHECK_THROWS(invariant_from_string("no_such_invariant"));
}

TEST_CASE("geodesic anchor mapping") {
  const Space src = fixture::example_space();
  const FPlanarSpec f{fixture::field(fixture::kCovector, {"1", "2*v", "0"}), Field::zero(3, fixture::kCovector),
                      Field::zero(3, fixture::kAffinor)};
  const Space tgt = fplanar_build(src, f);
  VerifyRequest req;
  req.invariants = {Invariant::thomas, Invariant::weyl};
  req.tol = 1e-9;
  const auto pts = sample_points(7, 20, 3, 1.0, 2.0);
  const InvarianceReport rep = verify_invariance(src, tgt, req, pts);
  CHECK(rep.passed());
  CHECK(rep.at("thomas").max_abs < 1e-9);
  CHECK(rep.at("weyl").max_abs < 1e-9);
  CHECK(rep.at("thomas").points.size() == 20);
  // The mapping is not trivial.
  CHECK(max_abs_diff(conn(tgt, pts[0]), conn(src, pts[0])) > 0.5);
}

TEST_CASE("identity mapping leaves every invariant exactly unchanged") {
  std::mt19937_64 rng(35);
  const Space src = fixture::example_space();
  const OmegaSpec w = fixture::random_spec(rng, fixture::random_s(rng));
  VerifyRequest req;
  req.invariants = {Invariant::thomas, Invariant::weyl, Invariant::basic_thomas, Invariant::basic_weyl_direct,
                    Invariant::basic_weyl_structured, Invariant::derived_thomas, Invariant::derived_weyl_first,
                    Invariant::derived_weyl_second, Invariant::derived_weyl};
  req.omegas = MappingSpec{w, w, {}};
  const InvarianceReport rep = verify_invariance(src, apply_mapping(src, *req.omegas), req, sample_points(1, 5, 3, 1, 2));
  for (const auto& r : rep.results) CHECK_MESSAGE(r.max_abs == 0.0, r.name);
}

TEST_CASE("missing inputs and evaluation failures") {
  const Space src = fixture::example_space();
  VerifyRequest req;
  req.invariants = {Invariant::basic_thomas};
  CHECK_THROWS_AS(verify_invariance(src, src, req, sample_points(1, 2, 3, 1, 2)), ConfigError);

  // The metric is singular at u = 0: that point fails, the other one is compared.
  req.invariants = {Invariant::thomas};
  const std::vector<std::vector<double>> pts{{0.0, 1.0, 1.0}, {1.0, 2.0, 3.0}};
  const InvarianceReport rep = verify_invariance(src, src, req, pts);
  CHECK_FALSE(rep.passed());
  CHECK_FALSE(rep.results[0].points[0].error.empty());
  CHECK(std::isnan(rep.results[0].points[0].max_abs));
  CHECK(rep.results[0].points[1].max_abs == 0.0);
  CHECK(std::isnan(rep.results[0].max_abs));
}

TEST_CASE("sample points") {
  const auto a = sample_points(42, 20, 3, 1.0, 2.0);
  const auto b = sample_points(42, 20, 3, 1.0, 2.0);
  CHECK(a == b);
  CHECK(a != sample_points(43, 20, 3, 1.0, 2.0));
  CHECK(a.size() == 20);
  for (const auto& p : a) {
    CHECK(p.size() == 3);
    for (double c : p) CHECK((c >= 1.0 && c <= 2.0));
  }
}

TEST_CASE("report serialization") {
  InvarianceReport rep;
  rep.tol = 1e-8;
  rep.results.push_back({"thomas", {{{1.0, 2.0, 3.0}, 1e-15, ""}}, 1e-15, true});
  rep.results.push_back({"weyl", {{{1.0, 2.0, 3.0}, std::nan(""), "domain error"}}, std::nan(""), false});
  const nlohmann::json j = to_json(rep);
  CHECK(j.at("passed") == false);
  CHECK(j.at("invariants").size() == 2);
  CHECK(j.at("invariants")[0].at("name") == "thomas");
  CHECK(j.at("invariants")[1].at("max_abs").is_null());
  CHECK(j.at("invariants")[1].at("points")[0].at("error") == "domain error");
  const std::string t = to_table(rep);
  CHECK(t.find("thomas") != std::string::npos);
  CHECK(t.find("FAIL") != std::string::npos);
  CHECK(t.find("not invariant") != std::string::npos);
}
