#include "tinv_cli/audit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tinv/tensor_io.hpp"

namespace tinv::cli {
namespace {

using nlohmann::json;

const Signature kCovector{Variance::lower};
const Signature kVector{Variance::upper};
const Signature kAffinor{Variance::upper, Variance::lower};
const Signature kBilinear{Variance::lower, Variance::lower};

const std::vector<double> kAnchor{1.0, 2.0, 3.0};

struct Example {
  Chart chart{{"u", "v", "w"}};
  Space space;
  FPlanarSpec mapping;
  Space target;

  explicit Example(const char* psi_u = "v", const char* psi_v = "u")
      : space(Space::from_metric(TensorField::parse(
            chart, kBilinear, {"u^2", "0", "0", "0", "v^2", "0", "0", "0", "w^2"}))),
        mapping{TensorField::parse(chart, kCovector, {psi_u, psi_v, "0"}),
                TensorField::parse(chart, kCovector, {"0", "0", "ln(1 + u^2 + v^2 + w^2)"}),
                TensorField::parse(chart, kAffinor, {"sin(u)", "0", "0", "0", "cos(v)", "0", "0", "0", "w"})},
        target(fplanar_build(space, mapping)) {}
};

json finding(std::string id, std::string title, double max_abs, double tol, json details,
             bool informational = false) {
  std::string status = informational ? "info" : (max_abs <= tol ? "consistent" : "discrepancy");
  return {{"id", std::move(id)},
          {"title", std::move(title)},
          {"status", std::move(status)},
          {"max_abs", std::isnan(max_abs) ? json(nullptr) : json(max_abs)},
          {"tol", tol},
          {"details", std::move(details)}};
}

double nan_max(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return std::numeric_limits<double>::quiet_NaN();
  return std::max(a, b);
}

json report_summary(const InvarianceReport& r) {
  json j = json::object();
  for (const auto& res : r.results) {
    j[res.name] = std::isnan(res.max_abs) ? json(nullptr) : json(res.max_abs);
  }
  return j;
}

double report_max(const InvarianceReport& r, std::initializer_list<const char*> names) {
  double m = 0.0;
  for (const char* n : names) m = nan_max(m, r.at(n).max_abs);
  return m;
}

// (a) Christoffel table of the example metric.
json christoffel_table(const AuditOptions& o) {
  Example ex;
  struct Claim {
    int i, j, k;
    const char* expr;
  };
  const Claim claims[] = {{1, 1, 1, "1/u"},   {1, 2, 2, "v/u^2"}, {1, 3, 3, "w/u^2"},
                          {2, 1, 1, "u/v^2"}, {2, 2, 2, "1/v"},   {2, 3, 3, "w/v^2"},
                          {3, 1, 1, "u/w^2"}, {3, 2, 2, "v/w^2"}, {3, 3, 3, "1/w"}};
  auto pts = sample_points(o.seed, 10, 3, 1.0, 2.0);
  pts.insert(pts.begin(), kAnchor);
  double off_max = 0.0;
  double diag_max = 0.0;
  json entries = json::array();
  for (const auto& c : claims) {
    const Expr claimed = parse(c.expr, ex.chart);
    double m = 0.0;
    for (const auto& p : pts) {
      const double got = values(ex.space.connection()(p))(c.i - 1, c.j - 1, c.k - 1);
      m = std::max(m, std::abs(got - evaluate(claimed, p)));
    }
    const bool diagonal = c.i == c.j && c.j == c.k;
    (diagonal ? diag_max : off_max) = std::max(diagonal ? diag_max : off_max, m);
    entries.push_back({{"index", std::to_string(c.i) + "," + std::to_string(c.j) + "," + std::to_string(c.k)},
                       {"claimed", c.expr},
                       {"claimed_at_1_2_3", evaluate(claimed, kAnchor)},
                       {"computed_at_1_2_3", values(ex.space.connection()(kAnchor))(c.i - 1, c.j - 1, c.k - 1)},
                       {"max_abs", m}});
  }
  json details{{"metric", "diag(u^2, v^2, w^2)"},
               {"points", pts.size()},
               {"diagonal_max_abs", diag_max},
               {"entries", entries},
               {"note",
                "the standard formula gives 1/u, 1/v, 1/w on the diagonal and 0 for every other entry; "
                "the listed off-diagonal values v/u^2, w/u^2, ... are not Christoffel symbols of this metric"}};
  return finding("christoffel_table", "Christoffel symbols of diag(u^2, v^2, w^2)", off_max, 1e-12,
                 std::move(details));
}

// (b) Direct versus structured assembly of the basic Weyl-type invariant.
json weyl_assembly(const AuditOptions& o) {
  Example ex;
  const MappingSpec m = fplanar_as_omega(ex.space, ex.mapping);
  const auto pts = sample_points(o.seed + 1, 5, 3, 1.0, 2.0);
  double fp = 0.0;
  for (const auto& p : pts) {
    fp = std::max(fp, max_abs_diff(basic_weyl(ex.space, m.source, p, WeylAssembly::direct),
                                   basic_weyl(ex.space, m.source, p, WeylAssembly::structured)));
    fp = std::max(fp, max_abs_diff(basic_weyl(ex.target, m.target, p, WeylAssembly::direct),
                                   basic_weyl(ex.target, m.target, p, WeylAssembly::structured)));
  }
  std::mt19937_64 rng(o.seed + 2);
  std::uniform_real_distribution<double> sdist(-1.0, 1.0);
  const auto rpts = sample_points(o.seed + 3, 20, 3, 1.0, 2.0);
  double rnd = 0.0;
  for (const auto& p : rpts) {
    const OmegaSpec w = random_omega(rng, ex.chart, {sdist(rng), sdist(rng), sdist(rng)});
    rnd = std::max(rnd, max_abs_diff(basic_weyl(ex.space, w, p, WeylAssembly::direct),
                                     basic_weyl(ex.space, w, p, WeylAssembly::structured)));
  }
  json details{{"fplanar_example_max_abs", fp},
               {"fplanar_example_points", pts.size()},
               {"random_specs_max_abs", rnd},
               {"random_specs", rpts.size()}};
  return finding("basic_weyl_assembly", "Basic Weyl-type invariant: direct versus structured assembly",
                 std::max(fp, rnd), 1e-9, std::move(details));
}

// (c) Invariance of the derived Weyl-type object for general omega pairs.
json general_omega(const AuditOptions& o) {
  Example ex;
  const SValues cases[] = {{1.0, 0.7, 0.4}, {1.0, 0.5, 0.0}, {0.6, -0.8, 0.5}};
  const auto pts = sample_points(o.seed + 4, o.points, 3, 1.0, 2.0);
  std::mt19937_64 rng(o.seed + 5);
  const std::vector<Invariant> invs{Invariant::basic_thomas,       Invariant::basic_weyl_direct,
                                    Invariant::basic_weyl_structured, Invariant::derived_thomas,
                                    Invariant::derived_weyl_first, Invariant::derived_weyl_second,
                                    Invariant::derived_weyl};
  double worst = 0.0;
  json runs = json::array();
  for (const SValues& s : cases) {
    MappingSpec m{random_omega(rng, ex.chart, s), random_omega(rng, ex.chart, s), Field()};
    const Space target = apply_mapping(ex.space, m);
    VerifyRequest rq;
    rq.invariants = invs;
    rq.omegas = m;
    rq.tol = o.tol;
    rq.threads = o.threads;
    const auto rep = verify_invariance(ex.space, target, rq, pts);
    worst = nan_max(worst, rep.at("derived_weyl").max_abs);
    runs.push_back({{"s", {s.s1, s.s2, s.s3}}, {"max_abs", report_summary(rep)}});
  }
  json details{{"source", "diag(u^2, v^2, w^2)"},
               {"omega_fields", "independent random polynomials for both spaces"},
               {"points", pts.size()},
               {"runs", runs}};
  return finding("general_omega_weyl", "Derived Weyl-type invariant under general omega pairs", worst, o.tol,
                 std::move(details));
}

// Derived Thomas-type object for s1 != 1.
json derived_thomas_s1(const AuditOptions& o) {
  Example ex;
  const auto pts = sample_points(o.seed + 6, o.points, 3, 1.0, 2.0);
  std::mt19937_64 rng(o.seed + 7);
  json runs = json::array();
  double worst = 0.0;
  for (double s1 : {0.5, 1.0, 2.0}) {
    const SValues s{s1, 0.3, -0.2};
    MappingSpec m{random_omega(rng, ex.chart, s), random_omega(rng, ex.chart, s), Field()};
    const Space target = apply_mapping(ex.space, m);
    double disc = 0.0;
    double model = 0.0;
    for (const auto& p : pts) {
      const TensorValue d =
          values(derived_thomas(target, m.target, p)) - values(derived_thomas(ex.space, m.source, p));
      const TensorValue dr = values(m.target.rho(p)) - values(m.source.rho(p));
      const double c = s1 * (1.0 - s1);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) {
            double pred = 0.0;
            if (i == j) pred += c * dr(k);
            if (i == k) pred += c * dr(j);
            disc = std::max(disc, std::abs(d(i, j, k)));
            model = std::max(model, std::abs(d(i, j, k) - pred));
          }
    }
    if (s1 != 1.0) worst = std::max(worst, disc);
    runs.push_back({{"s", {s.s1, s.s2, s.s3}}, {"max_abs", disc}, {"model_residual", model}});
  }
  json details{{"points", pts.size()},
               {"runs", runs},
               {"model", "target - source = s1 (1 - s1) (d^i_j dr_k + d^i_k dr_j), dr = rho-bar - rho"}};
  return finding("derived_thomas_s1", "Derived Thomas-type invariant for s1 other than 1", worst, o.tol,
                 std::move(details));
}

// F-planar mapping of the example: every invariant, both derivative modes.
json fplanar_mapping(const AuditOptions& o, bool source_derivatives) {
  Example ex;
  VerifyRequest rq;
  rq.invariants = classical_invariants();
  for (Invariant i : omega_invariants()) rq.invariants.push_back(i);
  for (Invariant i : fplanar_literal_invariants()) rq.invariants.push_back(i);
  rq.omegas = fplanar_as_omega(ex.space, ex.mapping);
  rq.fplanar = fplanar_sides(ex.mapping);
  rq.source_derivatives = source_derivatives;
  rq.tol = o.tol;
  rq.threads = o.threads;
  const auto pts = sample_points(o.seed, o.points, 3, 1.0, 2.0);
  const auto rep = verify_invariance(ex.space, ex.target, rq, pts);
  const double worst = report_max(rep, {"fplanar_thomas", "fplanar_weyl_basic", "fplanar_weyl_derived"});
  json details{{"psi", "(v, u, 0)"},
               {"sigma", "(0, 0, ln(1 + u^2 + v^2 + w^2))"},
               {"F", "diag(sin u, cos v, w)"},
               {"points", pts.size()},
               {"derivatives", source_derivatives ? "source connection" : "own connection"},
               {"max_abs", report_summary(rep)}};
  if (source_derivatives) {
    return finding("derivative_space", "F-planar invariants with target derivatives taken in the source",
                   worst, o.tol, std::move(details), true);
  }
  return finding("fplanar_invariance", "F-planar invariants of the example mapping", worst, o.tol,
                 std::move(details));
}

// Specialized F-planar building blocks against the general ones at s = (1, 1/2, 0).
json fplanar_reductions(const AuditOptions& o) {
  Example ex;
  const MappingSpec m = fplanar_as_omega(ex.space, ex.mapping);
  const FPlanarSides sides = fplanar_sides(ex.mapping);
  const auto pts = sample_points(o.seed + 8, 10, 3, 1.0, 2.0);
  double zeta_res = 0.0, zeta_res_plus = 0.0, dee_group = 0.0, dee_group_diff = 0.0;
  double thomas_res = 0.0, weyl_res = 0.0;
  for (const auto& p : pts) {
    const JetTensor zg = zeta(ex.space, m.source, p);
    zeta_res = std::max(zeta_res, max_abs_diff(zg, fplanar::zeta(ex.space, sides.F, sides.sigma_source, p)));
    zeta_res_plus =
        std::max(zeta_res_plus, max_abs_diff(zg, fplanar::zeta(ex.space, sides.F, sides.sigma_target, p)));
    const TensorValue gs =
        values(dee(ex.space, m.source, p)) - values(fplanar::dee(ex.space, sides.F, sides.sigma_source, p));
    const TensorValue gt =
        values(dee(ex.target, m.target, p)) - values(fplanar::dee(ex.target, sides.F, sides.sigma_target, p));
    dee_group = std::max(dee_group, max_abs(gs));
    dee_group_diff = std::max(dee_group_diff, max_abs_diff(gs, gt));
    thomas_res = std::max(thomas_res, max_abs_diff(derived_thomas(ex.space, m.source, p),
                                                   fplanar::thomas(ex.space, sides.F, sides.sigma_source, p)));
    weyl_res = std::max(weyl_res, max_abs_diff(derived_weyl_chain(ex.space, m.source, p).final,
                                               fplanar::weyl_derived(ex.space, sides.F, sides.sigma_source, p)));
  }
  json details{
      {"points", pts.size()},
      {"zeta_max_abs", zeta_res},
      {"zeta_max_abs_with_plus_sigma", zeta_res_plus},
      {"dee_quadratic_group_max_abs", dee_group},
      {"dee_quadratic_group_source_target_max_abs", dee_group_diff},
      {"derived_thomas_max_abs", thomas_res},
      {"derived_weyl_max_abs", weyl_res},
      {"note",
       "the general D keeps the quadratic F-sigma group that the specialized form drops; the group is "
       "quadratic in sigma, so it is the same in both spaces"}};
  return finding("fplanar_reductions", "Specialized F-planar zeta, D, Thomas and Weyl objects", zeta_res, 1e-10,
                 std::move(details));
}

// Thomas-type invariant written through the classical Thomas parameter.
json thomas_prime(const AuditOptions& o) {
  Example ex;
  const FPlanarSides sides = fplanar_sides(ex.mapping);
  const auto pts = sample_points(o.seed + 9, 10, 3, 1.0, 2.0);
  double restored = 0.0;
  double literal = 0.0;
  for (const auto& p : pts) {
    restored = std::max(restored, max_abs_diff(fplanar::thomas(ex.space, sides.F, sides.sigma_source, p),
                                               fplanar::thomas_prime(ex.space, sides.F, sides.sigma_source, p)));
    // Without d^i_k the last term is added to every entry instead of i == k.
    const TensorValue F = values(sides.F(p));
    const TensorValue s = values(sides.sigma_source(p));
    const double trace = F(0, 0) + F(1, 1) + F(2, 2);
    for (int j = 0; j < 3; ++j) {
      double fs = trace * s(j);
      for (int a = 0; a < 3; ++a) fs += F(a, j) * s(a);
      literal = std::max(literal, std::abs(fs) / 8.0);
    }
  }
  json details{{"points", pts.size()},
               {"with_kronecker_restored_max_abs", restored},
               {"as_printed_max_abs", literal},
               {"note", "the second trace term needs d^i_k to match the first form"}};
  return finding("thomas_prime_kronecker", "Second form of the F-planar Thomas-type invariant", literal, 1e-12,
                 std::move(details));
}

// Sign and index conventions on the unit 2-sphere.
json conventions(const AuditOptions& o) {
  const Chart chart({"u", "v"});
  const Space sphere = Space::from_metric(TensorField::parse(chart, kBilinear, {"1", "0", "0", "sin(u)^2"}));
  const std::vector<double> x{std::numbers::pi / 3.0, 0.5};
  const TensorValue r = values(curvature(sphere, x));
  const TensorValue last = values(ricci(sphere, x, RicciConvention::last));
  const TensorValue middle = values(ricci(sphere, x, RicciConvention::middle));
  const double w_last = max_abs(values(weyl(sphere, x, RicciConvention::last)));
  const double w_middle = max_abs(values(weyl(sphere, x, RicciConvention::middle)));

  Example ex;
  VerifyRequest rq;
  rq.invariants = {Invariant::weyl, Invariant::fplanar_weyl_basic, Invariant::fplanar_weyl_derived};
  rq.fplanar = fplanar_sides(ex.mapping);
  rq.tol = o.tol;
  rq.threads = o.threads;
  const auto pts = sample_points(o.seed, o.points, 3, 1.0, 2.0);
  rq.ricci = RicciConvention::middle;
  const auto rep_middle = verify_invariance(ex.space, ex.target, rq, pts);
  rq.ricci = RicciConvention::last;
  const auto rep_last = verify_invariance(ex.space, ex.target, rq, pts);

  json details{{"sphere_point", x},
               {"R^1_212", r(0, 1, 0, 1)},
               {"minus_sin2u", -std::pow(std::sin(x[0]), 2)},
               {"ricci_last_11", last(0, 0)},
               {"ricci_middle_11", middle(0, 0)},
               {"sphere_weyl_last_max_abs", w_last},
               {"sphere_weyl_middle_max_abs", w_middle},
               {"fplanar_example_last", report_summary(rep_last)},
               {"fplanar_example_middle", report_summary(rep_middle)},
               {"note",
                "R^i_jmn = d_n L^i_jm - d_m L^i_jn + ...; the Ricci tensor contracts i with the last slot by "
                "default, which makes the sphere's Ricci tensor +g"}};
  return finding("conventions", "Curvature and Ricci conventions", w_last, 1e-9,
                 std::move(details), true);
}

// Quoted numbers of the worked example at (1, 2, 3).
json example_values() {
  Example ex("0", "0");
  const double ln15 = std::log(15.0);
  const TensorValue rho = values(fplanar_rho(ex.space, ex.mapping.F, ex.mapping.sigma)(kAnchor));
  const TensorValue calf = values(fplanar::calF(ex.mapping.F(kAnchor), ex.mapping.sigma(kAnchor)));
  const TensorValue tr = contract(calf, 0, 2);
  const TensorValue lbar = values(ex.target.connection()(kAnchor));
  struct Quote {
    const char* what;
    double quoted;
    double computed;
  };
  const Quote quotes[] = {
      {"rho_3", 2.2581, rho(2)},
      {"calF^a_3a", 17.5255, tr(2)},
      {"calF^3_33 = 6 ln 15", 6.0 * ln15, calf(2, 2, 2)},
      {"calF^1_13 = sin 1 ln 15", std::sin(1.0) * ln15, calf(0, 0, 2)},
      {"L-bar^3_33 = 1/3 + 6 ln 15", 16.5816, lbar(2, 2, 2)},
  };
  double worst = 0.0;
  json rows = json::array();
  for (const auto& q : quotes) {
    const double d = std::abs(q.computed - q.quoted);
    worst = std::max(worst, d);
    rows.push_back({{"quantity", q.what}, {"quoted", q.quoted}, {"computed", q.computed}, {"abs_diff", d}});
  }
  json details{{"point", kAnchor},
               {"values", rows},
               {"note",
                "quoted to four decimals; calF^a_3a = (sin 1 + cos 2 + 3) ln 15 + 3 ln 15 = 17.4001 and "
                "rho_3 = 2.25835"}};
  return finding("example_values", "Quoted numeric values of the worked example", worst, 1e-4, std::move(details));
}

}  // namespace

std::string random_polynomial(std::mt19937_64& rng, const Chart& chart) {
  std::uniform_real_distribution<double> coef(-0.5, 0.5);
  std::uniform_int_distribution<int> pick(0, chart.dim() - 1);
  auto c = [&] { return format_double(std::round(coef(rng) * 1000.0) / 1000.0); };
  std::string out = c();
  for (const auto& name : chart.names()) out += " + (" + c() + ")*" + name;
  for (int t = 0; t < 2; ++t) {
    out += " + (" + c() + ")*" + chart.names()[static_cast<std::size_t>(pick(rng))] + "*" +
           chart.names()[static_cast<std::size_t>(pick(rng))];
  }
  return out;
}

OmegaSpec random_omega(std::mt19937_64& rng, const Chart& chart, SValues s) {
  const int n = chart.dim();
  auto entries = [&](std::size_t count) {
    std::vector<std::string> e(count);
    for (auto& x : e) x = random_polynomial(rng, chart);
    return e;
  };
  OmegaSpec w(n, s);
  w.rho = TensorField::parse(chart, kCovector, entries(static_cast<std::size_t>(n)));
  w.sigma = TensorField::parse(chart, kCovector, entries(static_cast<std::size_t>(n)));
  w.F = TensorField::parse(chart, kAffinor, entries(static_cast<std::size_t>(n * n)));
  w.phi = TensorField::parse(chart, kVector, entries(static_cast<std::size_t>(n)));
  std::vector<std::string> sym(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      sym[static_cast<std::size_t>(i * n + j)] = random_polynomial(rng, chart);
      sym[static_cast<std::size_t>(j * n + i)] = sym[static_cast<std::size_t>(i * n + j)];
    }
  w.sigma2 = TensorField::parse(chart, kBilinear, sym);
  return w;
}

json run_audit(const AuditOptions& o) {
  json findings = json::array();
  findings.push_back(christoffel_table(o));
  findings.push_back(weyl_assembly(o));
  findings.push_back(general_omega(o));
  findings.push_back(derived_thomas_s1(o));
  findings.push_back(fplanar_mapping(o, false));
  findings.push_back(fplanar_reductions(o));
  findings.push_back(thomas_prime(o));
  findings.push_back(conventions(o));
  findings.push_back(example_values());
  findings.push_back(fplanar_mapping(o, true));
  return {{"tol", o.tol}, {"seed", o.seed}, {"points", o.points}, {"findings", findings}};
}

std::string findings_text(const json& audit) {
  std::ostringstream os;
  os << "audit findings (seed " << audit.at("seed").get<std::uint64_t>() << ", tol "
     << audit.at("tol").get<double>() << ")\n";
  int k = 0;
  for (const auto& f : audit.at("findings")) {
    os << '\n' << ++k << ". [" << f.at("status").get<std::string>() << "] " << f.at("title").get<std::string>()
       << "\n   id: " << f.at("id").get<std::string>() << "\n   max_abs: ";
    if (f.at("max_abs").is_null()) {
      os << "nan";
    } else {
      os << f.at("max_abs").get<double>();
    }
    os << " (tol " << f.at("tol").get<double>() << ")\n";
    for (const auto& [key, val] : f.at("details").items()) {
      os << "   " << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump()) << '\n';
    }
  }
  return os.str();
}

}  // namespace tinv::cli
