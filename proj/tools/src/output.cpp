#include "tinv_cli/output.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "tinv/tensor_io.hpp"

namespace tinv::cli {
namespace {

using Evaluator = std::function<JetTensor(const Space&, Point)>;

void require_fplanar(const Job& job) {
  if (!job.fplanar) throw ConfigError("this object needs an fplanar block");
}

Evaluator evaluator(const std::string& name, const Job& job, RicciConvention ricci) {
  if (name == "christoffel" || name == "connection") {
    return [](const Space& s, Point x) { return s.connection()(x); };
  }
  if (name == "symmetric_connection") return [](const Space& s, Point x) { return s.lsym(x); };
  if (name == "torsion") return [](const Space& s, Point x) { return s.torsion()(x); };
  if (name == "curvature") return [](const Space& s, Point x) { return curvature(s, x); };
  if (name == "ricci") return [ricci](const Space& s, Point x) { return tinv::ricci(s, x, ricci); };
  if (name == "ricci_antisymmetric") {
    return [ricci](const Space& s, Point x) { return ricci_antisymmetric(tinv::ricci(s, x, ricci)); };
  }
  if (name == "thomas") return [](const Space& s, Point x) { return thomas(s, x); };
  if (name == "weyl") return [ricci](const Space& s, Point x) { return weyl(s, x, ricci); };
  if (name == "riemannian_weyl") {
    return [ricci](const Space& s, Point x) { return riemannian_weyl(s, x, ricci); };
  }
  if (name == "calF") {
    require_fplanar(job);
    const FPlanarSpec f = *job.fplanar;
    return [f](const Space&, Point x) { return fplanar::calF(f.F(x), f.sigma(x)); };
  }
  if (name == "calF_trace") {
    require_fplanar(job);
    const FPlanarSpec f = *job.fplanar;
    return [f](const Space&, Point x) { return contract(fplanar::calF(f.F(x), f.sigma(x)), 0, 2); };
  }
  if (name == "fplanar_rho") {
    require_fplanar(job);
    const FPlanarSpec f = *job.fplanar;
    return [f](const Space& s, Point x) { return fplanar_rho(s, f.F, f.sigma)(x); };
  }
  throw ConfigError("unknown object '" + name + "'");
}

bool source_only(const std::string& name) {
  return name == "calF" || name == "calF_trace" || name == "fplanar_rho";
}

void index_string(std::ostringstream& os, std::size_t flat, int rank, int dim) {
  std::vector<int> idx(static_cast<std::size_t>(rank));
  for (int s = rank; s-- > 0;) {
    idx[static_cast<std::size_t>(s)] = static_cast<int>(flat % static_cast<std::size_t>(dim));
    flat /= static_cast<std::size_t>(dim);
  }
  for (int i : idx) os << ',' << i + 1;
}

nlohmann::json nested(const TensorValue& t, std::size_t& cursor, int depth) {
  if (depth == t.rank()) return t[cursor++];
  nlohmann::json arr = nlohmann::json::array();
  for (int i = 0; i < t.dim(); ++i) arr.push_back(nested(t, cursor, depth + 1));
  return arr;
}

}  // namespace

const std::vector<std::string>& object_names() {
  static const std::vector<std::string> names{
      "christoffel", "connection", "symmetric_connection", "torsion", "curvature",  "ricci",
      "ricci_antisymmetric", "thomas", "weyl", "riemannian_weyl", "calF", "calF_trace", "fplanar_rho"};
  return names;
}

std::vector<ObjectTable> compute_objects(const Job& job, const std::vector<std::string>& names,
                                         const std::vector<std::vector<double>>& points,
                                         RicciConvention ricci) {
  std::vector<ObjectTable> out;
  for (const auto& name : names) {
    const Evaluator eval = evaluator(name, job, ricci);
    std::vector<std::pair<std::string, const Space*>> sides{{"source", &job.source}};
    if (job.target && !source_only(name)) sides.emplace_back("target", &*job.target);
    for (const auto& [label, space] : sides) {
      ObjectTable t{name, label, {}, points, {}};
      for (const auto& p : points) t.values.push_back(values(eval(*space, p)));
      if (!t.values.empty()) t.variance = t.values.front().variance();
      out.push_back(std::move(t));
    }
  }
  return out;
}

std::vector<ObjectTable> compute_invariants(const Job& job, const std::vector<Invariant>& invariants,
                                            const std::vector<std::vector<double>>& points,
                                            RicciConvention ricci) {
  std::optional<FPlanarSides> sides;
  if (job.fplanar) sides = fplanar_sides(*job.fplanar);
  InvariantInputs src{job.omegas ? &job.omegas->source : nullptr, sides ? &sides->F : nullptr,
                      sides ? &sides->sigma_source : nullptr, {ricci, nullptr}};
  InvariantInputs tgt{job.omegas ? &job.omegas->target : nullptr, sides ? &sides->F : nullptr,
                      sides ? &sides->sigma_target : nullptr, {ricci, nullptr}};
  std::vector<ObjectTable> out;
  for (Invariant inv : invariants) {
    std::vector<std::tuple<std::string, const Space*, const InvariantInputs*>> runs{
        {"source", &job.source, &src}};
    if (job.target) runs.emplace_back("target", &*job.target, &tgt);
    for (const auto& [label, space, in] : runs) {
      ObjectTable t{to_string(inv), label, {}, points, {}};
      for (const auto& p : points) t.values.push_back(evaluate_invariant(inv, *space, *in, p));
      if (!t.values.empty()) t.variance = t.values.front().variance();
      out.push_back(std::move(t));
    }
  }
  return out;
}

std::string to_csv(const std::vector<ObjectTable>& tables, const Chart& chart) {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : tables) {
    if (!first) os << '\n';
    first = false;
    const int rank = static_cast<int>(t.variance.size());
    os << "# object " << t.name << " space " << t.space << " variance";
    for (Variance v : t.variance) os << ' ' << to_string(v);
    os << "\npoint";
    for (const auto& c : chart.names()) os << ',' << c;
    for (int k = 1; k <= rank; ++k) os << ",i" << k;
    os << ",value\n";
    for (std::size_t p = 0; p < t.points.size(); ++p) {
      const TensorValue& v = t.values[p];
      for (std::size_t flat = 0; flat < v.size(); ++flat) {
        os << p + 1;
        for (double c : t.points[p]) os << ',' << format_double(c);
        index_string(os, flat, rank, v.dim());
        os << ',' << format_double(v[flat]) << '\n';
      }
    }
  }
  return os.str();
}

nlohmann::json to_json(const std::vector<ObjectTable>& tables, const Chart& chart) {
  nlohmann::json j;
  j["chart"] = chart.names();
  j["index_base"] = 1;
  auto& objs = j["objects"] = nlohmann::json::array();
  for (const auto& t : tables) {
    nlohmann::json o;
    o["name"] = t.name;
    o["space"] = t.space;
    auto& var = o["variance"] = nlohmann::json::array();
    for (Variance v : t.variance) var.push_back(to_string(v));
    auto& pts = o["points"] = nlohmann::json::array();
    for (std::size_t p = 0; p < t.points.size(); ++p) {
      std::size_t cursor = 0;
      pts.push_back({{"point", t.points[p]}, {"value", nested(t.values[p], cursor, 0)}});
    }
    objs.push_back(std::move(o));
  }
  return j;
}

}  // namespace tinv::cli
