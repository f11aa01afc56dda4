#include "tinv_cli/config.hpp"

namespace tinv::cli {
namespace {

// Metric diag(u^2, v^2, w^2) with affinor diag(sin u, cos v, w) and
// sigma = (0, 0, ln(1 + u^2 + v^2 + w^2)).
constexpr const char* kExample = R"json({
  "name": "example-r3",
  "chart": ["u", "v", "w"],
  "space": {"metric": [["u^2", "0", "0"], ["0", "v^2", "0"], ["0", "0", "w^2"]]},
  "fplanar": {
    "psi": ["0", "0", "0"],
    "sigma": ["0", "0", "ln(1 + u^2 + v^2 + w^2)"],
    "F": [["sin(u)", "0", "0"], ["0", "cos(v)", "0"], ["0", "0", "w"]]
  },
  "points": {"list": [[1, 2, 3]], "seed": 7, "count": 0, "box": [1, 2]},
  "outputs": {
    "objects": ["christoffel", "curvature", "ricci", "thomas", "weyl"],
    "invariants": ["thomas", "fplanar_thomas", "fplanar_weyl_basic", "fplanar_weyl_derived"]
  }
})json";

constexpr const char* kFlat = R"json({
  "name": "flat3",
  "chart": ["x", "y", "z"],
  "space": {"metric": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]},
  "points": {"list": [[0, 0, 0], [1, -2, 0.5]]},
  "outputs": {"objects": ["christoffel", "curvature", "thomas", "weyl"], "invariants": ["thomas", "weyl"]}
})json";

constexpr const char* kSphere = R"json({
  "name": "sphere2",
  "chart": ["u", "v"],
  "space": {"metric": [["1", "0"], ["0", "sin(u)^2"]]},
  "points": {"list": [[1.0471975511965976, 0.5]], "seed": 3, "count": 10, "box": [0.5, 2.5]},
  "outputs": {"objects": ["christoffel", "curvature", "ricci", "weyl", "riemannian_weyl"]}
})json";

// Geodesic mapping: psi = d(u + v^2), no F-planar part.
constexpr const char* kGeodesic = R"json({
  "name": "geodesic-demo",
  "chart": ["u", "v", "w"],
  "space": {"metric": [["u^2", "0", "0"], ["0", "v^2", "0"], ["0", "0", "w^2"]]},
  "fplanar": {"psi": ["1", "2*v", "0"], "sigma": ["0", "0", "0"], "F": [["0", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]]},
  "points": {"seed": 7, "count": 20, "box": [1, 2]},
  "outputs": {
    "objects": ["thomas", "weyl"],
    "invariants": ["thomas", "weyl", "basic_thomas", "basic_weyl_direct", "derived_thomas", "derived_weyl"]
  },
  "tol": 1e-9
})json";

constexpr const char* kFPlanar = R"json({
  "name": "fplanar-demo",
  "chart": ["u", "v", "w"],
  "space": {"metric": [["u^2", "0", "0"], ["0", "v^2", "0"], ["0", "0", "w^2"]]},
  "fplanar": {
    "psi": ["v", "u", "0"],
    "sigma": ["0", "0", "ln(1 + u^2 + v^2 + w^2)"],
    "F": [["sin(u)", "0", "0"], ["0", "cos(v)", "0"], ["0", "0", "w"]]
  },
  "points": {"seed": 7, "count": 20, "box": [1, 2]},
  "outputs": {
    "objects": ["thomas", "weyl"],
    "invariants": ["fplanar_thomas", "fplanar_thomas_prime", "fplanar_weyl_basic", "fplanar_weyl_derived",
                   "basic_thomas", "basic_weyl_direct", "basic_weyl_structured", "derived_thomas",
                   "derived_weyl"]
  },
  "tol": 1e-8
})json";

struct Builtin {
  const char* name;
  const char* text;
};

constexpr Builtin kBuiltins[] = {
    {"example-r3", kExample}, {"flat3", kFlat},         {"sphere2", kSphere},
    {"geodesic-demo", kGeodesic}, {"fplanar-demo", kFPlanar},
};

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& b : kBuiltins) out.emplace_back(b.name);
  return out;
}

std::optional<nlohmann::json> builtin_config(std::string_view name) {
  for (const auto& b : kBuiltins) {
    if (name == b.name) return nlohmann::json::parse(b.text);
  }
  return std::nullopt;
}

}  // namespace tinv::cli
