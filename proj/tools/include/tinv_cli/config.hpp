#pragma once

// Job configuration: a JSON document describing a chart, a space, optional
// mapping data and the points to evaluate at. Index keys are 1-based
// ("1,2,3"); everything inside the library is 0-based.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tinv/mappings.hpp"

namespace tinv::cli {

/// Dense row-major expression text for one tensor field.
struct TensorSpec {
  Signature variance;
  std::vector<std::string> entries;
  friend bool operator==(const TensorSpec&, const TensorSpec&) = default;
};

/// Fields missing from the document are stored as zeros.
struct OmegaBlock {
  SValues s;
  TensorSpec rho;
  TensorSpec sigma;
  TensorSpec F;
  TensorSpec phi;
  TensorSpec sigma2;
  friend bool operator==(const OmegaBlock&, const OmegaBlock&) = default;
};

struct FPlanarBlock {
  TensorSpec psi;
  TensorSpec sigma;
  TensorSpec F;
  friend bool operator==(const FPlanarBlock&, const FPlanarBlock&) = default;
};

struct PointsBlock {
  std::vector<std::vector<double>> list;
  std::uint64_t seed = 1;
  int count = 0;
  double lo = 1.0;
  double hi = 2.0;
  friend bool operator==(const PointsBlock&, const PointsBlock&) = default;
};

enum class SpaceKind { metric, connection };

struct JobConfig {
  std::string name;
  std::vector<std::string> chart;
  SpaceKind kind = SpaceKind::metric;
  TensorSpec space;
  std::optional<OmegaBlock> omega;
  std::optional<OmegaBlock> omega_bar;
  std::optional<TensorSpec> torsion_delta;
  std::optional<FPlanarBlock> fplanar;
  PointsBlock points;
  std::vector<std::string> objects;
  std::vector<std::string> invariants;
  std::string format = "csv";
  double tol = 1e-8;
  RicciConvention ricci = RicciConvention::last;
  friend bool operator==(const JobConfig&, const JobConfig&) = default;
};

/// Throws ConfigError (or ParseError for bad expressions).
JobConfig parse_config(const nlohmann::json& doc);
/// Normalized form: expressions reprinted, dense arrays up to rank 2,
/// sparse maps of non-zero entries for rank 3, every field spelled out.
nlohmann::json emit_config(const JobConfig& cfg);

std::vector<std::string> builtin_names();
std::optional<nlohmann::json> builtin_config(std::string_view name);
/// A built-in name, or a path to a JSON file.
JobConfig load_config(const std::string& name_or_path);

std::string_view to_string(RicciConvention c) noexcept;
RicciConvention ricci_from_string(std::string_view s);

/// Everything a command needs, built from a config.
struct Job {
  Chart chart;
  Space source;
  std::optional<Space> target;
  std::optional<MappingSpec> omegas;
  std::optional<FPlanarSpec> fplanar;
};

Job build_job(const JobConfig& cfg);
TensorField make_field(const Chart& chart, const TensorSpec& spec);
/// Explicit list followed by `count` sampled points.
std::vector<std::vector<double>> job_points(const JobConfig& cfg);

}  // namespace tinv::cli
