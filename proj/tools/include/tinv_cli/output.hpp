#pragma once

// Tensor tables as written by the command line tool. Indices in CSV and
// JSON are 1-based.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tinv_cli/config.hpp"

namespace tinv::cli {

struct ObjectTable {
  std::string name;
  std::string space;  // "source" or "target"
  Signature variance;
  std::vector<std::vector<double>> points;
  std::vector<TensorValue> values;  // one per point
};

/// Object names understood by compute_objects().
const std::vector<std::string>& object_names();

/// Evaluates `names` on the job's source space, and on the target when the
/// job has one. Objects that need F-planar data are skipped for the target.
std::vector<ObjectTable> compute_objects(const Job& job, const std::vector<std::string>& names,
                                         const std::vector<std::vector<double>>& points,
                                         RicciConvention ricci);

/// Invariant values on each side of the job's mapping.
std::vector<ObjectTable> compute_invariants(const Job& job, const std::vector<Invariant>& invariants,
                                            const std::vector<std::vector<double>>& points,
                                            RicciConvention ricci);

/// One block per table: "# object NAME space SPACE", a header, then one row
/// per point and index tuple. Values use the shortest round-trip form.
std::string to_csv(const std::vector<ObjectTable>& tables, const Chart& chart);
nlohmann::json to_json(const std::vector<ObjectTable>& tables, const Chart& chart);

}  // namespace tinv::cli
