#pragma once

// Discrepancy checks against the published worked example and derivations.
// Every finding is reported with its measured magnitude, whether that is
// zero or not.

#include <cstdint>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "tinv/mappings.hpp"

namespace tinv::cli {

struct AuditOptions {
  std::uint64_t seed = 7;
  int points = 20;
  double tol = 1e-8;
  unsigned threads = 0;
};

/// {"tol", "seed", "findings": [{id, title, status, max_abs, details}]}.
/// status is "consistent" when the measured magnitude is within tolerance,
/// "discrepancy" otherwise; a few findings are purely informational ("info").
nlohmann::json run_audit(const AuditOptions& opts);
std::string findings_text(const nlohmann::json& findings);

/// Low-degree polynomial in the chart coordinates with coefficients in
/// [-0.5, 0.5].
std::string random_polynomial(std::mt19937_64& rng, const Chart& chart);
/// Every field populated with random polynomials; sigma2 symmetric.
OmegaSpec random_omega(std::mt19937_64& rng, const Chart& chart, SValues s);

}  // namespace tinv::cli
