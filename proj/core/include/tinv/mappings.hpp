#pragma once

// Target spaces built from mapping data, F-planar mappings, and the
// pointwise invariance verifier.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tinv/invariants.hpp"

namespace tinv {

/// Deformation L-bar = L + (w-bar - w) + (t-bar - t). Both omegas must share
/// their s-values.
struct MappingSpec {
  OmegaSpec source;
  OmegaSpec target;
  Field torsion_delta;  // optional antisymmetric (1,2) field
};

Space apply_mapping(const Space& source, const MappingSpec& m);

/// L-bar_{jk} = L_{jk} + d^i_k p_j + d^i_j p_k + F^i_k s_j + F^i_j s_k.
struct FPlanarSpec {
  Field psi;
  Field sigma;
  Field F;
};

Space fplanar_build(const Space& source, const FPlanarSpec& f);
/// (F, -sigma, -psi): the inverse mapping is again F-planar.
FPlanarSpec fplanar_inverse(const FPlanarSpec& f);

/// The F-planar mapping written as an omega pair with s = (1, 1/2, 0).
/// The omega 1-form of the source is -sigma and that of the target +sigma,
/// so that w-bar - w = F^i_j s_k + F^i_k s_j; rho follows from the trace
/// formula and rho-bar = rho + psi.
MappingSpec fplanar_as_omega(const Space& source, const FPlanarSpec& f);

/// r_j = (L^a_{ja} + F s_j / 2 + F^a_j s_a / 2) / (N+1).
Field fplanar_rho(const Space& space, const Field& F, const Field& sigma);

struct RecoveredPsi {
  Field psi;
  Field rho;
  double residual = 0.0;  // max |rebuilt - target| over the checked points
};
/// psi_j = (L-bar^a_{ja} - L^a_{ja} - F^a_j s_a - F s_j) / (N+1), checked by
/// rebuilding the target at `points`. Throws NotFPlanarError past `tol`.
RecoveredPsi fplanar_recover(const Space& source, const Space& target, const Field& F,
                             const Field& sigma, const std::vector<std::vector<double>>& points,
                             double tol = 1e-8);

/// Literal F-planar assemblies; `sigma` is the omega 1-form of `space`.
namespace fplanar {

/// cF^i_{jk} = F^i_k s_j + F^i_j s_k.
JetTensor calF(const JetTensor& F, const JetTensor& sigma);
JetTensor thomas(const Space& space, const Field& F, const Field& sigma, Point x);
/// Same invariant written through the classical Thomas parameter.
JetTensor thomas_prime(const Space& space, const Field& F, const Field& sigma, Point x);
/// -1/2 (F^i_j s_m + F^i_m s_j)_{|n}.
JetTensor dee(const Space& space, const Field& F, const Field& sigma, Point x,
              const InvariantOptions& opts = {});
JetTensor zeta(const Space& space, const Field& F, const Field& sigma, Point x,
               const InvariantOptions& opts = {});
JetTensor weyl_basic(const Space& space, const Field& F, const Field& sigma, Point x,
                     const InvariantOptions& opts = {});
JetTensor weyl_derived(const Space& space, const Field& F, const Field& sigma, Point x,
                       const InvariantOptions& opts = {});

}  // namespace fplanar

/// `count` points uniform in [lo, hi]^dim from a seeded mt19937_64.
std::vector<std::vector<double>> sample_points(std::uint64_t seed, int count, int dim, double lo,
                                               double hi);

enum class Invariant {
  thomas,
  weyl,
  basic_thomas,
  basic_weyl_direct,
  basic_weyl_structured,
  derived_thomas,
  derived_weyl_first,
  derived_weyl_second,
  derived_weyl,
  fplanar_thomas,
  fplanar_thomas_prime,
  fplanar_weyl_basic,
  fplanar_weyl_derived,
};

std::string to_string(Invariant inv);
Invariant invariant_from_string(const std::string& name);
const std::vector<Invariant>& classical_invariants();
const std::vector<Invariant>& omega_invariants();
const std::vector<Invariant>& fplanar_literal_invariants();

/// What one invariant may need on one side of a mapping.
struct InvariantInputs {
  const OmegaSpec* omega = nullptr;
  const Field* F = nullptr;
  const Field* sigma = nullptr;
  InvariantOptions opts;
};
/// Throws ConfigError when a required input is missing.
TensorValue evaluate_invariant(Invariant inv, const Space& space, const InvariantInputs& in, Point x);

/// The F-planar omega 1-forms on both sides of a mapping.
struct FPlanarSides {
  Field F;
  Field sigma_source;
  Field sigma_target;
};
FPlanarSides fplanar_sides(const FPlanarSpec& f);

struct VerifyRequest {
  std::vector<Invariant> invariants;
  std::optional<MappingSpec> omegas;    // needed by basic and derived invariants
  std::optional<FPlanarSides> fplanar;  // needed by the literal F-planar assemblies
  RicciConvention ricci = RicciConvention::last;
  /// Take covariant derivatives in the target with the source connection.
  bool source_derivatives = false;
  double tol = 1e-8;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct PointDiscrepancy {
  std::vector<double> point;
  double max_abs = 0.0;  // NaN when evaluation failed
  std::string error;
};

struct InvariantResult {
  std::string name;
  std::vector<PointDiscrepancy> points;
  double max_abs = 0.0;
  bool passed = false;
};

struct InvarianceReport {
  double tol = 0.0;
  std::vector<InvariantResult> results;

  bool passed() const;
  const InvariantResult& at(const std::string& name) const;
};

/// Evaluates each invariant on (source, w) and (target, w-bar) at every
/// point and records max |source - target|. Points are processed in
/// parallel; evaluation failures are recorded per point. A request naming an
/// invariant whose inputs are missing throws ConfigError before any work.
InvarianceReport verify_invariance(const Space& source, const Space& target,
                                   const VerifyRequest& request,
                                   const std::vector<std::vector<double>>& points);

nlohmann::json to_json(const InvarianceReport& report);
std::string to_table(const InvarianceReport& report);

}  // namespace tinv
