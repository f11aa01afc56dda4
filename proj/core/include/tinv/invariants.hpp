#pragma once

// The omega-parameterized family of mapping invariants.
//
//   w^i_{jk} = s1 (d^i_j r_k + d^i_k r_j) + s2 (F^i_j s_k + F^i_k s_j) + s3 s_{jk} p^i
//
// with 1-forms r (rho) and s (sigma), affinor F, symmetric s_{jk} and
// vector p (phi). Every function below takes one space and the omega bundle
// of that same space; an invariant is something that agrees when evaluated
// on (source, omega) and (target, omega-bar).

#include <span>
#include <vector>

#include "tinv/geometry.hpp"

namespace tinv {

struct SValues {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  friend bool operator==(const SValues&, const SValues&) = default;
};

/// All omega ingredients evaluated at one point.
struct OmegaJets {
  SValues s;
  JetTensor rho;     // r_j
  JetTensor sigma;   // s_j
  JetTensor F;       // F^i_j
  JetTensor phi;     // p^i
  JetTensor sigma2;  // s_{jk}
};

struct OmegaSpec {
  OmegaSpec() = default;
  /// Every field zero.
  explicit OmegaSpec(int dim, SValues s = {});

  int dim = 0;
  SValues s;
  Field rho;
  Field sigma;
  Field F;
  Field phi;
  Field sigma2;

  /// Shape check of all five fields; throws TensorError.
  void validate() const;
  /// s_{jk} == s_{kj} at every point within `tol`; throws ConfigError.
  void check_symmetric(std::span<const std::vector<double>> points, double tol = 1e-12) const;

  OmegaJets at(Point x) const;
};

struct InvariantOptions {
  RicciConvention ricci = RicciConvention::last;
  /// When set, covariant derivatives inside an invariant use this space's
  /// connection instead of the connection of the space being evaluated.
  const Space* derivative_space = nullptr;
};

/// F = F^a_a.
Jet affinor_trace(const JetTensor& F);

JetTensor omega(const OmegaJets& w);
TensorValue omega(const OmegaSpec& spec, Point x);
Field omega_field(const OmegaSpec& spec);

/// w^a_{jm} w^i_{an} assembled group by group from the ingredients.
JetTensor omega_square_expanded(const OmegaJets& w);
/// The same product by direct contraction of the assembled w.
JetTensor omega_square_direct(const JetTensor& omega);

/// L^i_{jk} - w^i_{jk}.
JetTensor basic_thomas(const Space& space, const OmegaSpec& spec, Point x);

/// z_{ij} = s1 r_{i|j} + s1^2 r_i r_j + s1 s2 (F^a_i s_j + F^a_j s_i) r_a
///          + s1 s3 s_{ij} r_a p^a
JetTensor zeta(const Space& space, const OmegaSpec& spec, Point x,
               const InvariantOptions& opts = {});

/// The curvature-like correction D^i_{jmn}: quadratic F/s/p groups minus the
/// covariant derivatives of the s2 and s3 parts of omega.
JetTensor dee(const Space& space, const OmegaSpec& spec, Point x,
              const InvariantOptions& opts = {});

enum class WeylAssembly {
  direct,      // R - w_{jm|n} + w_{jn|m} + w^a_{jm} w^i_{an} - w^a_{jn} w^i_{am}
  structured,  // R - d^i_j z_[mn] - d^i_m z_jn + d^i_n z_jm + D_jmn - D_jnm
};
JetTensor basic_weyl(const Space& space, const OmegaSpec& spec, Point x,
                     WeylAssembly mode = WeylAssembly::direct,
                     const InvariantOptions& opts = {});

/// s1 r_j expressed through traces, assuming omega is the omega of a mapping:
///   (L^a_{ja} - s2 (F^a_j s_a + F s_j) - s3 s_{ja} p^a) / (N+1)
JetTensor reduced_trace(const Space& space, const OmegaSpec& spec, Point x);
/// r_j = reduced_trace / s1; requires s1 != 0.
Field eliminated_rho(const Space& space, const OmegaSpec& spec);

/// Thomas-type invariant with r eliminated.
JetTensor derived_thomas(const Space& space, const OmegaSpec& spec, Point x);
/// s1 T + (1 - s1) L - (s2 and s3 omega parts) + trace corrections.
JetTensor derived_thomas_correlation(const Space& space, const OmegaSpec& spec, Point x);

struct WeylChain {
  JetTensor first;   // with both D^a_{a[..]} and D^a_{j[..a]} terms
  JetTensor second;  // D^a_{a[..]} terms dropped
  JetTensor final;   // W + D_{jmn} - D_{jnm}, assembled from R and Ricci
};
WeylChain derived_weyl_chain(const Space& space, const OmegaSpec& spec, Point x,
                             const InvariantOptions& opts = {});
/// weyl(space) + D_jmn - D_jnm.
JetTensor derived_weyl_correlation(const Space& space, const OmegaSpec& spec, Point x,
                                   const InvariantOptions& opts = {});

}  // namespace tinv
