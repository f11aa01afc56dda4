#pragma once

// Affine connection spaces and their classical objects: Christoffel symbols,
// covariant derivative, curvature, Ricci tensor, Thomas projective parameter
// and Weyl projective tensor.
//
// Curvature convention:
//   R^i_{jmn} = L^i_{jm,n} - L^i_{jn,m} + L^a_{jm} L^i_{an} - L^a_{jn} L^i_{am}
// built from the symmetric part of the connection.

#include <optional>
#include <utility>

#include "tinv/field.hpp"

namespace tinv {

/// Which slot of R^a_{j..} the Ricci tensor contracts with the upper index.
///   last:   R_{jm} = R^a_{jma}
///   middle: R_{jm} = R^a_{jam}
enum class RicciConvention { last, middle };

enum class SpaceOrigin { given_connection, from_metric, derived };

/// A chart together with connection coefficients L^i_{jk}. The symmetric
/// part (the associated space) is what every downstream computation uses;
/// the torsion part is kept for inspection only.
class Space {
 public:
  /// Riemannian space of a symmetric (0,2) metric; its connection is the
  /// Christoffel symbols, evaluated pointwise with a numeric inverse metric.
  static Space from_metric(const TensorField& metric);
  /// Given (1,2) connection coefficients, possibly non-symmetric.
  static Space from_connection(const TensorField& connection);
  /// A space whose connection is computed from other objects.
  static Space from_field(const Chart& chart, Field connection);

  const Chart& chart() const noexcept { return chart_; }
  int dim() const noexcept { return chart_.dim(); }
  SpaceOrigin origin() const noexcept { return origin_; }
  const std::optional<TensorField>& metric() const noexcept { return metric_; }

  const Field& connection() const noexcept { return connection_; }
  const Field& symmetric_connection() const noexcept { return symmetric_; }
  const Field& torsion() const noexcept { return torsion_; }

  JetTensor lsym(Point x) const { return symmetric_(x); }

 private:
  Space(Chart chart, SpaceOrigin origin, std::optional<TensorField> metric, Field connection);

  Chart chart_;
  SpaceOrigin origin_;
  std::optional<TensorField> metric_;
  Field connection_;
  Field symmetric_;
  Field torsion_;
};

/// g^{ij} from g_{ij} by Gauss-Jordan elimination with partial pivoting.
/// Throws SingularMetricError when |det g| < 1e-12.
JetTensor inverse_metric(const JetTensor& metric);

/// Gamma^i_{jk} = 1/2 g^{il} (g_{lk,j} + g_{lj,k} - g_{jk,l}) at x.
JetTensor christoffel(const TensorField& metric, Point x);

struct ConnectionParts {
  JetTensor symmetric;  // (L^i_{jk} + L^i_{kj}) / 2
  JetTensor torsion;    // (L^i_{jk} - L^i_{kj}) / 2
};
ConnectionParts symmetrize_connection(const JetTensor& connection);
std::pair<Field, Field> symmetrize_connection(const Field& connection);

/// t_{..|n}: one extra lower slot appended. +L term per upper slot, -L term
/// per lower slot, with L the symmetric connection at the same point.
JetTensor cov_deriv(const JetTensor& t, const JetTensor& lsym);
JetTensor cov_deriv(const Field& t, const Space& space, Point x);
Field cov_deriv(const Field& t, const Space& space);

/// L^a_{ja}.
JetTensor connection_trace(const JetTensor& lsym);

JetTensor curvature(const JetTensor& lsym);
JetTensor curvature(const Space& space, Point x);

JetTensor ricci(const JetTensor& curvature, RicciConvention convention);
JetTensor ricci(const Space& space, Point x, RicciConvention convention = RicciConvention::last);
/// R_{[mn]} = R_{mn} - R_{nm}.
JetTensor ricci_antisymmetric(const JetTensor& ricci);

/// T^i_{jk} = L^i_{jk} - (d^i_k L^a_{ja} + d^i_j L^a_{ka}) / (N+1).
JetTensor thomas(const JetTensor& lsym);
JetTensor thomas(const Space& space, Point x);

/// W^i_{jmn} = R^i_{jmn} + 1/(N+1) d^i_j R_{[mn]} + N/(N^2-1) d^i_{[m} R_{jn]}
///             + 1/(N^2-1) d^i_{[m} R_{n]j}.
JetTensor weyl(const JetTensor& curvature, RicciConvention convention);
JetTensor weyl(const Space& space, Point x, RicciConvention convention = RicciConvention::last);

/// R^i_{jmn} + (d^i_m R_{jn} - d^i_n R_{jm}) / (N-1); equals weyl() whenever
/// the Ricci tensor is symmetric.
JetTensor riemannian_weyl(const JetTensor& curvature, RicciConvention convention);
JetTensor riemannian_weyl(const Space& space, Point x,
                          RicciConvention convention = RicciConvention::last);

}  // namespace tinv
