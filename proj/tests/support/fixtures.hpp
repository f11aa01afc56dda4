#pragma once

// Shared spaces and random omega bundles for the test suites.

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tinv/invariants.hpp"
#include "tinv/mappings.hpp"

namespace fixture {

using tinv::Signature;
using tinv::TensorField;
using tinv::Variance;

inline const tinv::Chart& uvw() {
  static const tinv::Chart c({"u", "v", "w"});
  return c;
}

inline const Signature kCovector{Variance::lower};
inline const Signature kVector{Variance::upper};
inline const Signature kAffinor{Variance::upper, Variance::lower};
inline const Signature kBilinear{Variance::lower, Variance::lower};
inline const Signature kConnection{Variance::upper, Variance::lower, Variance::lower};

inline TensorField field(const Signature& sig, const std::vector<std::string>& e) {
  return TensorField::parse(uvw(), sig, e);
}

inline TensorField example_metric() {
  return field(kBilinear, {"u^2", "0", "0", "0", "v^2", "0", "0", "0", "w^2"});
}
inline tinv::Space example_space() { return tinv::Space::from_metric(example_metric()); }
inline TensorField example_F() { return field(kAffinor, {"sin(u)", "0", "0", "0", "cos(v)", "0", "0", "0", "w"}); }
inline TensorField example_sigma() { return field(kCovector, {"0", "0", "ln(1 + u^2 + v^2 + w^2)"}); }
inline tinv::Space flat_space() {
  return tinv::Space::from_metric(field(kBilinear, {"1", "0", "0", "0", "1", "0", "0", "0", "1"}));
}

/// s = (1, 1/2, 0), F and sigma of the example, rho = 0.
inline tinv::OmegaSpec example_spec() {
  tinv::OmegaSpec spec(3, {1.0, 0.5, 0.0});
  spec.F = example_F();
  spec.sigma = example_sigma();
  return spec;
}

/// c0 + c1 u + c2 v + c3 w + two quadratic monomials.
inline std::string random_poly(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::uniform_int_distribution<int> var(0, 2);
  const char* names[] = {"u", "v", "w"};
  auto coef = [&] { return std::round(c(rng) * 1000) / 1000; };
  std::ostringstream os;
  os.precision(17);
  os << coef();
  for (const char* n : names) os << " + " << coef() << "*" << n;
  for (int k = 0; k < 2; ++k) os << " + " << coef() << "*" << names[var(rng)] << "*" << names[var(rng)];
  return os.str();
}

inline TensorField random_field(std::mt19937_64& rng, const Signature& sig) {
  std::size_t n = 1;
  for (std::size_t k = 0; k < sig.size(); ++k) n *= 3;
  std::vector<std::string> e(n);
  for (auto& s : e) s = random_poly(rng);
  return field(sig, e);
}

inline tinv::OmegaSpec random_spec(std::mt19937_64& rng, tinv::SValues s) {
  tinv::OmegaSpec spec(3, s);
  spec.rho = random_field(rng, kCovector);
  spec.sigma = random_field(rng, kCovector);
  spec.F = random_field(rng, kAffinor);
  spec.phi = random_field(rng, kVector);
  std::vector<std::string> e(9);
  for (int j = 0; j < 3; ++j)
    for (int k = j; k < 3; ++k) e[j * 3 + k] = e[k * 3 + j] = random_poly(rng);
  spec.sigma2 = field(kBilinear, e);
  return spec;
}

inline tinv::SValues random_s(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  return {d(rng), d(rng), d(rng)};
}

/// A symmetric, curved, non-metric connection with random polynomial entries.
inline tinv::Space random_space(std::mt19937_64& rng) {
  std::vector<std::string> e(27);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = j; k < 3; ++k) e[i * 9 + j * 3 + k] = e[i * 9 + k * 3 + j] = random_poly(rng);
  return tinv::Space::from_connection(field(kConnection, e));
}

inline std::vector<double> random_point(std::mt19937_64& rng, double lo = 1.0, double hi = 2.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  return {d(rng), d(rng), d(rng)};
}

}  // namespace fixture
