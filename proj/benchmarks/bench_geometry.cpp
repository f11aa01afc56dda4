#include <benchmark/benchmark.h>

#include <vector>

#include "tinv/geometry.hpp"
#include "tinv/invariants.hpp"

namespace {

using tinv::Variance;

const tinv::Chart kUVW({"u", "v", "w"});
const std::vector<double> kX{1.3, 1.7, 1.1};

tinv::Space example() {
  return tinv::Space::from_metric(tinv::TensorField::parse(
      kUVW, {Variance::lower, Variance::lower}, {"u^2", "0", "0", "0", "v^2", "0", "0", "0", "w^2"}));
}

tinv::Space dense_metric() {
  return tinv::Space::from_metric(
      tinv::TensorField::parse(kUVW, {Variance::lower, Variance::lower},
                               {"1 + u^2", "u*v", "0", "u*v", "2 + sin(w)", "v", "0", "v", "3 + w*u"}));
}

void BM_Christoffel(benchmark::State& state) {
  const tinv::Space s = dense_metric();
  for (auto _ : state) benchmark::DoNotOptimize(s.connection()(kX));
}
BENCHMARK(BM_Christoffel);

void BM_Curvature(benchmark::State& state) {
  const tinv::Space s = dense_metric();
  for (auto _ : state) benchmark::DoNotOptimize(tinv::curvature(s, kX));
}
BENCHMARK(BM_Curvature);

void BM_Weyl(benchmark::State& state) {
  const tinv::Space s = dense_metric();
  for (auto _ : state) benchmark::DoNotOptimize(tinv::weyl(s, kX));
}
BENCHMARK(BM_Weyl);

void BM_DerivedWeylChain(benchmark::State& state) {
  const tinv::Space s = example();
  tinv::OmegaSpec spec(3, {1.0, 0.5, 0.25});
  spec.F = tinv::TensorField::parse(kUVW, {Variance::upper, Variance::lower},
                                    {"sin(u)", "0", "0", "0", "cos(v)", "0", "0", "0", "w"});
  spec.sigma = tinv::TensorField::parse(kUVW, {Variance::lower}, {"0", "0", "ln(1 + u^2 + v^2 + w^2)"});
  spec.phi = tinv::TensorField::parse(kUVW, {Variance::upper}, {"u", "v", "1"});
  spec.sigma2 = tinv::TensorField::parse(kUVW, {Variance::lower, Variance::lower},
                                         {"1", "0", "0", "0", "1", "0", "0", "0", "1"});
  for (auto _ : state) benchmark::DoNotOptimize(tinv::derived_weyl_chain(s, spec, kX));
}
BENCHMARK(BM_DerivedWeylChain);

}  // namespace
