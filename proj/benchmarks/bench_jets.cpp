#include <benchmark/benchmark.h>

#include <vector>

#include "tinv/jet.hpp"

namespace {

const tinv::Chart kUVW({"u", "v", "w"});
const std::vector<double> kX{1.3, 1.7, 1.1};

void BM_Evaluate(benchmark::State& state) {
  const tinv::Expr e = tinv::parse("exp(u*v)/(1 + w^2) + ln(1 + u^2 + v^2 + w^2)*sin(u)", kUVW);
  for (auto _ : state) benchmark::DoNotOptimize(tinv::evaluate(e, kX));
}
BENCHMARK(BM_Evaluate);

// Cost of carrying derivatives up to the given order.
void BM_EvalJet(benchmark::State& state) {
  const tinv::Expr e = tinv::parse("exp(u*v)/(1 + w^2) + ln(1 + u^2 + v^2 + w^2)*sin(u)", kUVW);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tinv::eval_jet(e, kX, order));
}
BENCHMARK(BM_EvalJet)->DenseRange(0, 3);

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tinv::parse("(u + v)^3 - w^1.5 + cos(u*w)/sin(v)", kUVW));
}
BENCHMARK(BM_Parse);

}  // namespace
