#include <benchmark/benchmark.h>

#include "tinv/mappings.hpp"
#include "tinv_cli/config.hpp"

namespace {

// The F-planar demo over a growing number of points, serial and threaded.
void BM_VerifyFPlanar(benchmark::State& state) {
  const tinv::cli::Job job = tinv::cli::build_job(tinv::cli::load_config("fplanar-demo"));
  tinv::VerifyRequest req;
  req.invariants = {tinv::Invariant::fplanar_thomas, tinv::Invariant::fplanar_weyl_basic,
                    tinv::Invariant::fplanar_weyl_derived, tinv::Invariant::derived_weyl};
  req.omegas = job.omegas;
  req.fplanar = tinv::fplanar_sides(*job.fplanar);
  req.threads = static_cast<unsigned>(state.range(1));
  const auto pts = tinv::sample_points(7, static_cast<int>(state.range(0)), 3, 1.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(tinv::verify_invariance(job.source, *job.target, req, pts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VerifyFPlanar)->ArgsProduct({{20, 200}, {1, 0}})->Unit(benchmark::kMillisecond);

}  // namespace
