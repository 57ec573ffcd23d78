#include <benchmark/benchmark.h>

#include "relframe/frame.hpp"
#include "relframe/random.hpp"
#include "relframe/relativization.hpp"
#include "relframe/system.hpp"

using namespace relframe;

namespace {

// Z_n acting on C^n by cyclic shift, with the canonical ideal frame.
struct CyclicSetup {
  FramePtr frame;
  SystemPtr system;

  explicit CyclicSetup(int n) : frame(canonical_ideal_frame(FiniteGroup::cyclic(n))) {
    system = full_system(UnitaryRep(frame->rep().shared_group(), frame->rep().matrices()));
  }
};

void BM_Relativize(benchmark::State& state) {
  const CyclicSetup setup(static_cast<int>(state.range(0)));
  const RelativizationMap map(setup.frame, setup.system);
  RandomMatrices rng(1);
  const ComplexMatrix a = rng.ginibre(setup.system->ambient_dim());
  for (auto _ : state) benchmark::DoNotOptimize(map(a));
}
BENCHMARK(BM_Relativize)->DenseRange(2, 6, 2);

void BM_RelativeSubspace(benchmark::State& state) {
  const CyclicSetup setup(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_relative_subspace(setup.frame, setup.system));
}
BENCHMARK(BM_RelativeSubspace)->DenseRange(2, 4, 1);

void BM_ChannelAxioms(benchmark::State& state) {
  const CyclicSetup setup(static_cast<int>(state.range(0)));
  const RelativizationMap map(setup.frame, setup.system);
  for (auto _ : state) benchmark::DoNotOptimize(check_channel_axioms(map));
}
BENCHMARK(BM_ChannelAxioms)->DenseRange(2, 4, 1);

void BM_SmearedPredual(benchmark::State& state) {
  const CyclicSetup setup(static_cast<int>(state.range(0)));
  const RelativizationMap map(smeared_frame(setup.frame, 0.5), setup.system);
  RandomMatrices rng(2);
  const ComplexMatrix t = rng.density_matrix(map.joint_dim());
  for (auto _ : state) benchmark::DoNotOptimize(map.predual(t));
}
BENCHMARK(BM_SmearedPredual)->DenseRange(2, 6, 2);

}  // namespace

BENCHMARK_MAIN();
