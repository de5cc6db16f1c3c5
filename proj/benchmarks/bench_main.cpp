#include "tiltlab/complex.hpp"
#include "tiltlab/freyd.hpp"
#include "tiltlab/linalg.hpp"
#include "tiltlab/sampling.hpp"
#include "tiltlab/tstructure.hpp"

#include <benchmark/benchmark.h>

using namespace tiltlab;

static void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Sampler s(1);
  std::vector<Matrix> inputs;
  for (int k = 0; k < 32; ++k) inputs.push_back(s.matrix(n, n, 20));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(inputs[i++ % inputs.size()]));
}
BENCHMARK(BM_SmithNormalForm)->Arg(3)->Arg(6)->Arg(10)->Arg(16);

static void BM_HomGroup(benchmark::State& state) {
  SamplingBounds bounds;
  bounds.max_rank = static_cast<std::size_t>(state.range(0));
  Sampler s(2, bounds);
  std::vector<std::pair<FpModule, FpModule>> pairs;
  for (int k = 0; k < 32; ++k) pairs.emplace_back(s.module(), s.module());
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [m, n] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(hom_group(m, n));
  }
}
BENCHMARK(BM_HomGroup)->Arg(2)->Arg(3)->Arg(5);

static void BM_Nullhomotopy(benchmark::State& state) {
  Sampler s(3);
  std::vector<ChainMap> maps;
  for (int k = 0; k < 16; ++k) {
    Complex x = s.exact_free_complex(0, static_cast<int>(state.range(0)));
    maps.push_back(ChainMap::identity(x));
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(is_nullhomotopic(maps[i++ % maps.size()]));
}
BENCHMARK(BM_Nullhomotopy)->Arg(2)->Arg(4)->Arg(6);

static void BM_ApproximatingTriangle(benchmark::State& state) {
  const TStructureSpec spec = state.range(0) == 0 ? TStructureSpec::natural() : TStructureSpec::left();
  Sampler s(4);
  std::vector<Complex> xs;
  for (int k = 0; k < 16; ++k) xs.push_back(state.range(0) == 0 ? s.fp_complex(-1, 3) : s.free_complex(-1, 3));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(approximating_triangle(spec, xs[i++ % xs.size()]));
}
BENCHMARK(BM_ApproximatingTriangle)->Arg(0)->Arg(1);

static void BM_SerreSuite(benchmark::State& state) {
  const ExactStructure ex = state.range(0) == 0 ? ExactStructure{Carrier::FreeZ, Flavor::Split}
                                                : ExactStructure{Carrier::FpZ, Flavor::Maximal};
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(serre_closure_check(ex, 10, ++seed));
}
BENCHMARK(BM_SerreSuite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_AuslanderSuite(benchmark::State& state) {
  const ExactStructure ex = state.range(0) == 0 ? ExactStructure{Carrier::FreeZ, Flavor::Split}
                                                : ExactStructure{Carrier::FpZ, Flavor::Maximal};
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(auslander_check(ex, 10, ++seed));
}
BENCHMARK(BM_AuslanderSuite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
