#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "cloudlab/coloring.hpp"
#include "cloudlab/datasets.hpp"
#include "cloudlab/states.hpp"

namespace {

const cloudlab::Cloud& cloud_named(const std::string& name) {
  static std::map<std::string, cloudlab::Cloud> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, cloudlab::dataset(name).cloud).first;
  return it->second;
}

const char* const kNames[] = {"firefly", "bug", "tifs38", "tiffts", "hh10"};

void BM_Enumerate(benchmark::State& st) {
  const auto& cloud = cloud_named(kNames[st.range(0)]);
  cloudlab::EnumerationOptions opts;
  opts.jobs = static_cast<unsigned>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(cloudlab::enumerate_states(cloud, opts));
  st.SetLabel(kNames[st.range(0)]);
}
BENCHMARK(BM_Enumerate)->ArgsProduct({{0, 1, 2, 3, 4}, {1, 4}});

void BM_Chromatic(benchmark::State& st) {
  const auto g = cloudlab::skeleton_graph(cloud_named(kNames[st.range(0)]));
  for (auto _ : st) benchmark::DoNotOptimize(cloudlab::chromatic_number(g));
  st.SetLabel(kNames[st.range(0)]);
}
BENCHMARK(BM_Chromatic)->DenseRange(0, 4);

void BM_Separable(benchmark::State& st) {
  const auto g = cloudlab::skeleton_graph(cloud_named(kNames[st.range(0)]));
  for (auto _ : st) benchmark::DoNotOptimize(cloudlab::separable_chromatic_number(g));
  st.SetLabel(kNames[st.range(0)]);
}
BENCHMARK(BM_Separable)->Arg(0)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Propagate(benchmark::State& st) {
  const auto& cloud = cloud_named("hh10");
  cloudlab::TwoValuedState seed(cloud.vertex_count());
  seed.set(cloud.index_of("u1"), true);
  seed.set(cloud.index_of("u22"), true);
  for (auto _ : st) benchmark::DoNotOptimize(cloudlab::propagate(cloud, seed));
}
BENCHMARK(BM_Propagate);

}  // namespace

BENCHMARK_MAIN();
