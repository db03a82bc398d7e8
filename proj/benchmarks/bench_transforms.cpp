#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "wavepress/baselines.hpp"
#include "wavepress/dwt.hpp"
#include "wavepress/select.hpp"

using namespace wavepress;

namespace {

std::vector<double> random_row(std::size_t d, std::uint64_t seed = 1) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> nd;
  std::vector<double> x(d);
  for (auto& v : x) v = nd(g);
  return x;
}

// Args: dim, filter length index into {haar, db4, coif3}.
const char* kWavelets[] = {"haar", "db4", "coif3"};

void BM_DwtLevel(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto f = get_filters(WaveletFamily::parse(kWavelets[state.range(1)]));
  const auto x = random_row(d);
  const std::size_t n = subband_length(d, f.length(), PaddingMode::Periodization);
  std::vector<double> a(n), det(n);
  for (auto _ : state) {
    dwt_level_into(x, f, PaddingMode::Periodization, a, det);
    benchmark::DoNotOptimize(a.data());
    benchmark::DoNotOptimize(det.data());
  }
  state.SetItemsProcessed(state.iterations());
  state.SetLabel(kWavelets[state.range(1)]);
}
BENCHMARK(BM_DwtLevel)->ArgsProduct({{100, 300, 768, 1024}, {0, 1, 2}});

// Full binary tree to depth L: cost should grow linearly in L.
void BM_FullTree(benchmark::State& state) {
  const auto levels = static_cast<std::size_t>(state.range(0));
  Decomposer dec(WaveletFamily::haar(), PaddingMode::Periodization, levels);
  const auto x = random_row(768);
  for (auto _ : state) {
    const auto& tree = dec(x);
    benchmark::DoNotOptimize(tree.branch("A").data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FullTree)->DenseRange(1, 4);

void BM_RowCompressor(benchmark::State& state) {
  static const Selector kSelectors[] = {Selector::CA, Selector::CAA, Selector::CAAA,
                                        Selector::CAAAA, Selector::CA_PLUS_CDA};
  const Selector s = kSelectors[state.range(0)];
  RowCompressor rc(CompressionConfig{WaveletFamily::haar(), PaddingMode::Periodization, s}, 768);
  const auto x = random_row(768);
  std::vector<double> out(rc.output_dim());
  for (auto _ : state) {
    rc.compress(x, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations());
  state.SetLabel(selector_name(s));
}
BENCHMARK(BM_RowCompressor)->DenseRange(0, 4);

void BM_Dct(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  DctPlan plan(d);
  const auto x = random_row(d);
  std::vector<double> out(d);
  for (auto _ : state) {
    plan.forward(x, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Dct)->Arg(100)->Arg(300)->Arg(768)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
