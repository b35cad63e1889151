#include <benchmark/benchmark.h>

#include "babai/analytics.hpp"
#include "babai/estimate.hpp"
#include "babai/experiment.hpp"
#include "babai/reorder.hpp"
#include "babai/rng.hpp"

using namespace babai;

namespace {

UpperTriangular bench_upper(std::size_t n) {
  return qr_factorize(gen_iid_matrix(n, 12345)).r;
}

void BM_QrFactorize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DenseMatrix a = gen_iid_matrix(n, 7);
  for (auto _ : state) {
    auto qr = qr_factorize(a);
    benchmark::DoNotOptimize(qr.r);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_QrFactorize)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_LllP(benchmark::State& state) {
  const auto r = bench_upper(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto pf = lll_p(r);
    benchmark::DoNotOptimize(pf.rbar);
  }
}
BENCHMARK(BM_LllP)->RangeMultiplier(2)->Range(8, 64);

void BM_Sqrd(benchmark::State& state) {
  const auto r = bench_upper(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto pf = sqrd(r);
    benchmark::DoNotOptimize(pf.rbar);
  }
}
BENCHMARK(BM_Sqrd)->RangeMultiplier(2)->Range(8, 64);

void BM_Vblast(benchmark::State& state) {
  const auto r = bench_upper(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto pf = vblast(r);
    benchmark::DoNotOptimize(pf.rbar);
  }
}
BENCHMARK(BM_Vblast)->RangeMultiplier(2)->Range(8, 64);

void BM_LllReduce(benchmark::State& state) {
  const auto r = bench_upper(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto red = lll_reduce(r);
    benchmark::DoNotOptimize(red.rbar);
  }
}
BENCHMARK(BM_LllReduce)->RangeMultiplier(2)->Range(8, 32);

void BM_BabaiBox(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto r = bench_upper(n);
  const IntegerBox box = IntegerBox::uniform(n, 0, 15);
  StreamRng rng(3, 0);
  std::vector<double> y(n);
  for (auto& v : y) v = 8.0 * rng.next_gaussian();
  for (auto _ : state) {
    auto res = babai_box(r, y, box);
    benchmark::DoNotOptimize(res.point);
  }
}
BENCHMARK(BM_BabaiBox)->RangeMultiplier(2)->Range(8, 64);

void BM_SuccessProb(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto r = bench_upper(n);
  const IntegerBox box = IntegerBox::uniform(n, 0, 15);
  for (auto _ : state) {
    benchmark::DoNotOptimize(babai_box_success_prob(r, box, 0.4));
  }
}
BENCHMARK(BM_SuccessProb)->RangeMultiplier(2)->Range(8, 64);

void BM_MonteCarlo10k(benchmark::State& state) {
  const auto r = bench_upper(4);
  const IntegerBox box = IntegerBox::uniform(4, 0, 3);
  for (auto _ : state) {
    auto mc = run_monte_carlo_success(r, box, 0.3, 10'000, 99);
    benchmark::DoNotOptimize(mc.rate);
  }
}
BENCHMARK(BM_MonteCarlo10k);

}  // namespace

BENCHMARK_MAIN();
