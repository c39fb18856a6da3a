#include <benchmark/benchmark.h>

#include "vlat/counterexample.hpp"
#include "vlat/random.hpp"
#include "vlat/regular_op.hpp"
#include "vlat/superop.hpp"

namespace {

using vlat::Rational;
using Mat = vlat::RegularOperator<Rational>;
using Vec = vlat::LatticeVector<Rational>;

Mat random_matrix(vlat::SeededRng& rng, std::size_t r, std::size_t c) {
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.rational(-5, 5, 8);
  return m;
}

void BM_BuildAndModulus(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  vlat::SeededRng rng(1);
  const auto a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(vlat::modulus(vlat::build(a, b)));
}
BENCHMARK(BM_BuildAndModulus)->Arg(2)->Arg(3)->Arg(4);

void BM_ModulusOracleAllDisjoint(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  vlat::SeededRng rng(2);
  const auto b = random_matrix(rng, n, n);
  const auto w = Vec::ones(n);
  const auto strategy = vlat::PartitionStrategy::all_disjoint(static_cast<unsigned>(n));
  for (auto _ : state) benchmark::DoNotOptimize(vlat::modulus_oracle(b, w, strategy));
}
BENCHMARK(BM_ModulusOracleAllDisjoint)->DenseRange(2, 6);

void BM_CounterexampleReport(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  vlat::CounterexampleOptions opts;
  opts.random_operators = 4;
  for (auto _ : state) benchmark::DoNotOptimize(vlat::counterexample_report(n, 0, opts));
}
BENCHMARK(BM_CounterexampleReport)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
