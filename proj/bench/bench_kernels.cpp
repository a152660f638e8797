// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "reco/dense.hpp"
#include "reco/eval.hpp"
#include "synthetic.hpp"

namespace {

reco::dense::DenseIndex random_index(std::size_t docs, std::size_t dim) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<reco::dense::EmbeddingVector> vectors;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < docs; ++i) {
    std::vector<double> v(dim);
    for (auto& x : v) x = g(rng);
    vectors.push_back(reco::dense::normalized({v}));
    ids.push_back(std::to_string(i));
  }
  return reco::dense::DenseIndex(ids, vectors);
}

void BM_DenseScoreParallel(benchmark::State& state) {
  const auto index = random_index(static_cast<std::size_t>(state.range(0)), 768);
  const auto row = index.row(0);
  const reco::dense::EmbeddingVector q{{row.begin(), row.end()}};
  for (auto _ : state) benchmark::DoNotOptimize(index.score_all(q));
}

void BM_DenseScoreSerial(benchmark::State& state) {
  const auto index = random_index(static_cast<std::size_t>(state.range(0)), 768);
  const auto row = index.row(0);
  const reco::dense::EmbeddingVector q{{row.begin(), row.end()}};
  for (auto _ : state) benchmark::DoNotOptimize(index.score_all_serial(q));
}

void BM_EvalParallel(benchmark::State& state) {
  const auto d = reco::testing::distinct_corpus(static_cast<std::size_t>(state.range(0)), 0);
  for (auto _ : state) benchmark::DoNotOptimize(reco::eval::run_eval(d, {}, {}).mrr);
}

void BM_EvalSerial(benchmark::State& state) {
  const auto d = reco::testing::distinct_corpus(static_cast<std::size_t>(state.range(0)), 0);
  for (auto _ : state) benchmark::DoNotOptimize(reco::eval::run_eval_serial(d, {}, {}).mrr);
}

}  // namespace

BENCHMARK(BM_DenseScoreParallel)->Arg(1000)->Arg(10000);
BENCHMARK(BM_DenseScoreSerial)->Arg(1000)->Arg(10000);
BENCHMARK(BM_EvalParallel)->Arg(500)->Arg(2000);
BENCHMARK(BM_EvalSerial)->Arg(500)->Arg(2000);

BENCHMARK_MAIN();
