#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "pathsdd/compiler.hpp"
#include "pathsdd/generators.hpp"
#include "pathsdd/queries.hpp"

using namespace pathsdd;

namespace {

struct Fixture {
  Dag graph;
  EdgeOrdering order;
  Circuit circuit;
  Logits logits;

  explicit Fixture(unsigned side)
      : graph(gen_grid(side, side)),
        order(topological_edge_order(graph)),
        circuit(compile(graph)) {
    std::mt19937_64 rng(side);
    std::uniform_real_distribution<double> u(-2, 2);
    std::vector<double> a(graph.edge_count());
    for (auto& x : a) x = u(rng);
    logits = Logits(std::move(a));
  }
};

const Fixture& fixture(unsigned side) {
  static std::map<unsigned, Fixture> cache;
  auto it = cache.find(side);
  if (it == cache.end()) it = cache.emplace(side, Fixture(side)).first;
  return it->second;
}

void BM_BuildTableParallel(benchmark::State& state) {
  const auto& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_table(f.graph, f.order));
}

void BM_BuildTableSerial(benchmark::State& state) {
  const auto& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::build_table(f.graph, f.order));
}

void BM_CountParallel(benchmark::State& state) {
  const auto& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_models(f.circuit));
}

void BM_CountSerial(benchmark::State& state) {
  const auto& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::count_models(f.circuit));
}

void BM_LogPqeParallel(benchmark::State& state) {
  const auto& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(log_pqe(f.circuit, f.logits));
}

void BM_LogPqeSerial(benchmark::State& state) {
  const auto& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::log_pqe(f.circuit, f.logits));
}

void BM_MpeParallel(benchmark::State& state) {
  const auto& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mpe(f.circuit, f.logits));
}

void BM_MpeSerial(benchmark::State& state) {
  const auto& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::mpe_log_weight(f.circuit, f.logits));
}

}  // namespace

#define GRID_SIZES ->Arg(16)->Arg(24)->Arg(32)->Unit(benchmark::kMillisecond)

BENCHMARK(BM_BuildTableParallel) GRID_SIZES;
BENCHMARK(BM_BuildTableSerial) GRID_SIZES;
BENCHMARK(BM_CountParallel) GRID_SIZES;
BENCHMARK(BM_CountSerial) GRID_SIZES;
BENCHMARK(BM_LogPqeParallel) GRID_SIZES;
BENCHMARK(BM_LogPqeSerial) GRID_SIZES;
BENCHMARK(BM_MpeParallel) GRID_SIZES;
BENCHMARK(BM_MpeSerial) GRID_SIZES;

BENCHMARK_MAIN();
