// Serial reference kernels against their OpenMP versions. The thread count
// is the benchmark argument.

#include <benchmark/benchmark.h>

#include "rrp/exact_solver.hpp"
#include "rrp/reductions.hpp"
#include "rrp/topology.hpp"

namespace {

// Ring of 10 nodes, each wired once: T(10) = 9496 configurations.
rrp::RRPInstance ring_instance() {
  using rrp::Rational;
  rrp::RRPInstance inst;
  inst.network = rrp::attach_uniform_switch(rrp::generate_family(rrp::FamilyKind::kCycle, 7), 1);
  inst.mu = Rational(1, 2);
  std::vector<rrp::Demand> demands;
  for (rrp::NodeId v = 0; v < 10; ++v) demands.push_back({v, (v + 5) % 10, Rational(1 + v % 3)});
  inst.workload = rrp::Workload(std::move(demands));
  inst.policy = {rrp::Bound(1), rrp::Bound::infinite(), rrp::Bound::infinite()};
  return inst;
}

void BM_ExactSerial(benchmark::State& state) {
  auto inst = ring_instance();
  for (auto _ : state) benchmark::DoNotOptimize(rrp::solve_exact_serial(inst));
}
BENCHMARK(BM_ExactSerial)->Unit(benchmark::kMillisecond);

void BM_ExactParallel(benchmark::State& state) {
  auto inst = ring_instance();
  rrp::ExactOptions opt;
  opt.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rrp::solve_exact(inst, opt));
}
BENCHMARK(BM_ExactParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

rrp::RXC3Instance six_elements() {
  rrp::RXC3Instance x;
  x.elements = {"1", "2", "3", "4", "5", "6"};
  x.clauses = {{0, 1, 2}, {3, 4, 5}, {0, 1, 3}, {2, 4, 5}, {0, 3, 4}, {1, 2, 5}};
  return x;
}

void BM_CubeEvalSerial(benchmark::State& state) {
  rrp::CubeReduction red(six_elements(), rrp::Rational(1, 2));
  rrp::CubeWitness wit(red, {0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(rrp::evaluate_cube_witness_serial(red, wit));
}
BENCHMARK(BM_CubeEvalSerial)->Iterations(1)->Unit(benchmark::kSecond);

void BM_CubeEvalParallel(benchmark::State& state) {
  rrp::CubeReduction red(six_elements(), rrp::Rational(1, 2));
  rrp::CubeWitness wit(red, {0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(rrp::evaluate_cube_witness(red, wit, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CubeEvalParallel)->Arg(1)->Arg(2)->Arg(4)->Iterations(1)->Unit(benchmark::kSecond);

}  // namespace

BENCHMARK_MAIN();
