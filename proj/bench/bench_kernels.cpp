// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "steiner/catalog.hpp"
#include "steiner/designs.hpp"
#include "steiner/permgrp.hpp"
#include "steiner/sieve.hpp"
#include "steiner/suzuki.hpp"

using namespace steiner;

namespace {

sieve::SieveOptions bench_options() {
  sieve::SieveOptions o;
  o.qcap = 1000;
  return o;
}

const designs::DesignInstance& plane(unsigned e) {
  static const designs::DesignInstance p3 = suzuki::build_inversive_plane(3);
  static const designs::DesignInstance p5 = suzuki::build_inversive_plane(5);
  return e == 3 ? p3 : p5;
}

void BM_SieveParallel(benchmark::State& state) {
  const auto& entry = catalog::catalog_builtin().at("G2-SU3");
  for (auto _ : state) benchmark::DoNotOptimize(sieve::sieve_candidate(entry, bench_options()));
}

void BM_SieveSerial(benchmark::State& state) {
  const auto& entry = catalog::catalog_builtin().at("G2-SU3");
  for (auto _ : state) benchmark::DoNotOptimize(sieve::sieve_candidate_serial(entry, bench_options()));
}

void BM_VerifyParallel(benchmark::State& state) {
  const auto& d = plane(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(designs::verify_3design(d));
}

void BM_VerifySerial(benchmark::State& state) {
  const auto& d = plane(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(designs::verify_3design_serial(d));
}

void BM_StabilizerParallel(benchmark::State& state) {
  const auto g = suzuki::suzuki_group_with_frobenius(3);
  const auto circle = suzuki::seed_circle(3);
  for (auto _ : state) benchmark::DoNotOptimize(permgrp::setwise_stabilizer(g, circle).order());
}

void BM_StabilizerSerial(benchmark::State& state) {
  const auto g = suzuki::suzuki_group_with_frobenius(3);
  const auto circle = suzuki::seed_circle(3);
  for (auto _ : state) benchmark::DoNotOptimize(permgrp::setwise_stabilizer_serial(g, circle).order());
}

}  // namespace

BENCHMARK(BM_SieveParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SieveSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyParallel)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifySerial)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StabilizerParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StabilizerSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
