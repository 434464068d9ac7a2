// Parallel kernels against their serial references. Thread count comes from
// OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "fourpoly/foursquares.hpp"
#include "fourpoly/polygonal.hpp"
#include "fourpoly/qseries.hpp"

using namespace fourpoly;

namespace {

QZSeries theta_square_pair(i64 q) { return mul(pow(theta(1, 1, q), 2), pow(theta(3, 3, q), 2)); }

void BM_mul_parallel(benchmark::State& st) {
  const QZSeries a = theta_square_pair(24 * st.range(0) + 24);
  for (auto _ : st) benchmark::DoNotOptimize(mul(a, a));
}

void BM_mul_serial(benchmark::State& st) {
  const QZSeries a = theta_square_pair(24 * st.range(0) + 24);
  for (auto _ : st) benchmark::DoNotOptimize(mul_serial(a, a));
}

const i64 kOnes[] = {1, 1, 1, 1};

void BM_rep_table(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(rep_count_table(5, kOnes, st.range(0)));
}

void BM_rep_enum(benchmark::State& st) {
  for (auto _ : st) {
    i64 sum = 0;
    for (i64 N = 0; N <= st.range(0); ++N) sum += enum_reps(5, kOnes, N);
    benchmark::DoNotOptimize(sum);
  }
}

void BM_rho_table(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(RhoTable(st.range(0), 9).at(1, 0));
}

void BM_rho_enum(benchmark::State& st) {
  for (auto _ : st) {
    i64 sum = 0;
    for (i64 n = 1; n <= st.range(0); ++n)
      for (i64 r = -12; r <= 12; ++r) sum += rho_enum(n, r, 9);
    benchmark::DoNotOptimize(sum);
  }
}

void BM_sun_verify(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(sun_verify({2, 2, 1, 0}, st.range(0), 6).witnesses.size());
}

void BM_sun_witness(benchmark::State& st) {
  for (auto _ : st) {
    i64 found = 0;
    for (i64 n = 1; n <= st.range(0); ++n) found += sun_witness({2, 2, 1, 0}, n, 6).has_value();
    benchmark::DoNotOptimize(found);
  }
}

}  // namespace

BENCHMARK(BM_mul_parallel)->Arg(60)->Arg(150)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mul_serial)->Arg(60)->Arg(150)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rep_table)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rep_enum)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rho_table)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rho_enum)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sun_verify)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sun_witness)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
