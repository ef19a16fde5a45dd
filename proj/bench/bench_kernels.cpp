#include <benchmark/benchmark.h>

#include "unitroot/dwork.hpp"
#include "unitroot/hyperg.hpp"
#include "unitroot/kernels.hpp"
#include "unitroot/oracle.hpp"

using namespace unitroot;

namespace {

LaurentSpec triangle(std::int64_t p) {
  return make_laurent_spec(p, 1, std::nullopt, 1, ExponentSet(2, {{1, 0}, {0, 1}, {-1, -1}}), {{1}, {1}, {1}});
}

const DworkSetup& triangle_setup() {
  static const DworkSetup S(triangle(2), make_ring(2, 1, std::nullopt, 4));
  return S;
}

void BM_Matmul(benchmark::State& st) {
  const auto M = one_step_matrix(triangle_setup(), 0);
  for (auto _ : st) benchmark::DoNotOptimize(st.range(0) ? parallel::matmul(M, M) : serial::matmul(M, M));
  st.SetLabel(st.range(0) ? "parallel" : "serial");
}

void BM_Fredholm(benchmark::State& st) {
  const auto& S = triangle_setup();
  const auto M = frobenius_matrix(S);
  const auto K = fredholm_truncation(S);
  for (auto _ : st)
    benchmark::DoNotOptimize(st.range(0) ? parallel::fredholm_coefficients(M, K) : serial::fredholm_coefficients(M, K));
  st.SetLabel(st.range(0) ? "parallel" : "serial");
}

void BM_OracleCounts(benchmark::State& st) {
  const auto spec = triangle(3);
  OracleOptions o;
  o.parallel = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(char_sum(spec, 6, o));
  st.SetLabel(o.parallel ? "parallel" : "serial");
}

void BM_DworkSetup(benchmark::State& st) {
  const auto spec = triangle(2);
  const auto R = make_ring(2, 1, std::nullopt, 4);
  for (auto _ : st) {
    DworkSetup S(spec, R, std::nullopt, st.range(0) != 0);
    benchmark::DoNotOptimize(S.basis().size());
  }
  st.SetLabel(st.range(0) ? "parallel" : "serial");
}

void BM_PowerIteration(benchmark::State& st) {
  const auto& S = triangle_setup();
  for (auto _ : st) benchmark::DoNotOptimize(power_iteration_unit_root(S));
}

void BM_RouteA(benchmark::State& st) {
  const auto spec = make_laurent_spec(3, 1, std::nullopt, 1, ExponentSet(1, {{1}, {-1}}), {{1}, {1}});
  const auto R = ring_for(spec, 4);
  for (auto _ : st) benchmark::DoNotOptimize(unit_root_route_A(spec, static_cast<int>(st.range(0)), R));
}

}  // namespace

BENCHMARK(BM_Matmul)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Fredholm)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleCounts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DworkSetup)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PowerIteration)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RouteA)->Arg(64)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
