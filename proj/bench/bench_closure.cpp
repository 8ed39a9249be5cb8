// Serial vs OpenMP timings for the closure-heavy kernels.

#include <benchmark/benchmark.h>

#include "nilp/ramgen.hpp"

using namespace nilp;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_Algebra(benchmark::State& st) {
  Field k(5, 1);
  for (auto _ : st) {
    Algebra L(k, {5, 20, 4, 4}, exec_of(st));
    benchmark::DoNotOptimize(L.dim());
  }
  st.SetLabel(st.range(0) ? "parallel" : "serial");
}

void BM_F0Table(benchmark::State& st) {
  Field k(3, 1);
  Algebra L(k, {3, 9, 2, 3});
  for (auto _ : st) {
    F0Table t(L, 3, exec_of(st));
    benchmark::DoNotOptimize(t.compositions());
  }
  st.SetLabel(st.range(0) ? "parallel" : "serial");
}

void BM_MinimalSigmaIdeal(benchmark::State& st) {
  Field k(3, 2);
  Algebra L(k, {3, 6, 2, 2});
  F0Table t(L, 2);
  std::vector<LieElem> gens;
  for (const Rational& g : t.gammas())
    if (g >= Rational(2)) gens.push_back(t.get(g));
  for (auto _ : st) {
    IdealBasis I = minimal_sigma_ideal(L, gens, exec_of(st));
    benchmark::DoNotOptimize(I.dim());
  }
  st.SetLabel(st.range(0) ? "parallel" : "serial");
}

}  // namespace

BENCHMARK(BM_Algebra)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_F0Table)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinimalSigmaIdeal)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
