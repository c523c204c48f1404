#include <benchmark/benchmark.h>

#include <random>

#include "punip/cases.hpp"
#include "punip/homsolver.hpp"
#include "punip/ratfunc.hpp"

using namespace punip;

namespace {

RatFunc random_element(const Field& f, std::mt19937& rng, int deg) {
  auto poly = [&] {
    std::vector<Term> terms;
    for (int k = 0; k < 6; ++k) {
      std::vector<int> e(f->rank());
      int left = deg;
      for (auto& x : e) {
        x = static_cast<int>(rng() % static_cast<unsigned>(left + 1));
        left -= x;
      }
      terms.push_back({Monomial::from(e), static_cast<std::uint16_t>(1 + rng() % static_cast<unsigned>(f->p - 1))});
    }
    return MPoly::from_terms(f->p, std::move(terms));
  };
  MPoly den = poly();
  if (den.is_zero()) den = MPoly::constant(f->p, 1);
  return RatFunc(f, poly(), den);
}

void BM_FrobeniusDecompose(benchmark::State& state) {
  int p = static_cast<int>(state.range(0));
  Field f = make_field(p, {"l", "m", "g"}, 512);
  std::mt19937 rng(1);
  std::vector<RatFunc> xs;
  for (int k = 0; k < 64; ++k) xs.push_back(random_element(f, rng, 6));
  std::size_t i = 0;
  for (auto _ : state) {
    FrobDecomp d = frobenius_decompose(xs[i++ % xs.size()]);
    benchmark::DoNotOptimize(d.parts.size());
  }
}
BENCHMARK(BM_FrobeniusDecompose)->Arg(2)->Arg(3)->Arg(5);

void BM_RatFuncSum(benchmark::State& state) {
  Field f = make_field(3, {"l", "m", "g"}, 512);
  std::mt19937 rng(2);
  std::vector<RatFunc> xs;
  for (int k = 0; k < 64; ++k) xs.push_back(random_element(f, rng, static_cast<int>(state.range(0))));
  std::size_t i = 0;
  for (auto _ : state) {
    RatFunc s = xs[i % xs.size()] + xs[(i + 1) % xs.size()];
    ++i;
    benchmark::DoNotOptimize(s.num().terms().size());
  }
}
BENCHMARK(BM_RatFuncSum)->Arg(2)->Arg(4);

void BM_HomSpace(benchmark::State& state) {
  int p = static_cast<int>(state.range(0));
  Field f = make_field(p, {"l"});
  RatFunc l = RatFunc::var(f, 0);
  Presentation src = make_Vn_alpha(2, l, "S"), tgt = make_Vn_alpha(1, l, "T");
  Ansatz a{2, MonomialBasis::total_degree(f, static_cast<int>(state.range(1)))};
  for (auto _ : state) {
    HomSpace h = hom_space(src, tgt, a);
    benchmark::DoNotOptimize(h.space.dim());
  }
}
BENCHMARK(BM_HomSpace)->Args({2, 2})->Args({2, 4})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_RunCase(benchmark::State& state, const char* id, int p) {
  CaseParams params;
  params.p = p;
  CaseParams resolved = resolve_params(id, params);
  for (auto _ : state) {
    Certificate c = run_case(id, resolved);
    if (!c.success()) state.SkipWithError("case did not succeed");
  }
}
BENCHMARK_CAPTURE(BM_RunCase, example_3_5_p2, "example-3-5", 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunCase, example_3_5_p3, "example-3-5", 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunCase, example_5_7_lift_p3, "example-5-7-lift", 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunCase, lemma_3_2_p3, "lemma-3-2", 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
