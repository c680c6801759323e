#include <benchmark/benchmark.h>

#include <random>

#include "hvlab/audit.hpp"
#include "hvlab/constructions.hpp"

using namespace hvlab;

static void BM_FieldMul(benchmark::State& state) {
  const auto f = Field::for_q(static_cast<unsigned>(state.range(0)));
  const Elem s = f->size();
  Elem acc = 1;
  for (auto _ : state) {
    for (Elem a = 1; a < s; ++a) acc = f->mul(acc, a) | 1;
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * (s - 1));
}
BENCHMARK(BM_FieldMul)->Arg(2)->Arg(3)->Arg(7)->Arg(9);

static void BM_VarietyEnumeration(benchmark::State& state) {
  const auto h = HermitianForm::identity(Field::for_q(static_cast<unsigned>(state.range(0))), 4);
  for (auto _ : state) {
    HermitianVariety v(h);
    benchmark::DoNotOptimize(v.size());
  }
}
BENCHMARK(BM_VarietyEnumeration)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

// The q = 7 cubic extremal counted by one pass over V_3.
static void BM_CountIntersectionQ7(benchmark::State& state) {
  const HermitianVariety v(HermitianForm::identity(Field::for_q(7), 4));
  const auto c = edoukou_extremal(v, 3);
  for (auto _ : state) benchmark::DoNotOptimize(count_intersection(c.poly, v.form()));
}
BENCHMARK(BM_CountIntersectionQ7)->Unit(benchmark::kMillisecond);

static void BM_BatchZeros(benchmark::State& state) {
  const unsigned q = static_cast<unsigned>(state.range(0));
  const AuditContext ctx(HermitianForm::identity(Field::for_q(q), 4), 3);
  const auto& ev = ctx.evaluator();
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<Elem> pick(0, ctx.field().size() - 1);
  std::vector<Elem> coeffs(ev.monomials().size());
  for (auto& c : coeffs) c = pick(rng);
  for (auto _ : state) benchmark::DoNotOptimize(ev.count_zeros(coeffs));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ev.size()));
}
BENCHMARK(BM_BatchZeros)->Arg(3)->Arg(7)->Unit(benchmark::kMicrosecond);

static void BM_AuditCubicQ3(benchmark::State& state) {
  const AuditContext ctx(HermitianForm::identity(Field::for_q(3), 4), 3);
  const auto c = edoukou_extremal(ctx.variety(), 3);
  for (auto _ : state) benchmark::DoNotOptimize(audit(c.poly, ctx).intersection_count);
}
BENCHMARK(BM_AuditCubicQ3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
