#include <benchmark/benchmark.h>

#include "agler/colligation.hpp"
#include "agler/grammian.hpp"
#include "agler/interpolation.hpp"
#include "agler/random.hpp"
#include "agler/separation.hpp"
#include "agler/sequences.hpp"

using namespace agler;

namespace {

InterpolationProblem disc_problem(std::size_t n, std::uint64_t seed) {
  Rng rng(seed, 0);
  std::vector<Complex> z;
  ComplexVector x(static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    z.push_back(rng.in_disc(0.9));
    x(static_cast<Index>(i)) = rng.in_disc(0.5);
  }
  return InterpolationProblem::make(disc_points(z), x, 1.0, TestFunctionFamily::disc());
}

InterpolationProblem bidisc_problem(std::size_t n, std::uint64_t seed) {
  Rng rng(seed, 0);
  const DomainTag d2 = DomainTag::polydisc(2);
  std::vector<Point> pts;
  ComplexVector x(static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(Point::make(d2, {rng.in_disc(0.8), rng.in_disc(0.8)}));
    x(static_cast<Index>(i)) = rng.in_disc(0.3);
  }
  return InterpolationProblem::make(PointConfig(d2, pts), x, 1.0, TestFunctionFamily::polydisc(2));
}

}  // namespace

static void BM_DiscFeasibility(benchmark::State& state) {
  const InterpolationProblem p = disc_problem(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(agler_feasibility(p));
}
BENCHMARK(BM_DiscFeasibility)->Arg(2)->Arg(6)->Arg(12);

static void BM_BidiscFeasibility(benchmark::State& state) {
  const InterpolationProblem p = bidisc_problem(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(agler_feasibility(p));
}
BENCHMARK(BM_BidiscFeasibility)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_MinimalNormTwoPoint(benchmark::State& state) {
  ComplexVector x(2);
  x << 1.0, 0.0;
  const PointConfig pts = disc_points({0.0, 0.5});
  for (auto _ : state) benchmark::DoNotOptimize(minimal_norm(pts, x, TestFunctionFamily::disc()));
}
BENCHMARK(BM_MinimalNormTwoPoint);

static void BM_ConeBounds(benchmark::State& state) {
  const PointConfig pts = generate(SequenceSpec::exponential(0.5, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(bounds_over_cone(pts, TestFunctionFamily::disc(), 16, 0));
}
BENCHMARK(BM_ConeBounds)->Arg(8)->Arg(32);

static void BM_SymmetrizedSzego(benchmark::State& state) {
  std::vector<DiscPair> pairs;
  for (int i = 0; i < state.range(0); ++i) {
    Rng rng(3, static_cast<std::uint64_t>(i));
    pairs.emplace_back(rng.in_disc(0.9), rng.in_disc(0.9));
  }
  const TestFunctionFamily fam = TestFunctionFamily::g2_grid();
  for (auto _ : state) benchmark::DoNotOptimize(symmetrized_szego_gram(pairs, fam));
}
BENCHMARK(BM_SymmetrizedSzego)->Arg(4)->Arg(16);

static void BM_CarlesonProducts(benchmark::State& state) {
  const PointConfig pts = generate(SequenceSpec::polynomial(1.0, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(carleson_products(pts, TestFunctionFamily::disc(), 0));
}
BENCHMARK(BM_CarlesonProducts)->Arg(64)->Arg(512);

static void BM_TransferEval(benchmark::State& state) {
  const TestFunctionFamily fam = TestFunctionFamily::polydisc(2);
  const Colligation c = random_colligation(state.range(0), 1, fam, 4);
  const Point x = Point::make(DomainTag::polydisc(2), {Complex(0.3, 0.2), Complex(-0.5, 0.1)});
  for (auto _ : state) benchmark::DoNotOptimize(transfer_eval(c, x));
}
BENCHMARK(BM_TransferEval)->Arg(4)->Arg(16)->Arg(64);
BENCHMARK_MAIN();
