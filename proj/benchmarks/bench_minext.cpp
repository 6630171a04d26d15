#include <benchmark/benchmark.h>

#include <random>

#include "minext/certificate.hpp"
#include "minext/grid_solver.hpp"
#include "minext/pipeline.hpp"
#include "minext/reproduce.hpp"
#include "minext/structure.hpp"

using namespace minext;

namespace {

SpectralData random_data(int m, int atoms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<TorusPoint> p;
  std::vector<Complex> w;
  for (int i = 0; i < atoms; ++i) {
    p.push_back(TorusPoint{u(rng)});
    w.push_back(std::polar(0.5 + u(rng), 6.283185307179586 * u(rng)));
  }
  return fourier_transform(DiscreteMeasure::from_points(p, w), FrequencySet::range_1d(-m, m));
}

void BM_GridSolve1d(benchmark::State& state) {
  const SpectralData d = random_data(static_cast<int>(state.range(0)), 3, 7);
  const GridSpec grid{1, static_cast<int>(state.range(1))};
  const ForwardMatrix a = build_forward_matrix(d.lambda(), grid);
  for (auto _ : state) {
    SolveReport r = basis_pursuit(a, d);
    benchmark::DoNotOptimize(r.epsilon);
    state.counters["iterations"] = r.iterations;
  }
}
BENCHMARK(BM_GridSolve1d)->Args({1, 64})->Args({4, 128})->Args({8, 256})->Unit(benchmark::kMillisecond);

void BM_GridSolveE5(benchmark::State& state) {
  const SpectralData d = example_input("e5").data;
  for (auto _ : state) benchmark::DoNotOptimize(solve_on_grid(d, GridSpec{2, static_cast<int>(state.range(0))}).epsilon);
}
BENCHMARK(BM_GridSolveE5)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_CertificateRoots(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  const FrequencySet l = FrequencySet::range_1d(-m, m);
  std::vector<Complex> c(l.size());
  for (auto& v : c) v = Complex(g(rng), g(rng));
  const TrigPolynomial phi(l, c);
  const TrigPolynomial unit = phi.scaled(1.0 / measured_sup_norm(phi, 4096));
  for (auto _ : state) benchmark::DoNotOptimize(support_from_certificate_1d(unit).size());
}
BENCHMARK(BM_CertificateRoots)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_LatticeSolve(benchmark::State& state) {
  const std::vector<Frequency> p{Frequency{1, 2}, Frequency{-3, 2}};
  const RationalVector beta{Rational(1, 2), Rational(-1, 2)};
  for (auto _ : state) benchmark::DoNotOptimize(lattice_solve(p, beta).index());
}
BENCHMARK(BM_LatticeSolve);

void BM_Pipeline(benchmark::State& state) {
  const std::vector<std::string> ids = fixture_ids();
  const SpectralData d = example_input(ids[static_cast<std::size_t>(state.range(0))]).data;
  state.SetLabel(ids[static_cast<std::size_t>(state.range(0))]);
  for (auto _ : state) benchmark::DoNotOptimize(analyze(d).epsilon);
}
BENCHMARK(BM_Pipeline)->DenseRange(0, 7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
