#include <benchmark/benchmark.h>

#include "steklov/dtn_solver.hpp"
#include "steklov/numerics/sym_matrix.hpp"
#include "steklov/radial.hpp"

using namespace steklov;

namespace {

void riccati_mode(benchmark::State& state) {
  const auto s = SurfaceMetric::sphere();
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(radial_log_derivative(s, k, 1.2));
}
BENCHMARK(riccati_mode)->Arg(1)->Arg(16)->Arg(128);

void ball_spectrum_sphere(benchmark::State& state) {
  const auto s = SurfaceMetric::sphere();
  const int count = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ball_spectrum(s, 0.8, count));
}
BENCHMARK(ball_spectrum_sphere)->Arg(9)->Arg(65);

void generalized_eigen(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::MatrixXd a = Eigen::MatrixXd::Random(n, n);
  const Eigen::MatrixXd b = Eigen::MatrixXd::Random(n, n);
  const numerics::SymMatrix k(a.transpose() * a);
  const numerics::SymMatrix m(b.transpose() * b + Eigen::MatrixXd::Identity(n, n));
  for (auto _ : state) benchmark::DoNotOptimize(numerics::sym_geig(k, m, 1e-12));
}
BENCHMARK(generalized_eigen)->Arg(65)->Arg(257)->Unit(benchmark::kMillisecond);

void perturbed_disc_spectrum(benchmark::State& state) {
  const auto plane = SurfaceMetric::plane();
  const StarDomain d({1.0, 0.0, 0.2}, {});
  for (auto _ : state) benchmark::DoNotOptimize(steklov_spectrum(plane, d, 9));
}
BENCHMARK(perturbed_disc_spectrum)->Unit(benchmark::kMillisecond);

void solve_fixed_order(benchmark::State& state) {
  const auto s = SurfaceMetric::sphere();
  const StarDomain d({0.8, 0.03, -0.05}, {0.04});
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_at_order(s, d, K, default_quad_points(K)));
}
BENCHMARK(solve_fixed_order)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
