// Serial vs OpenMP timings for the hot kernels: energy sums, gradients, and
// the deterministic pairwise reduction they share.  Run ./glv_bench; add
// --benchmark_filter=... to narrow.

#include "glv/energy.hpp"
#include "glv/minimize.hpp"
#include "glv/reduce.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using namespace glv;

namespace {

ComplexField noisy_field(const UniformGrid& g, unsigned long long seed) {
  ComplexField u = make_field(g, g.periodic ? FieldBC::MagneticPeriodic : FieldBC::Natural,
                              g.periodic ? 8.0 * M_PI : 0.0);
  std::mt19937_64 rng(seed);
  for (auto& z : u.values) {
    const double th = 2.0 * M_PI * (double)(rng() >> 11) * 0x1.0p-53;
    z = Complex(std::cos(th), std::sin(th));
  }
  return u;
}

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) ? "parallel" : "serial"); }

void BM_energy_2d(benchmark::State& st) {
  const UniformGrid g = make_grid_2d((int)st.range(1), 1.0, false);
  const ComplexField u = noisy_field(g, 1);
  const LinkPhases l = field_links(g, 8.0 * M_PI);
  const GL2DParams p{8.0 * M_PI, 0.05};
  for (auto _ : st) benchmark::DoNotOptimize(energy_2d(u, l, p, exec_of(st)).total);
  label(st);
}
BENCHMARK(BM_energy_2d)->Args({0, 128})->Args({1, 128})->Args({0, 256})->Args({1, 256});

void BM_gradient_2d(benchmark::State& st) {
  const UniformGrid g = make_grid_2d((int)st.range(1), 1.0, false);
  const ComplexField u = noisy_field(g, 2);
  const LinkPhases l = field_links(g, 8.0 * M_PI);
  const GL2DParams p{8.0 * M_PI, 0.05};
  for (auto _ : st) benchmark::DoNotOptimize(energy_gradient_2d(u, l, p, exec_of(st)));
  label(st);
}
BENCHMARK(BM_gradient_2d)->Args({0, 256})->Args({1, 256});

void BM_energy_3d(benchmark::State& st) {
  const UniformGrid g = make_grid_3d((int)st.range(1), 5.0, false);
  const ComplexField u = noisy_field(g, 3);
  const LinkPhases l = field_links(g, 1.0);
  const GL3DParams p = GL3DParams::gform(0.25);
  for (auto _ : st) benchmark::DoNotOptimize(energy_3d(u, l, p, exec_of(st)).total);
  label(st);
}
BENCHMARK(BM_energy_3d)->Args({0, 32})->Args({1, 32})->Args({0, 48})->Args({1, 48});

void BM_gradient_3d(benchmark::State& st) {
  const UniformGrid g = make_grid_3d((int)st.range(1), 5.0, false);
  const ComplexField u = noisy_field(g, 4);
  const LinkPhases l = field_links(g, 1.0);
  const GL3DParams p = GL3DParams::gform(0.25);
  for (auto _ : st) benchmark::DoNotOptimize(energy_gradient_3d(u, l, p, exec_of(st)));
  label(st);
}
BENCHMARK(BM_gradient_3d)->Args({0, 32})->Args({1, 32});

void BM_det_sum(benchmark::State& st) {
  const long long n = st.range(1);
  std::vector<double> v((std::size_t)n);
  std::mt19937_64 rng(5);
  for (auto& x : v) x = (double)(rng() >> 11) * 0x1.0p-53 - 0.5;
  const Exec e = exec_of(st);
  for (auto _ : st)
    benchmark::DoNotOptimize(det_sum_terms(n, [&](long long i) { return v[(std::size_t)i]; }, e));
  label(st);
}
BENCHMARK(BM_det_sum)->Args({0, 1 << 20})->Args({1, 1 << 20});

void BM_descent_step_2d(benchmark::State& st) {
  // one full minimize iteration worth of work: energy + gradient + update
  const UniformGrid g = make_grid_2d(256, 1.0, true);
  ComplexField u = noisy_field(g, 6);
  const LinkPhases l = field_links(g, 8.0 * M_PI);
  const GL2DParams p{8.0 * M_PI, 0.05};
  const Exec e = exec_of(st);
  for (auto _ : st) {
    const auto grad = energy_gradient_2d(u, l, p, e);
    for (std::size_t i = 0; i < u.values.size(); ++i) u.values[i] -= 1e-3 * grad[i];
    benchmark::DoNotOptimize(energy_2d(u, l, p, e).total);
  }
  label(st);
}
BENCHMARK(BM_descent_step_2d)->Args({0, 0})->Args({1, 0});

} // namespace

BENCHMARK_MAIN();
