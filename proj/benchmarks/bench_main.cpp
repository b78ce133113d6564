#include <benchmark/benchmark.h>

#include "costress/boundary.hpp"
#include "costress/constitutive.hpp"
#include "costress/field.hpp"
#include "costress/galerkin.hpp"
#include "costress/surface.hpp"
#include "costress/tensor.hpp"

using namespace costress;

static void BM_CartanDecompose(benchmark::State& state) {
  SeededRng rng(1);
  const Mat3 x = rng.mat3(-1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(cartan_decompose(x));
}
BENCHMARK(BM_CartanDecompose);

static void BM_AxlAnti(benchmark::State& state) {
  SeededRng rng(2);
  const Vec3 v = rng.vec3(-1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(axl(anti(v)));
}
BENCHMARK(BM_AxlAnti);

static void BM_KinematicsClosedForm(benchmark::State& state) {
  const auto f = make_polynomial(3, 4);
  const Vec3 x{0.4, 0.5, 0.6};
  for (auto _ : state) benchmark::DoNotOptimize(kinematics(*f, x));
}
BENCHMARK(BM_KinematicsClosedForm);

static void BM_FdJet(benchmark::State& state) {
  const auto f = make_polynomial(3, 4);
  const Vec3 x{0.4, 0.5, 0.6};
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fd_jet(*f, x, order));
}
BENCHMARK(BM_FdJet)->DenseRange(1, 3);

static void BM_Stresses(benchmark::State& state) {
  const auto f = make_polynomial(5, 4);
  const MaterialParams p = MaterialParams::for_regime("GKMT", 1.0, 1.0, 0.1);
  const Vec3 x{0.3, 0.6, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(stresses(p, *f, x));
}
BENCHMARK(BM_Stresses);

static void BM_BoundaryWorkIdentity(benchmark::State& state) {
  const auto u = make_polynomial(7, 3);
  const auto du = make_polynomial(8, 3);
  const MaterialParams p = MaterialParams::for_regime("HD", 1.0, 1.0, 0.5);
  const SphericalCap cap(Vec3{0.5, 0.5, 0.5}, 0.4, 1.5707963267948966);
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(boundary_work_identity(p, *u, *du, cap, q));
}
BENCHMARK(BM_BoundaryWorkIdentity)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_Assemble(benchmark::State& state) {
  BasisSpec basis;
  basis.N = static_cast<int>(state.range(0));
  const MaterialParams p = MaterialParams::for_regime("GKMT", 1.0, 1.0, 0.1);
  LoadData load;
  load.f = make_constant(Vec3{1.0, 0.5, 0.25});
  for (auto _ : state) benchmark::DoNotOptimize(assemble(p, basis, load, 0));
}
BENCHMARK(BM_Assemble)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_AssembleAndSolve(benchmark::State& state) {
  BasisSpec basis;
  basis.N = 3;
  const MaterialParams p = MaterialParams::for_regime("HD", 1.0, 1.0, 0.1);
  LoadData load;
  load.f = make_constant(Vec3{1.0, 0.5, 0.25});
  for (auto _ : state) benchmark::DoNotOptimize(solve(assemble(p, basis, load, 0)).coeffs);
}
BENCHMARK(BM_AssembleAndSolve)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
