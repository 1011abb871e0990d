#include <benchmark/benchmark.h>

#include "conecalc/assembly.hpp"
#include "conecalc/cone_model.hpp"
#include "conecalc/contour.hpp"
#include "conecalc/spectral.hpp"
#include "conecalc/tridiagonal.hpp"

namespace {

conecalc::ConeModel bench_model() {
  return conecalc::make_sphere_model(3, 1.0, 2, conecalc::Warp{});
}

void BM_assemble(benchmark::State& state) {
  auto model = bench_model();
  auto grid =
      conecalc::RadialGrid::graded(static_cast<int>(state.range(0)), 2.0, 1.0);
  for (auto _ : state) {
    auto op = conecalc::assemble_mode_operator(model, grid, 1, 0.125);
    benchmark::DoNotOptimize(op.S.diag.data());
  }
}
BENCHMARK(BM_assemble)->Arg(256)->Arg(1024)->Arg(4096);

void BM_dense_eigendecompose(benchmark::State& state) {
  auto model = bench_model();
  auto grid =
      conecalc::RadialGrid::graded(static_cast<int>(state.range(0)), 2.0, 1.0);
  auto op = conecalc::assemble_mode_operator(model, grid, 0, 0.125);
  for (auto _ : state) {
    auto dec = conecalc::eigendecompose(op);
    benchmark::DoNotOptimize(dec.eigenvalues.data());
  }
}
BENCHMARK(BM_dense_eigendecompose)->Arg(128)->Arg(256)->Arg(512);

void BM_tridiag_solve(benchmark::State& state) {
  auto model = bench_model();
  auto grid =
      conecalc::RadialGrid::graded(static_cast<int>(state.range(0)), 2.0, 1.0);
  auto op = conecalc::assemble_mode_operator(model, grid, 0, 0.125);
  conecalc::TridiagLDLT solver(op.S);
  Eigen::VectorXd f = Eigen::VectorXd::Ones(grid.dof_count());
  for (auto _ : state) {
    Eigen::VectorXd u = solver.solve(f);
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(BM_tridiag_solve)->Arg(1024)->Arg(16384);

void BM_contour_power_apply(benchmark::State& state) {
  auto model = bench_model();
  auto grid = conecalc::RadialGrid::graded(256, 2.0, 1.0);
  auto op = conecalc::assemble_mode_operator(model, grid, 0, 0.125);
  const std::complex<double> w(-0.5, 0.0);
  auto contour = conecalc::build_contour(
      1e-3, conecalc::recommended_r_max(w, 1e-8),
      static_cast<int>(state.range(0)));
  Eigen::VectorXcd f = Eigen::VectorXcd::Ones(grid.dof_count());
  for (auto _ : state) {
    auto res = conecalc::contour_power_apply(op, contour, w, f);
    benchmark::DoNotOptimize(res.u.data());
  }
}
BENCHMARK(BM_contour_power_apply)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
