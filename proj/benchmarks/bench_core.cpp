#include <benchmark/benchmark.h>

#include <cmath>

#include "cavscat/dressed.hpp"
#include "cavscat/fano.hpp"
#include "cavscat/numerov.hpp"
#include "cavscat/smallmat.hpp"
#include "cavscat/units.hpp"

using namespace cavscat;

namespace {

RadialProblem hard_sphere(double r_max, double step) {
  RadialProblem p;
  p.potential.r_min = 10.0;
  p.potential.step = step;
  const auto n = static_cast<std::size_t>(std::llround((r_max - 10.0) / step)) + 1;
  p.potential.values.assign(n, 0.0);
  p.potential.asymptote = 0.0;
  p.reduced_mass_amu = 0.5 * units::yb171_mass_amu;
  p.ell = 1;
  return p;
}

void bm_sector_point(benchmark::State& state) {
  const ModelSpec m = default_model();
  const Sector sector = state.range(0) == 0 ? Sector::one_photon : Sector::two_photon;
  double r = 60.0;
  for (auto _ : state) {
    const SmallMat h = assemble_sector_hamiltonian(m, r, sector);
    benchmark::DoNotOptimize(jacobi_eigensolve(h));
    r = (r > 400.0) ? 60.0 : r + 0.02;
  }
}
BENCHMARK(bm_sector_point)->Arg(0)->Arg(1);

void bm_tracked_segment(benchmark::State& state) {
  const ModelSpec m = default_model();
  RadialGrid grid;
  grid.r_min = 50.0;
  grid.r_max = 250.0;
  grid.step = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(diagonalize_spectrum(m, Sector::one_photon, grid));
  }
}
BENCHMARK(bm_tracked_segment);

void bm_continuum_solve(benchmark::State& state) {
  const RadialProblem p = hard_sphere(410.0, 0.01);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_scattering(p, 1700.0));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(p.size()));
}
BENCHMARK(bm_continuum_solve);

void bm_resonant_element(benchmark::State& state) {
  const double lambda = 0.2;
  double e = 1686.0;
  for (auto _ : state) {
    const auto a = dressed_amplitude(e, 1688.0, lambda);
    const TMatrixResult tm = t_matrix(1.7, a, lambda);
    benchmark::DoNotOptimize(cross_section(tm.t, 0.28));
    e = (e > 1690.0) ? 1686.0 : e + 1e-4;
  }
}
BENCHMARK(bm_resonant_element);

}  // namespace

BENCHMARK_MAIN();
