#include "vpscreen/dirac_basis.hpp"
#include "vpscreen/greens.hpp"
#include "vpscreen/specfun.hpp"
#include "vpscreen/twobody.hpp"
#include "vpscreen/uehling.hpp"
#include "vpscreen/wk.hpp"

#include <benchmark/benchmark.h>

using namespace vpscreen;
using cplx = std::complex<double>;

static void WhittakerW(benchmark::State &st) {
  const specfun::WhittakerParams p{cplx(0.2, -1.4), cplx(0.9, 0.0), 0.7};
  for (auto _ : st)
    benchmark::DoNotOptimize(specfun::whittaker_W_log(p));
}
BENCHMARK(WhittakerW);

static void CoulombGreen(benchmark::State &st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(greens::coulomb_green(cplx(0.0, 1.3), -2, 0.05, 0.4, 92.0));
}
BENCHMARK(CoulombGreen);

static void TraceSums(benchmark::State &st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(greens::trace_sums(1.3, 2, 0.05, 0.4, 92.0));
}
BENCHMARK(TraceSums);

static void Spectrum(benchmark::State &st) {
  const auto m = nucleus::fermi_from_rms(92, 5.86);
  for (auto _ : st)
    benchmark::DoNotOptimize(DiracSpectrum(-1, m, BasisParams{}));
  st.SetLabel("kappa=-1 Z=92 Fermi");
}
BENCHMARK(Spectrum)->Unit(benchmark::kMillisecond);

static void UehlingExtended(benchmark::State &st) {
  const auto m = nucleus::fermi_from_rms(92, 5.86);
  double r = 1e-3;
  for (auto _ : st) {
    benchmark::DoNotOptimize(uehling::uehling_extended(m, r));
    r = r < 1.0 ? r * 1.1 : 1e-3;
  }
}
BENCHMARK(UehlingExtended)->Unit(benchmark::kMicrosecond);

static void PairEnergy(benchmark::State &st) {
  const Orbital a = bound_1s(DiracSpectrum(-1, nucleus::point_nucleus(92), BasisParams{}));
  for (auto _ : st)
    benchmark::DoNotOptimize(twobody::pair_energy(a));
}
BENCHMARK(PairEnergy)->Unit(benchmark::kMillisecond);

// one-body WK potential on a coarse loop grid, kappa_max from the argument
static void WkPotentialCoarse(benchmark::State &st) {
  wk::WKConfig c;
  c.kappa_max = static_cast<int>(st.range(0));
  c.grid = {1e-4, 30.0, 5, 6};
  c.eps_panels = 9;
  c.eps_nodes = 5;
  for (auto _ : st)
    benchmark::DoNotOptimize(wk::WkPotential(92.0, c)(0.01));
}
BENCHMARK(WkPotentialCoarse)->Arg(1)->Arg(3)->Unit(benchmark::kSecond)->Iterations(1);
BENCHMARK_MAIN();
