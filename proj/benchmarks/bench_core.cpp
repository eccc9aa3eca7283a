#include <benchmark/benchmark.h>

#include <numbers>

#include "asymphot/dispersion.hpp"
#include "asymphot/overlap.hpp"
#include "asymphot/rates.hpp"
#include "asymphot/transfer.hpp"

using namespace asymphot;

namespace {

const double kPump = wavenumber_from_wavelength_nm(750.0);

double bragg_period() { return 2 * std::numbers::pi / (effective_index(1.5, 1.6) * kPump); }

void BM_BraggStack(benchmark::State& state) {
  BraggMirror m{1.5, 1.6, bragg_period(), static_cast<int>(state.range(0)), 0.0,
                InterfaceForm::derived};
  double k = kPump / 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bragg_stack(m, k));
    k += 1e-9;
  }
}
BENCHMARK(BM_BraggStack)->Arg(10)->Arg(30);

void BM_SolveCavity(benchmark::State& state) {
  const auto m1 = flat_mirror(0.3, -5.0, 9.0);
  const auto m2 = flat_mirror(-0.3, 5.0, 9.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_cavity(m1, m2, AsymptoticKind::in_left));
  }
}
BENCHMARK(BM_SolveCavity);

void BM_PoledPhaseIntegral(benchmark::State& state) {
  const double period = 0.344;
  const double length = static_cast<double>(state.range(0)) * period;
  const PolingProfile p{true, period, -length / 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(phase_integral(2 * std::numbers::pi / period * 1.01, length, p));
  }
}
BENCHMARK(BM_PoledPhaseIntegral)->Arg(10)->Arg(1000);

void BM_SpectralRateFlat(benchmark::State& state) {
  PairSource src;
  src.structure = flat_cavity(0.3, -0.3, 10.15);
  src.modes = spdc_modes(kPump, 2.18, 2.28, 2.14, 2.18, 2.22, 2.27);
  src.k_pump = kPump;
  const auto grid = build_grid(kPump / 2, 0.2 * kPump / 2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_rate(src, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SpectralRateFlat)->Arg(401);

void BM_SpectralRateBragg(benchmark::State& state) {
  PairSource src;
  src.process = Process::sfwm;
  src.structure = bragg_cavity(1.5, 1.6, bragg_period(), 30, 9.98);
  src.modes = spdc_modes(kPump, 2.18, 2.28, 2.15, 2.18, 2.19, 2.32);
  src.modes.idler.k_ref = 1.5 * kPump;
  src.k_pump = kPump;
  const auto grid = build_grid(kPump / 2, 0.05 * kPump / 2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_rate(src, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SpectralRateBragg)->Arg(401);

}  // namespace
BENCHMARK_MAIN();
