#include <benchmark/benchmark.h>

#include "donorsim/experiments.hpp"
#include "donorsim/liouville.hpp"
#include "donorsim/observables.hpp"
#include "donorsim/spin_system.hpp"

using namespace donorsim;

namespace {

SystemConfig psb_config(int donors_right) {
  SystemConfig cfg;
  cfg.b0_T = 1.0;
  cfg.b_ac_esr_T = 1e-3;
  cfg.tc_MHz = kBulkHyperfineMHz;
  if (donors_right == 2) cfg.a_right_MHz = {kBulkHyperfineMHz, kBulkHyperfineMHz};
  return cfg;
}

Generator driven_generator(const SystemConfig& cfg, const BasisDescriptor& basis) {
  const Operator h = build_hamiltonian(cfg, basis);
  const Operator h1 = build_esr_drive(cfg, basis);
  const double omega = cfg.single_donor_pair()
                           ? resonance_frequency(cfg)
                           : resonance_search(h, total_electron_sx(basis), basis);
  return make_generator(apply_rwa(h, h1, omega, basis), dissipator(cfg, basis));
}

void bm_hamiltonian(benchmark::State& state) {
  const int nr = int(state.range(0));
  const SystemConfig cfg = psb_config(nr);
  const BasisDescriptor basis = build_basis(1, nr);
  for (auto _ : state) benchmark::DoNotOptimize(build_hamiltonian(cfg, basis));
}
BENCHMARK(bm_hamiltonian)->Arg(1)->Arg(2);

void bm_generator(benchmark::State& state) {
  const int nr = int(state.range(0));
  const SystemConfig cfg = psb_config(nr);
  const BasisDescriptor basis = build_basis(1, nr);
  for (auto _ : state) benchmark::DoNotOptimize(driven_generator(cfg, basis));
}
BENCHMARK(bm_generator)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void bm_vectorize(benchmark::State& state) {
  const BasisDescriptor basis = build_basis(1, 2);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(basis.dim(), basis.dim());
  rho /= double(basis.dim());
  for (auto _ : state) benchmark::DoNotOptimize(devectorize(vectorize(rho)));
}
BENCHMARK(bm_vectorize);

void bm_propagate(benchmark::State& state) {
  const int nr = int(state.range(0));
  const BasisDescriptor basis = build_basis(1, nr);
  const Generator g = driven_generator(psb_config(nr), basis);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(basis.dim(), basis.dim());
  rho /= double(basis.dim());
  const DensityState rho0 = vectorize(rho);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(g, rho0, 1.0));
}
BENCHMARK(bm_propagate)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void bm_steady_state(benchmark::State& state) {
  const BasisDescriptor basis = build_basis(1, 1);
  SystemConfig cfg = psb_config(1);
  cfg.b0_T = 0.25;
  cfg.b_ac_esr_T = 0.0;
  cfg.tc_MHz = 2000.0;
  cfg.delta_MHz = 4000.0;
  cfg.direction = Direction::Reverse;
  const Generator g =
      make_generator(build_hamiltonian(cfg, basis), dissipator(cfg, basis));
  for (auto _ : state)
    benchmark::DoNotOptimize(steady_state(g, basis.nuclear_count()));
}
BENCHMARK(bm_steady_state)->Unit(benchmark::kMillisecond);

void bm_evolve_trace(benchmark::State& state) {
  const BasisDescriptor basis = build_basis(1, 1);
  const Generator g = driven_generator(psb_config(1), basis);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(basis.dim(), basis.dim());
  rho /= double(basis.dim());
  const DensityState rho0 = vectorize(rho);
  const SystemConfig cfg = psb_config(1);
  const std::vector<Observable> obs = {current_observable(cfg, basis)};
  for (auto _ : state)
    benchmark::DoNotOptimize(evolve_trace({{g, 1.0, 0.01}}, rho0, obs));
}
BENCHMARK(bm_evolve_trace)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
