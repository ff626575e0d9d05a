#pragma once

#include <functional>
#include <string>
#include <vector>

#include "donorsim/liouville.hpp"
#include "donorsim/observables.hpp"
#include "donorsim/results.hpp"

namespace donorsim {

struct GridAxis {
  std::string name;
  std::string unit;
  double lo = 0.0;
  double hi = 0.0;
  int points = 0;
  bool log_scale = false;

  std::vector<double> values() const;
  void validate() const;
};

// Parameterized recipe for one of the five protocols.
struct ExperimentSpec {
  std::string id;  // spin_funnel | psb_esr | readout | stark_sweep | cluster
  SystemConfig base;
  GridAxis axis1, axis2;          // sweeps only
  double transport_us = 50.0;
  double esr_us = 50.0;
  double transport_step_us = 0.0;  // 0 -> experiment default
  double esr_step_us = 0.0;
  double theta_rad = 0.0;          // readout NMR rotation angle
  int threads = 1;

  void validate() const;
};

// Generic grid evaluator: runs point_fn(axis1 value, axis2 value) over the
// grid, optionally across threads; output ordering is by grid index
// regardless of execution order.  Per-point failures are rethrown with the
// grid coordinates attached.
SweepGrid sweep(const GridAxis& axis1, const GridAxis& axis2, int threads,
                const std::vector<std::string>& names,
                const std::vector<std::string>& units,
                const std::function<Eigen::VectorXd(double, double)>& point_fn);

// Reverse-cycle steady-state current minus the quantum-dot reference over a
// (detuning, B0) grid, with the analytic exchange curve attached.
SweepGrid run_spin_funnel(const ExperimentSpec& spec);

// Forward cycle: transport to Pauli spin blockade, then continuous ESR on
// resonance; records current, charge populations and nuclear projections.
TimeTrace run_psb_esr(const ExperimentSpec& spec);

struct ReadoutResult {
  TimeTrace trace;
  double readout_current_pa = 0.0;  // time average, final 20% of the ESR stage
};

// Nuclear readout protocol: prepare all-up nuclei, rotate the left nucleus
// by theta about x, then transport + ESR.
ReadoutResult run_readout_protocol(const ExperimentSpec& spec);

// Post-ESR steady current over a (B0, dA_LR) grid with the left-donor
// hyperfine reduced by dA_LR and the drive re-tuned per point.
SweepGrid run_stark_sweep(const ExperimentSpec& spec);

// 1P-2P cluster transport; the drive frequency comes from a spectral search.
TimeTrace run_cluster(const ExperimentSpec& spec);

// Time average of an observable column over samples with t in [t_from_us, t_to_us].
double window_average(const TimeTrace& trace, const std::string& column,
                      double t_from_us, double t_to_us);

}  // namespace donorsim
