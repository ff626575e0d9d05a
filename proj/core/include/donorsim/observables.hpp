#pragma once

#include <vector>

#include "donorsim/basis.hpp"
#include "donorsim/liouville.hpp"
#include "donorsim/system_config.hpp"

namespace donorsim {

// Diagonal projectors over the basis, as population weight vectors.
struct ObservableSet {
  Eigen::VectorXd p11;        // any (1,1) electron state
  Eigen::VectorXd ps02;       // |S02>
  Eigen::VectorXd p01;        // (0,1) states
  std::vector<Eigen::VectorXd> nuclear;          // one per nuclear config
  std::vector<Eigen::VectorXd> electron_states;  // one per electron state

  static ObservableSet build(const BasisDescriptor& basis);
};

// Transport current in pA: reverse |e| Gamma_L P(1,1), forward |e| Gamma_R P(S02).
double current_pa(const DensityState& state, const SystemConfig& config,
                  const BasisDescriptor& basis);

// Same functional as a trace observable.
Observable current_observable(const SystemConfig& config, const BasisDescriptor& basis);

// Quantum-dot reference current (no spin structure) in pA:
// I_QD = |e| Gamma_L (tc/2)^2 / ((Gamma_R/2)^2 + (tc/2)^2 (2 + Gamma_L/Gamma_R) + Delta^2).
double iqd_reference_pa(const SystemConfig& config);

// Exchange interaction J = Delta/2 + sqrt((tc/2)^2 + (Delta/2)^2), MHz.
double exchange_j(double tc_MHz, double delta_MHz);

// Probabilities of the nuclear configurations, in basis order; sum to 1.
std::vector<double> nuclear_projections(const DensityState& state,
                                        const BasisDescriptor& basis);

std::vector<Observable> nuclear_observables(const BasisDescriptor& basis);

// Hyperfine-induced electron Larmor difference diagnostic for the
// two-single-donor case: A_L <I_z,L> - A_R <I_z,R> over the nuclear marginal.
double larmor_difference(const DensityState& state, const SystemConfig& config,
                         const BasisDescriptor& basis);

}  // namespace donorsim
