#include "donorsim/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace donorsim {

ObservableSet ObservableSet::build(const BasisDescriptor& basis) {
  const int n = basis.dim();
  const int nc = basis.nuclear_count();
  ObservableSet set;
  set.p11 = Eigen::VectorXd::Zero(n);
  set.ps02 = Eigen::VectorXd::Zero(n);
  set.p01 = Eigen::VectorXd::Zero(n);
  set.nuclear.assign(nc, Eigen::VectorXd::Zero(n));
  set.electron_states.assign(BasisDescriptor::n_electron, Eigen::VectorXd::Zero(n));

  for (int e = 0; e < BasisDescriptor::n_electron; ++e) {
    const auto sector = BasisDescriptor::charge_sector(static_cast<ElectronState>(e));
    for (int v = 0; v < nc; ++v) {
      const int idx = e * nc + v;
      set.electron_states[e](idx) = 1.0;
      set.nuclear[v](idx) = 1.0;
      if (sector == ChargeSector{1, 1}) set.p11(idx) = 1.0;
      else if (sector == ChargeSector{0, 2}) set.ps02(idx) = 1.0;
      else set.p01(idx) = 1.0;
    }
  }
  return set;
}

namespace {
double population(const DensityState& state, const Eigen::VectorXd& diag) {
  double p = 0.0;
  for (int j = 0; j < state.dim; ++j)
    if (diag(j) != 0.0) p += diag(j) * state.v(j * state.dim + j).real();
  return p;
}
}  // namespace

double current_pa(const DensityState& state, const SystemConfig& config,
                  const BasisDescriptor& basis) {
  const ObservableSet set = ObservableSet::build(basis);
  if (config.direction == Direction::Reverse)
    return kCurrentPaPerMHz * config.gamma_l_MHz * population(state, set.p11);
  return kCurrentPaPerMHz * config.gamma_r_MHz * population(state, set.ps02);
}

Observable current_observable(const SystemConfig& config, const BasisDescriptor& basis) {
  const ObservableSet set = ObservableSet::build(basis);
  const bool reverse = config.direction == Direction::Reverse;
  const double prefactor =
      kCurrentPaPerMHz * (reverse ? config.gamma_l_MHz : config.gamma_r_MHz);
  return Observable::from_diagonal("current_pA", "pA",
                                   prefactor * (reverse ? set.p11 : set.ps02));
}

double iqd_reference_pa(const SystemConfig& config) {
  if (!(config.gamma_r_MHz > 0.0))
    throw std::invalid_argument("iqd_reference: gamma_r must be > 0");
  const double tc2 = config.tc_MHz / 2.0;
  const double gr2 = config.gamma_r_MHz / 2.0;
  const double mhz = config.gamma_l_MHz * tc2 * tc2 /
                     (gr2 * gr2 + tc2 * tc2 * (2.0 + config.gamma_l_MHz / config.gamma_r_MHz) +
                      config.delta_MHz * config.delta_MHz);
  return kCurrentPaPerMHz * mhz;
}

double exchange_j(double tc_MHz, double delta_MHz) {
  if (!(tc_MHz >= 0)) throw std::invalid_argument("exchange_j: tc must be >= 0");
  return delta_MHz / 2.0 +
         std::sqrt(tc_MHz * tc_MHz / 4.0 + delta_MHz * delta_MHz / 4.0);
}

std::vector<double> nuclear_projections(const DensityState& state,
                                        const BasisDescriptor& basis) {
  const ObservableSet set = ObservableSet::build(basis);
  std::vector<double> p(set.nuclear.size());
  for (size_t v = 0; v < set.nuclear.size(); ++v)
    p[v] = population(state, set.nuclear[v]);
  return p;
}

std::vector<Observable> nuclear_observables(const BasisDescriptor& basis) {
  const ObservableSet set = ObservableSet::build(basis);
  std::vector<Observable> obs;
  for (int v = 0; v < basis.nuclear_count(); ++v)
    obs.push_back(Observable::from_diagonal("p_nuc_" + basis.nuclear_label(v), "1",
                                            set.nuclear[v]));
  return obs;
}

double larmor_difference(const DensityState& state, const SystemConfig& config,
                         const BasisDescriptor& basis) {
  if (!config.single_donor_pair() || basis.n_left != 1 || basis.n_right != 1)
    throw std::invalid_argument("larmor_difference: defined for one donor per dot");
  const int nc = basis.nuclear_count();
  double iz_left = 0.0, iz_right = 0.0;
  for (int v = 0; v < nc; ++v) {
    double p = 0.0;
    for (int e = 0; e < BasisDescriptor::n_electron; ++e)
      p += state.v((e * nc + v) * state.dim + (e * nc + v)).real();
    iz_left += (basis.nucleus_down(v, 0) ? -0.5 : 0.5) * p;
    iz_right += (basis.nucleus_down(v, 1) ? -0.5 : 0.5) * p;
  }
  return config.a_left_MHz[0] * iz_left - config.a_right_MHz[0] * iz_right;
}

}  // namespace donorsim
