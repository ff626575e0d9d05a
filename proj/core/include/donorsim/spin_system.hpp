#pragma once

#include <Eigen/Dense>

#include "donorsim/basis.hpp"
#include "donorsim/system_config.hpp"

namespace donorsim {

// Dense complex operator over the system basis, entries in MHz for
// Hamiltonians and dimensionless for projectors/spin operators.
using Operator = Eigen::MatrixXcd;

// Individual Hamiltonian terms.  All are Hermitian and tensored with the
// identity on whatever subspace they do not address.
Operator zeeman_electron(const SystemConfig& config, const BasisDescriptor& basis);
Operator zeeman_nuclear(const SystemConfig& config, const BasisDescriptor& basis);
Operator tunnel_term(const SystemConfig& config, const BasisDescriptor& basis);
Operator detuning_term(const SystemConfig& config, const BasisDescriptor& basis);
Operator hyperfine_term(const SystemConfig& config, const BasisDescriptor& basis);

// H = H_ze + H_zn + H_tc + H_delta + H_hf.  Full transverse hyperfine is
// retained; no secular approximation.
Operator build_hamiltonian(const SystemConfig& config, const BasisDescriptor& basis);

// Rotating-frame ESR drive H1 = gamma_e * B1 * (S_Lx + S_Rx + S_1x) with
// B1 = b_ac_esr / 2.  Zero on |S02>.
Operator build_esr_drive(const SystemConfig& config, const BasisDescriptor& basis);

// Total electron z-operator: +1 on T+, -1 on T-, 0 on T0/S11/S02,
// +-1/2 on the (0,1) states; identity on nuclei.
Operator total_electron_sz(const BasisDescriptor& basis);

// Total electron x-operator in the same convention as the drive (unit
// prefactor); used for transition searches.
Operator total_electron_sx(const BasisDescriptor& basis);

// z operator for the entire Hilbert space: electron Sz plus nuclear Iz.
Operator total_sz(const BasisDescriptor& basis);

// H_rot = H + H1 - omega * sigma_z, with sigma_z over the entire Hilbert
// space.  Rotating the nuclei along with the electrons keeps every
// hyperfine flip-flop term at its full laboratory detuning, so undriven
// dynamics are frame-exact and nuclear pumping is not an artifact.
Operator apply_rwa(const Operator& h, const Operator& h1, double omega_drive_MHz,
                   const BasisDescriptor& basis);

// On-resonance ESR frequency for a single donor per dot:
// Omega = (gamma_e - gamma_n) B0 + tc/4 + (A_L - A_R)/2
//         + sqrt((A_L + A_R)^2/4 + tc^2/4) / 2.
double resonance_frequency(const SystemConfig& config);

struct Eigensystem {
  Eigen::VectorXd energies;   // ascending, MHz
  Eigen::MatrixXcd states;    // orthonormal columns, same order
};

// Dense Hermitian diagonalization; rejects non-Hermitian input.
Eigensystem eigenspectrum(const Operator& h);

// Transition energy of the dominant T0 <-> T+/- line of h under the given
// drive operator: scores eigenstate pairs by drive matrix element weighted
// by triplet character.  Used where the closed-form resonance frequency
// does not apply (donor clusters).
double resonance_search(const Operator& h, const Operator& drive,
                        const BasisDescriptor& basis);

// max |H - H^dag| over entries.
double hermiticity_error(const Operator& h);

}  // namespace donorsim
