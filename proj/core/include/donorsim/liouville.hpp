#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "donorsim/results.hpp"
#include "donorsim/spin_system.hpp"

namespace donorsim {

// Vectorized density operator, column-stacking convention:
// rho(j,k) lives at index k*dim + j.
struct DensityState {
  Eigen::VectorXcd v;
  int dim = 0;

  std::complex<double> trace() const;
  Eigen::MatrixXcd matrix() const;       // devectorized rho
  double hermiticity_error() const;      // max |rho - rho^dag|
  double min_eigenvalue() const;         // of (rho + rho^dag)/2
};

DensityState vectorize(const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd devectorize(const DensityState& state);

// Liouville-space generator; coherent and dissipative parts kept separately.
struct Generator {
  Eigen::MatrixXcd coherent;     // realizes -i*2pi*[H, .]
  Eigen::MatrixXcd dissipative;
  int dim = 0;                   // Hilbert dimension (superoperator is dim^2 x dim^2)

  Eigen::MatrixXcd total() const { return coherent + dissipative; }
};

// Coherent superoperator for Hermitian h (MHz):
// devectorize(L * vectorize(rho)) == -i * 2pi * (h*rho - rho*h).
Eigen::MatrixXcd liouvillian(const Operator& h);

// Lead-tunneling dissipator for the configured transport direction,
// angular-rate-free (rates enter linearly, in 1/us).  Tunneling acts as the
// identity on the nuclear subspace; trace-preserving by construction.
Eigen::MatrixXcd dissipator(const SystemConfig& config, const BasisDescriptor& basis);

Generator make_generator(const Operator& h_rot, const Eigen::MatrixXcd& dissip);

// exp(G t) * rho0 via scaling-and-squaring Pade matrix exponential.
DensityState propagate(const Generator& g, const DensityState& rho0, double t_us);

// Named linear functional of the state: value = Re sum_k weights_k * v_k,
// i.e. weights = vec(O^T) for an observable operator O.
struct Observable {
  std::string name;
  std::string unit;
  Eigen::VectorXcd weights;

  double evaluate(const DensityState& state) const;
  static Observable from_operator(std::string name, std::string unit,
                                  const Eigen::MatrixXcd& op);
  static Observable from_diagonal(std::string name, std::string unit,
                                  const Eigen::VectorXd& diag);
};

struct Stage {
  Generator gen;
  double duration_us = 0.0;
  double sample_step_us = 0.0;
};

// Piecewise-constant staged evolution.  Per stage the fixed-step propagator
// exp(G * sample_step) is computed once and reused; stage boundaries are hit
// exactly with a remainder step.  The t=0 sample is included.
TimeTrace evolve_trace(const std::vector<Stage>& stages, const DensityState& rho0,
                       const std::vector<Observable>& observables);

struct SteadyState {
  DensityState rho;
  bool degenerate = false;  // more than the trivial mode retained
  double residual = 0.0;    // ||G * vec(rho)||_2
};

// Solves G rho = 0 with Tr(rho) = 1.
//
// With slow_modes == 1 and a unique nullspace: direct linear solve with
// iterative refinement, residual < 1e-10.
//
// With slow_modes > 1, or when the nullspace is (near-)degenerate: returns
// the long-time average reached from the maximally mixed state, treating the
// slow_modes slowest decay modes of G as stationary — the ergodic average
// over metastable configurations (e.g. nuclear polarization sectors whose
// interconversion is far slower than electron transport).  Computed by
// shift-inverted subspace iteration and an oblique spectral projection;
// flagged degenerate.  Throws if no normalizable solution exists.
SteadyState steady_state(const Generator& g, int slow_modes = 1);

}  // namespace donorsim
