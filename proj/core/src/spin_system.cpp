#include "donorsim/spin_system.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace donorsim {
namespace {

using Mat = Eigen::MatrixXcd;
constexpr std::complex<double> kI{0.0, 1.0};

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Spin-1/2 operators with eigenvalues +-1/2, basis {up, down}.
Mat spin_half(char axis) {
  Mat s(2, 2);
  switch (axis) {
    case 'x': s << 0.0, 0.5, 0.5, 0.0; break;
    case 'y': s << 0.0, -0.5 * kI, 0.5 * kI, 0.0; break;
    case 'z': s << 0.5, 0.0, 0.0, -0.5; break;
    default: throw std::logic_error("bad spin axis");
  }
  return s;
}

// Single-site operator on nucleus k (0 = first left nucleus), identity elsewhere.
Mat nuclear_site_op(const BasisDescriptor& basis, int k, const Mat& single) {
  Mat out = Mat::Identity(1, 1);
  for (int j = 0; j < basis.nuclei(); ++j)
    out = kron(out, j == k ? single : Mat::Identity(2, 2));
  return out;
}

// Fixed product -> singlet-triplet map on the (1,1) electron pair.
// Rows are [T+, T0, S11, T-], columns [uu, ud, du, dd].
Mat product_to_st() {
  const double r = 1.0 / std::sqrt(2.0);
  Mat u = Mat::Zero(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = r; u(1, 2) = r;
  u(2, 1) = r; u(2, 2) = -r;
  u(3, 3) = 1.0;
  return u;
}

void check_config_matches_basis(const SystemConfig& config, const BasisDescriptor& basis) {
  config.validate();
  if (config.donors_left() != basis.n_left || config.donors_right() != basis.n_right)
    throw std::invalid_argument("hyperfine list lengths do not match the basis donor counts");
}

// Electron-diagonal operator tensored with the nuclear identity.
Mat electron_diagonal(const BasisDescriptor& basis, const Eigen::VectorXd& diag) {
  const int nc = basis.nuclear_count();
  Mat h = Mat::Zero(basis.dim(), basis.dim());
  for (int e = 0; e < BasisDescriptor::n_electron; ++e)
    for (int v = 0; v < nc; ++v) h(e * nc + v, e * nc + v) = diag(e);
  return h;
}

}  // namespace

Operator zeeman_electron(const SystemConfig& config, const BasisDescriptor& basis) {
  check_config_matches_basis(config, basis);
  const double ez = config.gamma_e_MHzT * config.b0_T;
  Eigen::VectorXd diag(7);
  diag << ez, 0.0, 0.0, -ez, 0.0, ez / 2.0, -ez / 2.0;
  return electron_diagonal(basis, diag);
}

Operator zeeman_nuclear(const SystemConfig& config, const BasisDescriptor& basis) {
  check_config_matches_basis(config, basis);
  const int nc = basis.nuclear_count();
  Mat h = Mat::Zero(basis.dim(), basis.dim());
  for (int v = 0; v < nc; ++v) {
    double iz_total = 0.0;
    for (int k = 0; k < basis.nuclei(); ++k)
      iz_total += basis.nucleus_down(v, k) ? -0.5 : 0.5;
    const double energy = -config.gamma_n_MHzT * config.b0_T * iz_total;
    for (int e = 0; e < BasisDescriptor::n_electron; ++e)
      h(e * nc + v, e * nc + v) = energy;
  }
  return h;
}

Operator tunnel_term(const SystemConfig& config, const BasisDescriptor& basis) {
  check_config_matches_basis(config, basis);
  const int nc = basis.nuclear_count();
  const int s11 = static_cast<int>(ElectronState::S11);
  const int s02 = static_cast<int>(ElectronState::S02);
  Mat h = Mat::Zero(basis.dim(), basis.dim());
  for (int v = 0; v < nc; ++v) {
    h(s11 * nc + v, s02 * nc + v) = config.tc_MHz / 2.0;
    h(s02 * nc + v, s11 * nc + v) = config.tc_MHz / 2.0;
  }
  return h;
}

Operator detuning_term(const SystemConfig& config, const BasisDescriptor& basis) {
  check_config_matches_basis(config, basis);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(7);
  diag(static_cast<int>(ElectronState::S02)) = -config.delta_MHz;
  return electron_diagonal(basis, diag);
}

Operator hyperfine_term(const SystemConfig& config, const BasisDescriptor& basis) {
  check_config_matches_basis(config, basis);
  const int nc = basis.nuclear_count();
  const Mat id2 = Mat::Identity(2, 2);
  const Mat id_nuc = Mat::Identity(nc, nc);

  // (1,1) block, built in the two-electron product basis then rotated into
  // the singlet-triplet basis.
  Mat h11 = Mat::Zero(4 * nc, 4 * nc);
  // (0,1) block: one electron on the right dot, coupled to the right nuclei only.
  Mat h01 = Mat::Zero(2 * nc, 2 * nc);
  for (char axis : {'x', 'y', 'z'}) {
    const Mat s = spin_half(axis);
    const Mat s_left = kron(s, id2);
    const Mat s_right = kron(id2, s);
    for (int k = 0; k < basis.n_left; ++k)
      h11 += config.a_left_MHz[k] * kron(s_left, nuclear_site_op(basis, k, s));
    for (int k = 0; k < basis.n_right; ++k) {
      const Mat i_k = nuclear_site_op(basis, basis.n_left + k, s);
      h11 += config.a_right_MHz[k] * kron(s_right, i_k);
      h01 += config.a_right_MHz[k] * kron(s, i_k);
    }
  }
  const Mat u = kron(product_to_st(), id_nuc);

  Mat h = Mat::Zero(basis.dim(), basis.dim());
  h.topLeftCorner(4 * nc, 4 * nc) = u * h11 * u.adjoint();
  h.bottomRightCorner(2 * nc, 2 * nc) = h01;  // |S02> block stays zero
  return h;
}

Operator build_hamiltonian(const SystemConfig& config, const BasisDescriptor& basis) {
  return zeeman_electron(config, basis) + zeeman_nuclear(config, basis) +
         tunnel_term(config, basis) + detuning_term(config, basis) +
         hyperfine_term(config, basis);
}

Operator total_electron_sx(const BasisDescriptor& basis) {
  const int nc = basis.nuclear_count();
  const Mat id2 = Mat::Identity(2, 2);
  const Mat id_nuc = Mat::Identity(nc, nc);
  const Mat s = spin_half('x');
  const Mat u = product_to_st();
  const Mat sx11 = u * (kron(s, id2) + kron(id2, s)) * u.adjoint();

  Mat op = Mat::Zero(basis.dim(), basis.dim());
  op.topLeftCorner(4 * nc, 4 * nc) = kron(sx11, id_nuc);
  op.bottomRightCorner(2 * nc, 2 * nc) = kron(s, id_nuc);
  return op;
}

Operator total_electron_sz(const BasisDescriptor& basis) {
  Eigen::VectorXd diag(7);
  diag << 1.0, 0.0, 0.0, -1.0, 0.0, 0.5, -0.5;
  return electron_diagonal(basis, diag);
}

Operator total_sz(const BasisDescriptor& basis) {
  const int nc = basis.nuclear_count();
  Mat op = total_electron_sz(basis);
  for (int v = 0; v < nc; ++v) {
    double iz = 0.0;
    for (int k = 0; k < basis.nuclei(); ++k) iz += basis.nucleus_down(v, k) ? -0.5 : 0.5;
    for (int e = 0; e < BasisDescriptor::n_electron; ++e)
      op(e * nc + v, e * nc + v) += iz;
  }
  return op;
}

Operator build_esr_drive(const SystemConfig& config, const BasisDescriptor& basis) {
  check_config_matches_basis(config, basis);
  const double b1 = config.b_ac_esr_T / 2.0;
  return (config.gamma_e_MHzT * b1) * total_electron_sx(basis);
}

double hermiticity_error(const Operator& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

namespace {
void require_hermitian(const Operator& h, const char* who) {
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (hermiticity_error(h) > 1e-10 * scale)
    throw std::invalid_argument(std::string(who) + ": input operator is not Hermitian");
}
}  // namespace

Operator apply_rwa(const Operator& h, const Operator& h1, double omega_drive_MHz,
                   const BasisDescriptor& basis) {
  if (h.rows() != basis.dim() || h1.rows() != basis.dim())
    throw std::invalid_argument("apply_rwa: operator dimension does not match basis");
  require_hermitian(h, "apply_rwa");
  return h + h1 - omega_drive_MHz * total_sz(basis);
}

double resonance_frequency(const SystemConfig& config) {
  config.validate();
  if (!config.single_donor_pair())
    throw std::invalid_argument(
        "resonance_frequency: closed form only applies to one donor per dot");
  const double al = config.a_left_MHz[0];
  const double ar = config.a_right_MHz[0];
  const double tc = config.tc_MHz;
  return (config.gamma_e_MHzT - config.gamma_n_MHzT) * config.b0_T + tc / 4.0 +
         (al - ar) / 2.0 +
         std::sqrt((al + ar) * (al + ar) / 4.0 + tc * tc / 4.0) / 2.0;
}

Eigensystem eigenspectrum(const Operator& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("eigenspectrum: matrix not square");
  require_hermitian(h, "eigenspectrum");
  Eigen::SelfAdjointEigenSolver<Mat> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigenspectrum: diagonalization failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double resonance_search(const Operator& h, const Operator& drive,
                        const BasisDescriptor& basis) {
  const Eigensystem eig = eigenspectrum(h);
  const int nc = basis.nuclear_count();
  const int n = basis.dim();

  auto electron_weight = [&](int col, ElectronState e) {
    return eig.states.col(col).segment(static_cast<int>(e) * nc, nc).squaredNorm();
  };

  const Mat drive_eig = eig.states.adjoint() * drive * eig.states;
  double best_score = -1.0, best_gap = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t0_i = electron_weight(i, ElectronState::TZero);
    const double tpm_i =
        electron_weight(i, ElectronState::TPlus) + electron_weight(i, ElectronState::TMinus);
    for (int j = i + 1; j < n; ++j) {
      const double gap = eig.energies(j) - eig.energies(i);
      if (gap < 1e-6) continue;
      const double t0_j = electron_weight(j, ElectronState::TZero);
      const double tpm_j =
          electron_weight(j, ElectronState::TPlus) + electron_weight(j, ElectronState::TMinus);
      const double score =
          std::norm(drive_eig(i, j)) * (t0_i * tpm_j + t0_j * tpm_i);
      if (score > best_score) {
        best_score = score;
        best_gap = gap;
      }
    }
  }
  if (best_score <= 0.0)
    throw std::runtime_error("resonance_search: no driven triplet transition found");
  return best_gap;
}

}  // namespace donorsim
