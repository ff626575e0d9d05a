#include "donorsim/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "donorsim/detail/kron.hpp"

namespace donorsim {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

std::complex<double> DensityState::trace() const {
  std::complex<double> t = 0.0;
  for (int j = 0; j < dim; ++j) t += v(j * dim + j);
  return t;
}

Eigen::MatrixXcd DensityState::matrix() const {
  return Eigen::Map<const Mat>(v.data(), dim, dim);
}

double DensityState::hermiticity_error() const {
  const Mat rho = matrix();
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityState::min_eigenvalue() const {
  const Mat rho = matrix();
  Eigen::SelfAdjointEigenSolver<Mat> solver((rho + rho.adjoint()) / 2.0,
                                            Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

DensityState vectorize(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("vectorize: density operator must be square");
  const int n = static_cast<int>(rho.rows());
  DensityState state;
  state.dim = n;
  state.v = Eigen::Map<const Vec>(rho.data(), n * n);
  return state;
}

Eigen::MatrixXcd devectorize(const DensityState& state) {
  if (state.v.size() != Eigen::Index(state.dim) * state.dim)
    throw std::invalid_argument("devectorize: vector length is not dim^2");
  return state.matrix();
}

Eigen::MatrixXcd liouvillian(const Operator& h) {
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (hermiticity_error(h) > 1e-10 * scale)
    throw std::invalid_argument("liouvillian: Hamiltonian is not Hermitian");
  const int n = static_cast<int>(h.rows());
  const Mat id = Mat::Identity(n, n);
  // Column-stacking: vec(H rho) = (I (x) H) vec(rho), vec(rho H) = (H^T (x) I) vec(rho).
  return std::complex<double>(0.0, -kTwoPi) *
         (detail::kron(id, h) - detail::kron(h.transpose(), id));
}

namespace {

struct Jump {
  ElectronState from, to;
  double rate;  // 1/us
};

std::vector<Jump> jump_table(const SystemConfig& c) {
  const double gl = c.gamma_l_MHz, gr = c.gamma_r_MHz;
  using E = ElectronState;
  if (c.direction == Direction::Forward) {
    // (0,1) -> (1,1) at Gamma_L with the stated branching, (0,2) -> (0,1) at Gamma_R.
    return {{E::Up01, E::TPlus, gl / 2}, {E::Up01, E::TZero, gl / 4},
            {E::Up01, E::S11, gl / 4},   {E::Down01, E::TMinus, gl / 2},
            {E::Down01, E::TZero, gl / 4}, {E::Down01, E::S11, gl / 4},
            {E::S02, E::Up01, gr / 2},   {E::S02, E::Down01, gr / 2}};
  }
  // Reverse: (1,1) -> (0,1) at Gamma_L, (0,1) -> (0,2) at Gamma_R.
  return {{E::TPlus, E::Up01, gl},      {E::TZero, E::Up01, gl / 2},
          {E::TZero, E::Down01, gl / 2}, {E::S11, E::Up01, gl / 2},
          {E::S11, E::Down01, gl / 2},  {E::TMinus, E::Down01, gl},
          {E::Up01, E::S02, gr},        {E::Down01, E::S02, gr}};
}

}  // namespace

Eigen::MatrixXcd dissipator(const SystemConfig& config, const BasisDescriptor& basis) {
  config.validate();
  const int nc = basis.nuclear_count();
  const int n = basis.dim();
  Mat d = Mat::Zero(n * n, n * n);

  for (const Jump& jump : jump_table(config)) {
    if (jump.rate <= 0.0) continue;
    const int from = static_cast<int>(jump.from) * nc;
    const int to = static_cast<int>(jump.to) * nc;
    // Each jump operator is |to><from| on the electron, identity on the
    // nuclei.  Gain term L rho L^dag transfers nuclear-diagonal and
    // nuclear-coherence elements alike.
    for (int vr = 0; vr < nc; ++vr)
      for (int vcol = 0; vcol < nc; ++vcol)
        d((to + vcol) * n + (to + vr), (from + vcol) * n + (from + vr)) += jump.rate;
    // Anticommutator part: decay of every element sharing a row or column
    // with the departing state.
    for (int k = 0; k < n; ++k)
      for (int v2 = 0; v2 < nc; ++v2) {
        d(k * n + (from + v2), k * n + (from + v2)) -= jump.rate / 2.0;
        d((from + v2) * n + k, (from + v2) * n + k) -= jump.rate / 2.0;
      }
  }
  return d;
}

Generator make_generator(const Operator& h_rot, const Eigen::MatrixXcd& dissip) {
  const int n = static_cast<int>(h_rot.rows());
  if (dissip.rows() != Eigen::Index(n) * n || dissip.cols() != dissip.rows())
    throw std::invalid_argument("make_generator: dissipator is not dim^2 x dim^2");
  Generator g;
  g.dim = n;
  g.coherent = liouvillian(h_rot);
  g.dissipative = dissip;
  return g;
}

DensityState propagate(const Generator& g, const DensityState& rho0, double t_us) {
  if (t_us < 0.0) throw std::invalid_argument("propagate: t must be >= 0");
  if (rho0.dim != g.dim) throw std::invalid_argument("propagate: state/generator mismatch");
  const Mat gt = g.total() * t_us;
  if (!gt.allFinite()) throw std::invalid_argument("propagate: generator has non-finite entries");
  DensityState out;
  out.dim = rho0.dim;
  out.v = gt.exp() * rho0.v;
  return out;
}

double Observable::evaluate(const DensityState& state) const {
  return weights.cwiseProduct(state.v).sum().real();
}

Observable Observable::from_operator(std::string name, std::string unit,
                                     const Eigen::MatrixXcd& op) {
  // Tr(O rho) = sum_jk O(j,k) rho(k,j); rho(k,j) sits at index j*n + k.
  Observable o;
  o.name = std::move(name);
  o.unit = std::move(unit);
  o.weights = vectorize(op.transpose()).v;
  return o;
}

Observable Observable::from_diagonal(std::string name, std::string unit,
                                     const Eigen::VectorXd& diag) {
  const int n = static_cast<int>(diag.size());
  Observable o;
  o.name = std::move(name);
  o.unit = std::move(unit);
  o.weights = Vec::Zero(Eigen::Index(n) * n);
  for (int j = 0; j < n; ++j) o.weights(j * n + j) = diag(j);
  return o;
}

TimeTrace evolve_trace(const std::vector<Stage>& stages, const DensityState& rho0,
                       const std::vector<Observable>& observables) {
  if (stages.empty()) throw std::invalid_argument("evolve_trace: empty stage list");
  for (const Stage& s : stages) {
    if (!(s.duration_us > 0.0)) throw std::invalid_argument("evolve_trace: stage duration must be > 0");
    if (!(s.sample_step_us > 0.0)) throw std::invalid_argument("evolve_trace: sample step must be > 0");
    if (s.gen.dim != rho0.dim) throw std::invalid_argument("evolve_trace: state/generator mismatch");
  }

  TimeTrace trace;
  Eigen::Index total = 1;
  std::vector<Eigen::Index> full_steps(stages.size());
  std::vector<double> remainders(stages.size());
  for (size_t i = 0; i < stages.size(); ++i) {
    const double ratio = stages[i].duration_us / stages[i].sample_step_us;
    full_steps[i] = static_cast<Eigen::Index>(std::floor(ratio + 1e-9));
    double rem = stages[i].duration_us - double(full_steps[i]) * stages[i].sample_step_us;
    if (rem < 1e-12 * stages[i].duration_us) rem = 0.0;
    remainders[i] = rem;
    total += full_steps[i] + (rem > 0.0 ? 1 : 0);
  }
  trace.values.resize(total, Eigen::Index(observables.size()));
  trace.times_us.reserve(total);
  for (const Observable& o : observables) {
    trace.names.push_back(o.name);
    trace.units.push_back(o.unit);
  }

  Vec v = rho0.v;
  Eigen::Index row = 0;
  auto record = [&](double t) {
    trace.times_us.push_back(t);
    DensityState s{v, rho0.dim};
    for (size_t k = 0; k < observables.size(); ++k)
      trace.values(row, Eigen::Index(k)) = observables[k].evaluate(s);
    ++row;
  };
  record(0.0);

  double stage_start = 0.0;
  for (size_t i = 0; i < stages.size(); ++i) {
    const Mat g = stages[i].gen.total();
    if (!g.allFinite())
      throw std::invalid_argument("evolve_trace: generator has non-finite entries");
    const Mat p = (g * stages[i].sample_step_us).exp();
    for (Eigen::Index k = 1; k <= full_steps[i]; ++k) {
      v = p * v;
      record(stage_start + double(k) * stages[i].sample_step_us);
    }
    if (remainders[i] > 0.0) {
      v = ((g * remainders[i]).exp() * v).eval();
      record(stage_start + stages[i].duration_us);
    }
    stage_start += stages[i].duration_us;
  }
  return trace;
}

namespace {

DensityState maximally_mixed(int n) {
  DensityState s;
  s.dim = n;
  s.v = Vec::Zero(Eigen::Index(n) * n);
  for (int j = 0; j < n; ++j) s.v(j * n + j) = 1.0 / n;
  return s;
}

// Normalizes by trace and symmetrizes; returns false if not normalizable.
bool finalize_state(Vec& x, int n) {
  if (!x.allFinite()) return false;
  std::complex<double> tr = 0.0;
  for (int j = 0; j < n; ++j) tr += x(j * n + j);
  if (std::abs(tr) < 1e-12) return false;
  x /= tr;
  Eigen::Map<Mat> rho(x.data(), n, n);
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  return true;
}

// Orthonormal basis of the invariant subspace of `a` belonging to its
// smallest-modulus eigenvalues, via subspace iteration on the shift-inverted
// factorization.  block_size columns; deterministic start.
Mat slow_subspace(const Eigen::PartialPivLU<Mat>& lu, Eigen::Index n2, int block,
                  bool adjoint, const Vec& seed) {
  Mat w(n2, block);
  w.col(0) = seed.normalized();
  // Deterministic pseudo-random fill for the remaining probe directions.
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  auto next = [&state] {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return double(state >> 11) / double(1ull << 53) - 0.5;
  };
  for (int c = 1; c < block; ++c)
    for (Eigen::Index r = 0; r < n2; ++r) w(r, c) = std::complex<double>(next(), next());
  for (int it = 0; it < 10; ++it) {
    if (adjoint)
      w = lu.adjoint().solve(w);
    else
      w = lu.solve(w);
    Eigen::HouseholderQR<Mat> qr(w);
    w = qr.householderQ() * Mat::Identity(n2, block);
  }
  return w;
}

}  // namespace

SteadyState steady_state(const Generator& g, int slow_modes) {
  const int n = g.dim;
  const Eigen::Index n2 = Eigen::Index(n) * n;
  if (slow_modes < 1) throw std::invalid_argument("steady_state: slow_modes must be >= 1");
  const Mat m = g.total();
  const double scale = m.cwiseAbs().maxCoeff();

  if (scale == 0.0) {
    // Everything is steady; report the ergodic representative.
    return {maximally_mixed(n), true, 0.0};
  }

  const Mat a = m / scale;

  if (slow_modes == 1) {
    // Fast path: replace the rho(0,0) row with the trace constraint and solve
    // the square system, with iterative refinement.  The dropped row is
    // linearly dependent on the other diagonal rows for a trace-preserving G.
    Mat at = a;
    at.row(0).setZero();
    for (int j = 0; j < n; ++j) at(0, j * n + j) = 1.0;
    Vec b = Vec::Zero(n2);
    b(0) = 1.0;
    Eigen::PartialPivLU<Mat> lu(at);
    Vec x = lu.solve(b);
    for (int it = 0; it < 3; ++it) x += lu.solve(b - at * x);

    Vec xs = x;
    if (finalize_state(xs, n)) {
      const double residual = (m * xs).norm();
      DensityState rho{xs, n};
      if (residual < 1e-10 && rho.min_eigenvalue() > -1e-8) {
        return {std::move(rho), false, residual};
      }
    }
  }

  // Ergodic average from the maximally mixed state: project onto the
  // invariant subspace of the slow_modes slowest modes (plus any further
  // modes inside the numerical null tolerance or tied in modulus).  The
  // projection is oblique — along the complementary invariant subspace — so
  // it equals the long-time limit with slow interconversion frozen.
  const Vec v0 = maximally_mixed(n).v;
  const int block = static_cast<int>(std::min<Eigen::Index>(n2, slow_modes + 6));
  Eigen::PartialPivLU<Mat> lu(a + 1e-12 * Mat::Identity(n2, n2));
  const Mat wr = slow_subspace(lu, n2, block, false, v0);
  const Mat wl = slow_subspace(lu, n2, block, true, v0);

  // Ritz values on the right subspace decide how many modes to keep.
  const Mat br = wr.adjoint() * (a * wr);
  Eigen::ComplexEigenSolver<Mat> ritz(br);
  if (ritz.info() != Eigen::Success)
    throw std::runtime_error("steady_state: Ritz eigendecomposition failed");
  std::vector<double> mods(block);
  for (int i = 0; i < block; ++i) mods[i] = std::abs(ritz.eigenvalues()(i));
  std::vector<double> sorted = mods;
  std::sort(sorted.begin(), sorted.end());
  const double cut = std::max(1e-9, sorted[slow_modes - 1] * (1.0 + 1e-6));
  std::vector<int> keep;
  for (int i = 0; i < block; ++i)
    if (mods[i] <= cut) keep.push_back(i);

  Mat r(n2, Eigen::Index(keep.size()));
  for (size_t i = 0; i < keep.size(); ++i)
    r.col(Eigen::Index(i)) = wr * ritz.eigenvectors().col(keep[i]);

  // Matching left invariant subspace (A^dag Ritz problem).  The spectra of A
  // and A^dag are conjugate, so pair by taking the same number of
  // smallest-modulus modes rather than re-applying the cut, which is fragile
  // against near-ties at the boundary.
  const Mat bl = wl.adjoint() * (a.adjoint() * wl);
  Eigen::ComplexEigenSolver<Mat> ritz_l(bl);
  if (ritz_l.info() != Eigen::Success)
    throw std::runtime_error("steady_state: Ritz eigendecomposition failed");
  std::vector<int> keep_l(block);
  std::iota(keep_l.begin(), keep_l.end(), 0);
  std::sort(keep_l.begin(), keep_l.end(), [&](int i, int j) {
    return std::abs(ritz_l.eigenvalues()(i)) < std::abs(ritz_l.eigenvalues()(j));
  });
  keep_l.resize(keep.size());
  Mat l(n2, Eigen::Index(keep_l.size()));
  for (size_t i = 0; i < keep_l.size(); ++i)
    l.col(Eigen::Index(i)) = wl * ritz_l.eigenvectors().col(keep_l[i]);

  // Oblique spectral projector P = R (L^dag R)^-1 L^dag applied to v0.
  Vec v = r * (l.adjoint() * r).partialPivLu().solve(l.adjoint() * v0);
  if (!finalize_state(v, n))
    throw std::runtime_error("steady_state: no normalizable nullspace vector found");
  const double residual = (m * v).norm();
  // Kept modes decay no faster than `cut`; anything beyond that means the
  // projection failed.
  if (residual > 10.0 * cut * scale * v.norm() + 1e-8 * scale)
    throw std::runtime_error("steady_state: nullspace projection did not converge");
  return {DensityState{v, n}, keep.size() > 1, residual};
}

}  // namespace donorsim
