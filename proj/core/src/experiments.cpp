#include "donorsim/experiments.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <thread>

#include "donorsim/spin_system.hpp"

namespace donorsim {

std::vector<double> GridAxis::values() const {
  validate();
  std::vector<double> v(points);
  if (points == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < points; ++i) {
    const double f = double(i) / (points - 1);
    v[i] = log_scale ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo);
  }
  return v;
}

void GridAxis::validate() const {
  if (points < 1) throw std::invalid_argument("axis " + name + ": points must be >= 1");
  if (points > 1 && !(hi > lo))
    throw std::invalid_argument("axis " + name + ": max must exceed min");
  if (log_scale && !(lo > 0))
    throw std::invalid_argument("axis " + name + ": log scale needs min > 0");
}

void ExperimentSpec::validate() const {
  base.validate();
  if (!(transport_us > 0)) throw std::invalid_argument("transport_us: must be > 0");
  if (!(esr_us > 0)) throw std::invalid_argument("esr_us: must be > 0");
  if (transport_step_us < 0 || esr_step_us < 0)
    throw std::invalid_argument("sample steps must be >= 0 (0 selects the default)");
  if (threads < 1) throw std::invalid_argument("threads: must be >= 1");
}

namespace {

// Default sample step: 1 ns resolves the ~14 MHz driven oscillations on
// short windows; 10 ns keeps >= 50 us windows affordable.
double default_step_us(double duration_us) { return duration_us <= 1.0 ? 1e-3 : 1e-2; }

DensityState initial_state_01(const BasisDescriptor& basis,
                              const Eigen::MatrixXcd& nuclear_state) {
  const int nc = basis.nuclear_count();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  for (ElectronState e : {ElectronState::Up01, ElectronState::Down01}) {
    const int off = static_cast<int>(e) * nc;
    rho.block(off, off, nc, nc) = 0.5 * nuclear_state;
  }
  return vectorize(rho);
}

Eigen::MatrixXcd mixed_nuclear(const BasisDescriptor& basis) {
  const int nc = basis.nuclear_count();
  return Eigen::MatrixXcd::Identity(nc, nc) / double(nc);
}

std::vector<Observable> trace_observables(const SystemConfig& cfg,
                                          const BasisDescriptor& basis) {
  const ObservableSet set = ObservableSet::build(basis);
  std::vector<Observable> obs;
  obs.push_back(current_observable(cfg, basis));
  obs.push_back(Observable::from_diagonal("p_s02", "1", set.ps02));
  obs.push_back(Observable::from_diagonal("p_11", "1", set.p11));
  obs.push_back(Observable::from_diagonal("p_01", "1", set.p01));
  for (Observable& o : nuclear_observables(basis)) obs.push_back(std::move(o));
  obs.push_back(Observable::from_diagonal("trace", "1",
                                          Eigen::VectorXd::Ones(basis.dim())));
  return obs;
}

struct SequenceResult {
  TimeTrace trace;
  double omega_MHz = 0.0;
};

// Transport stage followed by a continuous-ESR stage, both evolved in the
// rotating frame (populations are frame-independent).
SequenceResult run_forward_sequence(SystemConfig cfg, const BasisDescriptor& basis,
                                    const DensityState& rho0, double transport_us,
                                    double esr_us, double transport_step_us,
                                    double esr_step_us) {
  cfg.direction = Direction::Forward;
  cfg.validate();

  const Operator h = build_hamiltonian(cfg, basis);
  const Operator h1 = build_esr_drive(cfg, basis);
  double omega = cfg.omega_drive_MHz;
  if (omega <= 0.0) {
    omega = cfg.single_donor_pair()
                ? resonance_frequency(cfg)
                : resonance_search(h, total_electron_sx(basis), basis);
  }

  const Operator zero = Operator::Zero(basis.dim(), basis.dim());
  const Eigen::MatrixXcd dissip = dissipator(cfg, basis);

  std::vector<Stage> stages;
  stages.push_back({make_generator(apply_rwa(h, zero, omega, basis), dissip),
                    transport_us, transport_step_us});
  stages.push_back({make_generator(apply_rwa(h, h1, omega, basis), dissip),
                    esr_us, esr_step_us});

  SequenceResult result;
  result.omega_MHz = omega;
  result.trace = evolve_trace(stages, rho0, trace_observables(cfg, basis));
  return result;
}

}  // namespace

double window_average(const TimeTrace& trace, const std::string& column,
                      double t_from_us, double t_to_us) {
  const int col = trace.column(column);
  double sum = 0.0;
  int count = 0;
  for (int i = 0; i < trace.samples(); ++i) {
    if (trace.times_us[i] >= t_from_us && trace.times_us[i] <= t_to_us) {
      sum += trace.values(i, col);
      ++count;
    }
  }
  if (count == 0) throw std::invalid_argument("window_average: empty window");
  return sum / count;
}

SweepGrid sweep(const GridAxis& axis1, const GridAxis& axis2, int threads,
                const std::vector<std::string>& names,
                const std::vector<std::string>& units,
                const std::function<Eigen::VectorXd(double, double)>& point_fn) {
  SweepGrid grid;
  grid.axis1_name = axis1.name;
  grid.axis1_unit = axis1.unit;
  grid.axis2_name = axis2.name;
  grid.axis2_unit = axis2.unit;
  grid.axis1 = axis1.values();
  grid.axis2 = axis2.values();
  grid.names = names;
  grid.units = units;

  const int n1 = static_cast<int>(grid.axis1.size());
  const int n2 = static_cast<int>(grid.axis2.size());
  const int rows = n1 * n2;
  grid.values.resize(rows, Eigen::Index(names.size()));

  std::atomic<int> next{0};
  std::vector<std::string> errors(rows);
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < rows; i = next.fetch_add(1)) {
      const int i1 = i / n2, i2 = i % n2;
      try {
        const Eigen::VectorXd row = point_fn(grid.axis1[i1], grid.axis2[i2]);
        if (row.size() != Eigen::Index(names.size()))
          throw std::logic_error("point function returned wrong column count");
        grid.values.row(i) = row;
      } catch (const std::exception& e) {
        errors[i] = "grid point (" + axis1.name + "=" + std::to_string(grid.axis1[i1]) +
                    ", " + axis2.name + "=" + std::to_string(grid.axis2[i2]) +
                    "): " + e.what();
      }
    }
  };

  const int nthreads = std::max(1, std::min(threads, rows));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const std::string& err : errors)
    if (!err.empty()) throw std::runtime_error(err);
  return grid;
}

SweepGrid run_spin_funnel(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.axis1.name != "delta_MHz" || spec.axis2.name != "b0_mT")
    throw std::invalid_argument("spin_funnel: expects axis1=delta_MHz, axis2=b0_mT");
  if (spec.axis1.lo < 0)
    throw std::invalid_argument("spin_funnel: detuning grid must satisfy delta >= 0");

  SystemConfig base = spec.base;
  base.direction = Direction::Reverse;
  const BasisDescriptor basis = build_basis(base.donors_left(), base.donors_right());
  // The dissipator depends only on the rates; reuse it across the grid.
  const Eigen::MatrixXcd dissip = dissipator(base, basis);

  auto point = [&](double delta_MHz, double b0_mT) {
    SystemConfig cfg = base;
    cfg.delta_MHz = delta_MHz;
    cfg.b0_T = b0_mT / 1000.0;
    const Generator g = make_generator(build_hamiltonian(cfg, basis), dissip);
    // One quasi-stationary mode per nuclear configuration: nuclear
    // repolarization is orders of magnitude slower than the transport cycle,
    // so the measured current is the ergodic average over nuclear sectors.
    const SteadyState ss = steady_state(g, basis.nuclear_count());
    const double current = current_pa(ss.rho, cfg, basis);
    const double iqd = iqd_reference_pa(cfg);
    Eigen::VectorXd row(6);
    row << current, iqd, current - iqd, exchange_j(cfg.tc_MHz, cfg.delta_MHz),
        cfg.gamma_e_MHzT * cfg.b0_T, ss.degenerate ? 1.0 : 0.0;
    return row;
  };
  return sweep(spec.axis1, spec.axis2, spec.threads,
               {"i_pA", "i_qd_pA", "delta_i_pA", "j_MHz", "zeeman_MHz", "degenerate"},
               {"pA", "pA", "pA", "MHz", "MHz", "1"}, point);
}

TimeTrace run_psb_esr(const ExperimentSpec& spec) {
  spec.validate();
  const BasisDescriptor basis =
      build_basis(spec.base.donors_left(), spec.base.donors_right());
  const DensityState rho0 = initial_state_01(basis, mixed_nuclear(basis));
  const double tstep = spec.transport_step_us > 0 ? spec.transport_step_us
                                                  : default_step_us(spec.transport_us);
  const double estep = spec.esr_step_us > 0 ? spec.esr_step_us
                                            : default_step_us(spec.esr_us);
  return run_forward_sequence(spec.base, basis, rho0, spec.transport_us, spec.esr_us,
                              tstep, estep)
      .trace;
}

ReadoutResult run_readout_protocol(const ExperimentSpec& spec) {
  spec.validate();
  const BasisDescriptor basis =
      build_basis(spec.base.donors_left(), spec.base.donors_right());
  const int nc = basis.nuclear_count();

  // Initialize all-up (T1 relaxation modeled as state preparation), then an
  // instantaneous NMR rotation by theta about x on the left nucleus.
  double theta = std::fmod(spec.theta_rad, kTwoPi);
  if (theta < 0) theta += kTwoPi;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(nc);
  const int left_down = 1 << (basis.nuclei() - 1);
  psi(0) = std::cos(theta / 2.0);
  psi(left_down) = std::complex<double>(0.0, -1.0) * std::sin(theta / 2.0);
  const Eigen::MatrixXcd nuclear = psi * psi.adjoint();

  const double tstep = spec.transport_step_us > 0 ? spec.transport_step_us
                                                  : default_step_us(spec.transport_us);
  const double estep = spec.esr_step_us > 0 ? spec.esr_step_us
                                            : default_step_us(spec.esr_us);
  SequenceResult seq =
      run_forward_sequence(spec.base, basis, initial_state_01(basis, nuclear),
                           spec.transport_us, spec.esr_us, tstep, estep);

  const double t_end = spec.transport_us + spec.esr_us;
  ReadoutResult result;
  result.readout_current_pa =
      window_average(seq.trace, "current_pA", t_end - 0.2 * spec.esr_us, t_end);
  result.trace = std::move(seq.trace);
  return result;
}

SweepGrid run_stark_sweep(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.axis1.name != "b0_mT" || spec.axis2.name != "da_MHz")
    throw std::invalid_argument("stark_sweep: expects axis1=b0_mT, axis2=da_MHz");
  if (!spec.base.single_donor_pair())
    throw std::invalid_argument("stark_sweep: one donor per dot");
  const double a_bulk = spec.base.a_left_MHz[0];
  for (double da : spec.axis2.values())
    if (da > a_bulk)
      throw std::invalid_argument("stark_sweep: da_MHz exceeds the bulk hyperfine constant");

  const BasisDescriptor basis = build_basis(1, 1);
  // Coarser sampling than the single-trace runs: only the final-window
  // average enters the map.
  const double tstep = spec.transport_step_us > 0 ? spec.transport_step_us : 0.25;
  const double estep = spec.esr_step_us > 0 ? spec.esr_step_us : 0.025;

  auto point = [&, spec](double b0_mT, double da_MHz) {
    SystemConfig cfg = spec.base;
    cfg.b0_T = b0_mT / 1000.0;
    // Stark shift reduces the contact hyperfine of the lead-side donor; with
    // the shift on the right donor instead, both Eq. 3-tracked lines drift
    // toward resonance as da grows and the high-field current rises with da.
    cfg.a_left_MHz = {a_bulk - da_MHz};
    cfg.a_right_MHz = {a_bulk};
    cfg.tc_MHz = a_bulk;
    cfg.omega_drive_MHz = 0.0;  // re-tune per point
    SequenceResult seq =
        run_forward_sequence(cfg, basis, initial_state_01(basis, mixed_nuclear(basis)),
                             spec.transport_us, spec.esr_us, tstep, estep);
    const double t_end = spec.transport_us + spec.esr_us;
    Eigen::VectorXd row(2);
    row << window_average(seq.trace, "current_pA", t_end - 0.2 * spec.esr_us, t_end),
        seq.omega_MHz;
    return row;
  };
  return sweep(spec.axis1, spec.axis2, spec.threads, {"current_pA", "omega_MHz"},
               {"pA", "MHz"}, point);
}

TimeTrace run_cluster(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.base.donors_left() + spec.base.donors_right() != 3)
    throw std::invalid_argument("cluster: expects a 1P-2P configuration");
  const BasisDescriptor basis =
      build_basis(spec.base.donors_left(), spec.base.donors_right());
  const DensityState rho0 = initial_state_01(basis, mixed_nuclear(basis));
  // dim^2 = 3136; keep the propagator caches affordable.
  const double tstep = spec.transport_step_us > 0 ? spec.transport_step_us : 0.25;
  const double estep = spec.esr_step_us > 0 ? spec.esr_step_us : 0.025;
  return run_forward_sequence(spec.base, basis, rho0, spec.transport_us, spec.esr_us,
                              tstep, estep)
      .trace;
}

}  // namespace donorsim
