#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "donorsim/spin_system.hpp"

using namespace donorsim;

namespace {

SystemConfig fig3_config(double b0_T = 1.0) {
  SystemConfig cfg;
  cfg.b0_T = b0_T;
  cfg.b_ac_esr_T = 1e-3;
  cfg.tc_MHz = kBulkHyperfineMHz;
  return cfg;
}

double scale(const Operator& h) { return std::max(1.0, h.cwiseAbs().maxCoeff()); }

}  // namespace

TEST_CASE("basis enumeration and index conventions") {
  const BasisDescriptor b11 = build_basis(1, 1);
  CHECK(b11.dim() == 28);
  CHECK(b11.nuclear_count() == 4);
  const BasisDescriptor b12 = build_basis(1, 2);
  CHECK(b12.dim() == 56);

  CHECK_THROWS_AS(build_basis(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_basis(1, 3), std::invalid_argument);

  CHECK(BasisDescriptor::charge_sector(ElectronState::S02) == ChargeSector{0, 2});
  CHECK(BasisDescriptor::charge_sector(ElectronState::TPlus) == ChargeSector{1, 1});
  CHECK(BasisDescriptor::charge_sector(ElectronState::Up01) == ChargeSector{0, 1});

  // Config 0 is all-up; the left nucleus is the most significant bit.
  CHECK(b11.nuclear_label(0) == "UU");
  CHECK(b11.nuclear_label(2) == "DU");
  CHECK(b11.nucleus_down(2, 0));
  CHECK(!b11.nucleus_down(2, 1));
  CHECK(b11.index(ElectronState::TZero, 3) == 1 * 4 + 3);
}

TEST_CASE("electron Zeeman term") {
  const BasisDescriptor basis = build_basis(1, 1);
  SystemConfig cfg;
  cfg.b0_T = 1.0;
  cfg.tc_MHz = 0.0;
  cfg.a_left_MHz = {0.0};
  cfg.a_right_MHz = {0.0};
  const Operator h = build_hamiltonian(cfg, basis);

  CHECK(h.isDiagonal(1e-14));
  const int tp = basis.index(ElectronState::TPlus, 1);
  const int tm = basis.index(ElectronState::TMinus, 1);
  // Anti-aligned nuclear config: no nuclear Zeeman contribution.
  CHECK(std::real(h(tp, tp) - h(tm, tm)) == doctest::Approx(2 * 28024.0));
  const int up = basis.index(ElectronState::Up01, 1);
  CHECK(std::real(h(up, up)) == doctest::Approx(28024.0 / 2));
}

TEST_CASE("nuclear Zeeman term") {
  const BasisDescriptor basis = build_basis(1, 1);
  SystemConfig cfg = fig3_config();
  const Operator h = zeeman_nuclear(cfg, basis);
  const int s = basis.index(ElectronState::S11, 0);  // UU
  CHECK(std::real(h(s, s)) == doctest::Approx(-17.235));
  const int d = basis.index(ElectronState::S11, 3);  // DD
  CHECK(std::real(h(d, d)) == doctest::Approx(17.235));
  const int a = basis.index(ElectronState::S11, 1);  // UD
  CHECK(std::real(h(a, a)) == doctest::Approx(0.0));
}

TEST_CASE("tunnel coupling is the only off-diagonal without hyperfine") {
  const BasisDescriptor basis = build_basis(1, 1);
  SystemConfig cfg;
  cfg.tc_MHz = kBulkHyperfineMHz;
  cfg.a_left_MHz = {0.0};
  cfg.a_right_MHz = {0.0};
  const Operator h = build_hamiltonian(cfg, basis);

  const int s11 = basis.index(ElectronState::S11, 0);
  const int s02 = basis.index(ElectronState::S02, 0);
  CHECK(std::abs(h(s11, s02)) == doctest::Approx(58.765));
  Operator off = h;
  for (int v = 0; v < basis.nuclear_count(); ++v) {
    off(basis.index(ElectronState::S11, v), basis.index(ElectronState::S02, v)) = 0;
    off(basis.index(ElectronState::S02, v), basis.index(ElectronState::S11, v)) = 0;
  }
  CHECK(off.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("zero parameters give a zero Hamiltonian") {
  const BasisDescriptor basis = build_basis(1, 1);
  SystemConfig cfg;
  cfg.a_left_MHz = {0.0};
  cfg.a_right_MHz = {0.0};
  CHECK(build_hamiltonian(cfg, basis).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("Hamiltonian constructors are Hermitian and traceless where required") {
  const BasisDescriptor basis = build_basis(1, 2);
  SystemConfig cfg = fig3_config(0.137);
  cfg.a_right_MHz = {kBulkHyperfineMHz, 91.3};
  cfg.delta_MHz = 312.0;

  for (const Operator& h :
       {zeeman_electron(cfg, basis), zeeman_nuclear(cfg, basis), tunnel_term(cfg, basis),
        detuning_term(cfg, basis), hyperfine_term(cfg, basis),
        build_hamiltonian(cfg, basis), build_esr_drive(cfg, basis)}) {
    CHECK(hermiticity_error(h) < 1e-12 * scale(h));
  }

  const Operator hf = hyperfine_term(cfg, basis);
  CHECK(std::abs(hf.trace()) < 1e-10);
  // Hyperfine acts trivially on the doubly-occupied singlet.
  const int nc = basis.nuclear_count();
  const int off = static_cast<int>(ElectronState::S02) * nc;
  CHECK(hf.block(off, off, nc, nc).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(hf.row(off + 1).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("hyperfine flip-flop matrix element is A/(2 sqrt 2)") {
  const BasisDescriptor basis = build_basis(1, 1);
  const Operator hf = hyperfine_term(fig3_config(), basis);
  // |S11, DU> -> |T-, UU>: electron pair lowers, the left nucleus raises.
  const int from = basis.index(ElectronState::S11, 2);
  const int to = basis.index(ElectronState::TMinus, 0);
  CHECK(std::abs(hf(to, from)) ==
        doctest::Approx(kBulkHyperfineMHz / (2 * std::sqrt(2.0))));
}

TEST_CASE("no singlet-triplet mixing without hyperfine") {
  const BasisDescriptor basis = build_basis(1, 1);
  SystemConfig cfg = fig3_config(0.431);
  cfg.a_left_MHz = {0.0};
  cfg.a_right_MHz = {0.0};
  const Operator h = build_hamiltonian(cfg, basis);
  const Operator sz = total_electron_sz(basis);
  CHECK((h * sz - sz * h).cwiseAbs().maxCoeff() < 1e-10 * scale(h));
}

TEST_CASE("ESR drive structure") {
  const BasisDescriptor basis = build_basis(1, 1);
  SystemConfig cfg = fig3_config();

  SystemConfig off = cfg;
  off.b_ac_esr_T = 0.0;
  CHECK(build_esr_drive(off, basis).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  const Operator h1 = build_esr_drive(cfg, basis);
  const int t0 = basis.index(ElectronState::TZero, 0);
  const int tp = basis.index(ElectronState::TPlus, 0);
  const int tm = basis.index(ElectronState::TMinus, 0);
  const double expect = 28024.0 * 5e-4 / std::sqrt(2.0);
  CHECK(std::abs(h1(tp, t0)) == doctest::Approx(expect));
  CHECK(std::abs(h1(tm, t0)) == doctest::Approx(std::abs(h1(tp, t0))));
  // Zero on the doubly-occupied singlet.
  const int s02 = basis.index(ElectronState::S02, 0);
  CHECK(h1.row(s02).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("rotating-frame transformation") {
  const BasisDescriptor basis = build_basis(1, 1);
  SystemConfig cfg = fig3_config();
  const Operator h = build_hamiltonian(cfg, basis);
  const Operator h1 = build_esr_drive(cfg, basis);

  CHECK((apply_rwa(h, h1, 0.0, basis) - (h + h1)).cwiseAbs().maxCoeff() ==
        doctest::Approx(0.0));

  // Zeeman-only Hamiltonian on resonance: T+/T- entries vanish in the
  // anti-aligned nuclear configs (total Iz = 0).
  SystemConfig ze = cfg;
  ze.tc_MHz = 0.0;
  ze.a_left_MHz = {0.0};
  ze.a_right_MHz = {0.0};
  const Operator hz = build_hamiltonian(ze, basis);
  const Operator rot =
      apply_rwa(hz, Operator::Zero(basis.dim(), basis.dim()), 28024.0, basis);
  for (int v : {1, 2}) {
    CHECK(std::abs(rot(basis.index(ElectronState::TPlus, v),
                       basis.index(ElectronState::TPlus, v))) < 1e-9);
    CHECK(std::abs(rot(basis.index(ElectronState::TMinus, v),
                       basis.index(ElectronState::TMinus, v))) < 1e-9);
  }

  CHECK(hermiticity_error(apply_rwa(h, h1, 28101.85, basis)) < 1e-12 * scale(h));
  Operator bad = h;
  bad(0, 1) += std::complex<double>(0, 1.0);
  CHECK_THROWS_AS(apply_rwa(bad, h1, 0.0, basis), std::invalid_argument);
}

TEST_CASE("closed-form resonance frequency") {
  SystemConfig cfg = fig3_config();
  CHECK(resonance_frequency(cfg) == doctest::Approx(28101.85).epsilon(1e-5));

  SystemConfig zero;
  zero.tc_MHz = 0.0;
  zero.a_left_MHz = {0.0};
  zero.a_right_MHz = {0.0};
  CHECK(resonance_frequency(zero) == doctest::Approx(0.0));

  // A_L = A_R = t_c = A: the field-free part reduces to A/4 + A sqrt(5)/4.
  const double a = kBulkHyperfineMHz;
  SystemConfig sym = fig3_config(0.731);
  const double field = (sym.gamma_e_MHzT - sym.gamma_n_MHzT) * sym.b0_T;
  CHECK(resonance_frequency(sym) - field ==
        doctest::Approx(a / 4 + a * std::sqrt(5.0) / 4));

  SystemConfig cluster = fig3_config();
  cluster.a_right_MHz = {a, a};
  CHECK_THROWS_AS(resonance_frequency(cluster), std::invalid_argument);
}

TEST_CASE("eigenspectrum") {
  const BasisDescriptor basis = build_basis(1, 1);
  SystemConfig cfg;
  cfg.tc_MHz = kBulkHyperfineMHz;
  cfg.a_left_MHz = {0.0};
  cfg.a_right_MHz = {0.0};
  const Eigensystem eig = eigenspectrum(build_hamiltonian(cfg, basis));

  for (int i = 1; i < eig.energies.size(); ++i)
    CHECK(eig.energies(i) >= eig.energies(i - 1));
  // t_c-only: the S11/S02 doublet splits by exactly t_c.
  CHECK(eig.energies(eig.energies.size() - 1) - eig.energies(0) ==
        doctest::Approx(kBulkHyperfineMHz));

  const Eigen::MatrixXcd gram = eig.states.adjoint() * eig.states;
  CHECK((gram - Eigen::MatrixXcd::Identity(basis.dim(), basis.dim()))
            .cwiseAbs()
            .maxCoeff() < 1e-10);

  Operator bad = Operator::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(eigenspectrum(bad), std::invalid_argument);
}

TEST_CASE("spectral resonance search lands near the closed form") {
  const BasisDescriptor basis = build_basis(1, 1);
  SystemConfig cfg = fig3_config();
  const double gap = resonance_search(build_hamiltonian(cfg, basis),
                                      total_electron_sx(basis), basis);
  CHECK(std::abs(gap - resonance_frequency(cfg)) < 30.0);
}
