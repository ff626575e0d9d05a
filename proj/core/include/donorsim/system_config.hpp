#pragma once

#include <string>
#include <vector>

#include "donorsim/constants.hpp"

namespace donorsim {

// Transport cycle direction through the double-donor device.
//   Forward: (0,1) -> (1,1) -> (0,2) -> (0,1), source to drain.
//   Reverse: (0,1) -> (0,2) -> (1,1) -> (0,1), drain to source.
enum class Direction { Forward, Reverse };

std::string to_string(Direction d);
Direction direction_from_string(const std::string& s);

// Physical parameters of a donor transport system.
struct SystemConfig {
  double b0_T = 0.0;             // external magnetic field B0
  double b_ac_esr_T = 0.0;       // ESR drive amplitude; effective B1 = b_ac_esr/2
  double omega_drive_MHz = 0.0;  // ESR drive frequency
  double tc_MHz = 0.0;           // tunnel coupling t_c
  double delta_MHz = 0.0;        // detuning of |S02>
  std::vector<double> a_left_MHz{kBulkHyperfineMHz};   // per-nucleus hyperfine, left dot
  std::vector<double> a_right_MHz{kBulkHyperfineMHz};  // per-nucleus hyperfine, right dot
  double gamma_l_MHz = 100.0;    // incoherent tunnel rate, source side
  double gamma_r_MHz = 100.0;    // incoherent tunnel rate, drain side
  double gamma_e_MHzT = kGammaElectronMHzT;
  double gamma_n_MHzT = kGammaNuclearMHzT;
  Direction direction = Direction::Forward;

  int donors_left() const { return static_cast<int>(a_left_MHz.size()); }
  int donors_right() const { return static_cast<int>(a_right_MHz.size()); }
  bool single_donor_pair() const { return donors_left() == 1 && donors_right() == 1; }

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

}  // namespace donorsim
