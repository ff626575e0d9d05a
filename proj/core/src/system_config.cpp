#include "donorsim/system_config.hpp"

#include <stdexcept>

namespace donorsim {

std::string to_string(Direction d) {
  return d == Direction::Forward ? "forward" : "reverse";
}

Direction direction_from_string(const std::string& s) {
  if (s == "forward") return Direction::Forward;
  if (s == "reverse") return Direction::Reverse;
  throw std::invalid_argument("direction: expected \"forward\" or \"reverse\", got \"" + s + "\"");
}

void SystemConfig::validate() const {
  if (!(b0_T >= 0)) throw std::invalid_argument("b0: must be >= 0");
  if (!(b_ac_esr_T >= 0)) throw std::invalid_argument("b_ac_esr: must be >= 0");
  if (!(tc_MHz >= 0)) throw std::invalid_argument("tc: must be >= 0");
  // Gamma = 0 is admitted as the no-leads limit (coherent evolution only).
  if (!(gamma_l_MHz >= 0)) throw std::invalid_argument("gamma_l: must be >= 0");
  if (!(gamma_r_MHz >= 0)) throw std::invalid_argument("gamma_r: must be >= 0");
  if (a_left_MHz.empty() || a_left_MHz.size() > 2)
    throw std::invalid_argument("a_left: needs 1 or 2 hyperfine constants");
  if (a_right_MHz.empty() || a_right_MHz.size() > 2)
    throw std::invalid_argument("a_right: needs 1 or 2 hyperfine constants");
  for (double a : a_left_MHz)
    if (!(a >= 0)) throw std::invalid_argument("a_left: hyperfine constants must be >= 0");
  for (double a : a_right_MHz)
    if (!(a >= 0)) throw std::invalid_argument("a_right: hyperfine constants must be >= 0");
  if (!(gamma_e_MHzT > 0)) throw std::invalid_argument("gamma_e: must be > 0");
  if (!(gamma_n_MHzT > 0)) throw std::invalid_argument("gamma_n: must be > 0");
}

}  // namespace donorsim
