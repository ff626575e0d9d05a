#include "donorsim/basis.hpp"

#include <stdexcept>

namespace donorsim {

ChargeSector BasisDescriptor::charge_sector(ElectronState e) {
  switch (e) {
    case ElectronState::TPlus:
    case ElectronState::TZero:
    case ElectronState::S11:
    case ElectronState::TMinus:
      return {1, 1};
    case ElectronState::S02:
      return {0, 2};
    case ElectronState::Up01:
    case ElectronState::Down01:
      return {0, 1};
  }
  throw std::invalid_argument("unknown electron state");
}

const char* BasisDescriptor::electron_label(ElectronState e) {
  switch (e) {
    case ElectronState::TPlus: return "T11+";
    case ElectronState::TZero: return "T11_0";
    case ElectronState::S11: return "S11";
    case ElectronState::TMinus: return "T11-";
    case ElectronState::S02: return "S02";
    case ElectronState::Up01: return "up_01";
    case ElectronState::Down01: return "down_01";
  }
  throw std::invalid_argument("unknown electron state");
}

std::string BasisDescriptor::nuclear_label(int nuclear_config) const {
  std::string s;
  for (int k = 0; k < nuclei(); ++k) s += nucleus_down(nuclear_config, k) ? 'D' : 'U';
  return s;
}

BasisDescriptor build_basis(int n_left, int n_right) {
  if (n_left < 1 || n_left > 2)
    throw std::invalid_argument("build_basis: n_left must be 1 or 2");
  if (n_right < 1 || n_right > 2)
    throw std::invalid_argument("build_basis: n_right must be 1 or 2");
  return BasisDescriptor{n_left, n_right};
}

}  // namespace donorsim
