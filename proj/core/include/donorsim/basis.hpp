#pragma once

#include <array>
#include <string>

namespace donorsim {

// Electron basis states in the fixed canonical order.
enum class ElectronState : int {
  TPlus = 0,   // |T11+>
  TZero = 1,   // |T11 0>
  S11 = 2,     // |S11>
  TMinus = 3,  // |T11->
  S02 = 4,     // |S02>
  Up01 = 5,    // |up_01>
  Down01 = 6,  // |down_01>
};

struct ChargeSector {
  int n_left = 0;
  int n_right = 0;
  bool operator==(const ChargeSector&) const = default;
};

// Enumeration of the electron (x) nuclear product basis.  Nuclear
// configurations are indexed by bit pattern: bit 0 is the *last* nucleus
// (left-dot nuclei come first, then right-dot), bit value 1 means spin-down,
// so config 0 is all-up.  Global index = electron_index * nuclear_count + nuclear_index.
struct BasisDescriptor {
  int n_left = 1;
  int n_right = 1;

  static constexpr int n_electron = 7;

  int nuclei() const { return n_left + n_right; }
  int nuclear_count() const { return 1 << nuclei(); }
  int dim() const { return n_electron * nuclear_count(); }

  int index(ElectronState e, int nuclear_config) const {
    return static_cast<int>(e) * nuclear_count() + nuclear_config;
  }

  // True if nucleus k (0 = first left nucleus) is spin-down in this config.
  bool nucleus_down(int nuclear_config, int k) const {
    return (nuclear_config >> (nuclei() - 1 - k)) & 1;
  }

  static ChargeSector charge_sector(ElectronState e);
  static const char* electron_label(ElectronState e);
  std::string nuclear_label(int nuclear_config) const;  // e.g. "UD"
};

// Validates donor counts (1 or 2 per dot) and returns the descriptor.
BasisDescriptor build_basis(int n_left, int n_right);

}  // namespace donorsim
