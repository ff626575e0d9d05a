#pragma once

namespace donorsim {

// Units used throughout: energies and rates in linear-frequency MHz,
// magnetic fields in tesla, times in microseconds.  The 2*pi factor is
// absorbed into the Liouville-space generator.
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Gyromagnetic ratios of the donor electron and the 31P nucleus, MHz/T.
inline constexpr double kGammaElectronMHzT = 28024.0;
inline constexpr double kGammaNuclearMHzT = 17.235;

// Bulk contact hyperfine constant of P in Si, MHz.
inline constexpr double kBulkHyperfineMHz = 117.53;

// Elementary charge, coulomb.
inline constexpr double kElectronCharge = 1.602176634e-19;

// I [pA] = |e| * Gamma [MHz -> Hz] * P * 1e12.
inline constexpr double kCurrentPaPerMHz = kElectronCharge * 1e18;

}  // namespace donorsim
