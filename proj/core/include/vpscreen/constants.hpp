#pragma once

// Physical constants and unit conversions.
//
// Internally everything is in relativistic electron units (hbar = c = m_e = 1):
// energies in m_e c^2, lengths in reduced Compton wavelengths (hbar / m_e c).
// Conversion to eV and fm happens only at reporting boundaries.

namespace vpscreen {

struct PhysicalConstants {
  double alpha;            // fine-structure constant
  double electron_mass_eV; // m_e c^2
  double hbarc_eVfm;       // hbar c
  double compton_length_fm; // hbar / (m_e c)
};

inline constexpr double kAlpha = 1.0 / 137.035999;
inline constexpr double kElectronMassEV = 510998.95;
inline constexpr double kHbarCEVFm = 197326.98e3;
inline constexpr double kComptonFm = kHbarCEVFm / kElectronMassEV;

inline constexpr PhysicalConstants kConstants{kAlpha, kElectronMassEV,
                                              kHbarCEVFm, kComptonFm};

inline constexpr double kPi = 3.14159265358979323846;

constexpr double to_eV(double energy_me) { return energy_me * kElectronMassEV; }
constexpr double fm_to_compton(double fm) { return fm / kComptonFm; }
constexpr double compton_to_fm(double r) { return r * kComptonFm; }

} // namespace vpscreen
