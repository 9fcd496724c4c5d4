#pragma once
#include "vpscreen/dirac_basis.hpp"
#include "vpscreen/nucleus.hpp"
#include "vpscreen/wk.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

// Screening of the (1s)^2 pair energy by the vacuum-polarization loop:
// diagram a (loop potential inserted in an electron line) and diagram b
// (loop in the exchanged photon), for the Uehling and Wichmann-Kroll parts.
// All results in eV.

namespace vpscreen::assembly {

enum class Diagram { UehlA, UehlB, WKA, WKB };
const char *to_string(Diagram d);

enum class Part { Uehling, WK };

struct Contribution {
  int Z{0};
  Diagram diagram{Diagram::UehlA};
  double value{0.0};
  double uncertainty{0.0};
  std::string model; // e.g. "fermi rms=5.86 fm"
};

std::string describe(const nucleus::NuclearModel &m);

struct Settings {
  BasisParams basis{};
  wk::WKConfig wk{};
  int potential_points{1200};
  std::string cache_dir; // empty: no spectrum cache
  //! Step of the central difference for dE_VP/dZ.
  double dz{0.5};
};

//! Ground state of an ion together with its spectrum.
struct Ion {
  std::shared_ptr<const DiracSpectrum> spectrum;
  Orbital a;
  int index{0}; // position of a in the spectrum
};

Ion make_ion(const nucleus::NuclearModel &m, const Settings &s);

//! Orbital correction sum_{n != a} |n><n|U|a> / (e_a - e_n) for a radial
//! potential U (m_e c^2 units).
Orbital perturbed_orbital(const Ion &ion, const std::function<double(double)> &u);

//! Radial potential of the given part for this nucleus, m_e c^2 units. For
//! an extended nucleus the Wichmann-Kroll loop sees a shell of the same rms.
std::function<double(double)> loop_potential(const nucleus::NuclearModel &m, Part p,
                                              const Settings &s);

Contribution delta_e_a(int Z, const nucleus::NuclearModel &m, Part p, const Settings &s);
Contribution delta_e_b(int Z, const nucleus::NuclearModel &m, Part p, const Settings &s);

//! |E(1.01 rms) - E(rms)| for one diagram; zero for a point nucleus.
double rms_uncertainty(int Z, const nucleus::NuclearModel &m, Diagram d, const Settings &s);

struct Totals {
  std::vector<Contribution> parts; // UehlA, UehlB, WKA, WKB
  double total{0.0};
  double uncertainty{0.0}; // from the rms variation of the Uehling-a term
};

Totals total(int Z, const nucleus::NuclearModel &m, const Settings &s);

//! One-electron loop energy <1s|U_Uehl + U_WK|1s> of a point nucleus.
double vp_energy(double Z, const Settings &s);

//! The four diagrams with the second electron replaced by the external
//! potential -alpha/r, for a point nucleus. Their sum equals dE_VP/dZ, here
//! also obtained by a Richardson-improved central difference of vp_energy.
//! The corrections and the derivative are reported with their own signs;
//! discrepancy = | |sum| - |dE/dZ| | / |dE/dZ|.
struct ControlReport {
  int Z{0};
  double uehl_a{0.0}, uehl_b{0.0}, wk_a{0.0}, wk_b{0.0};
  double sum{0.0};
  double dedz{0.0};      // extrapolated from steps dz and dz/2
  double dedz_step{0.0}; // plain central difference with step dz
  double discrepancy{0.0};
};

ControlReport control_table1(int Z, const Settings &s);

} // namespace vpscreen::assembly
