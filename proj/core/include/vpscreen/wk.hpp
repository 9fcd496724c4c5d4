#pragma once
#include "vpscreen/dirac_basis.hpp"
#include "vpscreen/loop.hpp"

#include <iosfwd>
#include <vector>

// Wichmann-Kroll parts of the vacuum polarization: the one-body potential
// and the two-body loop energies, from Dirac partial waves on the imaginary
// frequency axis with the free loop subtracted.

namespace vpscreen::wk {

struct WKConfig {
  int kappa_max{5};       // potential
  int loop_kappa_max{10}; // two-body loop energies; the magnetic terms fall off slowly
  loop::LoopGridParams grid{};
  // frequency panels [0, e1], [e1, e1 r], [e1 r, e1 r^2], ...
  double eps_first{0.5};
  double eps_ratio{3.0};
  int eps_panels{12};
  int eps_nodes{6};
  bool tail_extrapolation{true};
  // kappa series: converged when the tail is below rel_tol of the sum or,
  // for loop energies, below abs_tol_eV
  double rel_tol{1e-2};
  double abs_tol_eV{1e-3};
  int threads{1};
};

struct KappaSeries {
  std::vector<double> terms; // one per |kappa|, starting at 1
  double sum{0.0};           // terms plus tail
  double tail{0.0};
  bool converged{false};
};

//! Remainder of a series from a power law k^-p through its last two terms;
//! converged when that remainder exists and is below rel_tol of the sum or
//! below abs_tol. Without extrapolation the last term is the remainder.
KappaSeries make_series(std::vector<double> terms, bool extrapolate, double rel_tol,
                        double abs_tol = 0.0);

//! U_WK(x) in m_e c^2 units, tabulated on the loop grid.
class WkPotential {
public:
  WkPotential(double Z, const WKConfig &cfg);
  //! Loop in the field of an extended nucleus; the vertex sees the same field.
  WkPotential(const nucleus::NuclearModel &m, const WKConfig &cfg);

  double Z() const { return m_Z; }
  double operator()(double x) const;
  //! Contribution of each |kappa| at x, with the power-law tail.
  KappaSeries series(double x) const;
  const quad::RadialGrid &grid() const { return m_grid; }
  //! Text dump: radius followed by the per-|kappa| partial potentials.
  void dump(std::ostream &os) const;
  //! Net charge of each partial-wave density, removed at the origin.
  const std::vector<double> &removed_charge() const { return m_removed; }

private:
  void build(const nucleus::NuclearModel &m);

  double m_Z;
  WKConfig m_cfg;
  quad::RadialGrid m_grid;
  std::vector<std::vector<double>> m_partial; // per |kappa|, U at the nodes
  std::vector<double> m_total;
  std::vector<double> m_removed; // point charge taken out of each |kappa|
};

double wk_potential_a(double x, double Z, const WKConfig &cfg);

//! Two-body loop energies for a (1s)^2 pair with orbital a; point-nucleus
//! loop of charge Z. Results in eV.
struct LoopEnergies {
  double b_energy{0.0};  // two photons to the electrons (timelike + magnetic)
  double timelike{0.0};  // its Coulomb-photon part
  std::vector<double> timelike_terms; // per |kappa|
  double control{0.0};   // one photon to the electron, one to -alpha/r
  KappaSeries b_series, control_series;
};

LoopEnergies loop_energies(const Orbital &a, double Z, const WKConfig &cfg);

double wk_b_energy(const Orbital &a, double Z, const WKConfig &cfg);
double wk_control_b(const Orbital &a, double Z, const WKConfig &cfg);

//! Frequency nodes and weights of the configured panels.
quad::QuadratureRule frequency_rule(const WKConfig &cfg);

} // namespace vpscreen::wk
