#pragma once
#include <vector>

// Nuclear charge distributions and their electrostatic potential.
// Radii inside NuclearModel are in fm; the functions below take r in
// electron Compton wavelengths and return energies in units of m_e c^2.

namespace vpscreen::nucleus {

enum class Shape { Point, Fermi, Shell };

struct NuclearModel {
  //! Nuclear charge. Kept real so that derivatives in Z can be taken by
  //! finite differences; physical ions use integer values.
  double Z{1.0};
  Shape shape{Shape::Point};
  double c_fm{0.0};   // Fermi half-density radius
  double a_fm{0.0};   // Fermi diffuseness
  double R_fm{0.0};   // shell radius
  double rms_fm{0.0}; // zero for a point nucleus
};

//! Fermi skin thickness t (10%-90%) used when none is given; a = t/(4 ln 3).
inline constexpr double kDefaultSkinFm = 2.3;

NuclearModel point_nucleus(double Z);
NuclearModel shell_nucleus(double Z, double R_fm);

//! Fermi distribution with fixed skin thickness and c chosen so that the
//! rms radius equals rms_fm. Throws DomainError if no c > 0 exists.
NuclearModel fermi_from_rms(double Z, double rms_fm, double skin_fm = kDefaultSkinFm);

//! Model of the given shape with rms radius rms_fm.
//! The shell radius is set equal to the rms radius.
NuclearModel make_model(double Z, double rms_fm, Shape shape);

//! Normalized density (integral over d^3r equals 1), r in Compton units.
//! Point and Shell have delta-like densities: the result is 0 off the
//! support and +inf on it.
double rho(const NuclearModel &m, double r);

//! Electrostatic potential energy of the electron, V(r) -> -alpha Z / r.
//! For a point nucleus r must be positive.
double potential(const NuclearModel &m, double r);

//! <r^2> in Compton units squared.
double second_moment(const NuclearModel &m);

//! Integral of rho over d^3r, evaluated by quadrature.
double normalization(const NuclearModel &m);

//! Radius (Compton units) beyond which the potential is exactly -alpha Z/r
//! to double precision.
double outer_radius(const NuclearModel &m);

//! Tabulated rms charge radii in fm; throws DomainError for other Z.
double default_rms_fm(int Z);
const std::vector<int> &tabulated_charges();

} // namespace vpscreen::nucleus
