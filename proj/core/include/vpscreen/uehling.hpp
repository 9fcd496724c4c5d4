#pragma once
#include "vpscreen/nucleus.hpp"

#include <functional>
#include <ostream>
#include <vector>

// Uehling vacuum-polarization potentials. Lengths in Compton wavelengths,
// energies in m_e c^2.

namespace vpscreen::uehling {

//! E_n(s) = int_1^inf dt (1 + 1/2t^2) sqrt(t^2-1)/t^2 t^-n exp(-2 s t),
//! n = -1..3, s > 0. Interpolated from a cached table; exact quadrature
//! outside the table range.
double moment(int n, double s);

//! Same by direct quadrature (t = cosh u), used to build and check tables.
double moment_direct(int n, double s);

//! chi(s) = (2 alpha / 3 pi) E_0(s): the Uehling screening factor of a
//! Coulomb interaction at separation s.
double twobody_kernel(double s);

//! Point-nucleus Uehling potential, -(alpha Z / r) chi(r).
double uehling_point(double r, double Z);

//! Uehling potential of an extended charge distribution. For a point model
//! this is uehling_point.
double uehling_extended(const nucleus::NuclearModel &m, double r);

//! V(r) chi(r): nuclear potential screened with the point kernel.
double uehling_approx(const nucleus::NuclearModel &m, double r);

//! Radial function tabulated on a log grid with a natural cubic spline in
//! ln r, of ln|r U| + 2r when U has one sign and of r U otherwise. Below the grid U is held at its first value; above it the
//! supplied tail function (or r U = const) is used.
class PotentialTable {
public:
  PotentialTable() = default;
  PotentialTable(const std::function<double(double)> &u, double r_min, double r_max,
                 int n_points, std::function<double(double)> tail = {});

  double operator()(double r) const;
  const std::vector<double> &radii() const { return m_r; }
  const std::vector<double> &values() const { return m_u; }
  bool empty() const { return m_r.empty(); }

  //! Two columns: radius (Compton units) and value (m_e c^2).
  void dump(std::ostream &os) const;

private:
  std::vector<double> m_r, m_u, m_x, m_y, m_y2;
  bool m_log{false};
  double m_sign{1.0};
  std::function<double(double)> m_tail;
};

//! Table of uehling_extended on a log grid from 1e-5 to 20.
PotentialTable extended_table(const nucleus::NuclearModel &m, int n_points = 1200);

} // namespace vpscreen::uehling
