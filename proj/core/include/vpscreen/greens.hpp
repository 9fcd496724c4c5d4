#pragma once
#include <complex>

// Radial components of the point-Coulomb Dirac Green function and of the
// free propagator.
//
// Components G^{ik}_kappa(omega, x1, x2), i,k in {1,2} (large/small), in the
// same phase convention as the B-spline solver, (P, Q) = r (g, f):
//   G(x1 < x2) = phi_0(x1) phi_inf(x2)^T / W.
// Symmetry: G^{ik}(x1, x2) = G^{ki}(x2, x1).
// Units: hbar = c = m_e = 1; x in Compton wavelengths.

namespace vpscreen::greens {

using cplx = std::complex<double>;

struct GreenComponents {
  cplx g11, g12, g21, g22;
};

//! A, B, C, D products of Whittaker functions for x1 <= x2, together with
//! the auxiliary quantities they were built from.
struct GreenBlocks {
  cplx A, B, C, D;
  cplx d;        // sqrt(1 - omega^2), Re d > 0
  double lambda; // sqrt(kappa^2 - (alpha Z)^2)
  cplx nu;       // alpha Z omega / d
};

struct GreenSplit {
  GreenComponents odd, even;
};

struct TraceSums {
  double s0, s1, s2;
};

//! Whittaker blocks for |kappa|; requires x1 <= x2 and real d.
GreenBlocks green_blocks(cplx omega, int kappa, double x1, double x2, double Z);

//! Components from blocks for a given kappa. az = alpha Z / d.
GreenComponents components_from_blocks(const GreenBlocks &b, cplx omega, int kappa,
                                       cplx az);

//! Point-Coulomb Green function. omega must be on the imaginary axis or real
//! with |omega| < 1. Throws PoleError within 1e-6 of a bound level and
//! RangeError if a Whittaker product cannot be represented.
GreenComponents coulomb_green(cplx omega, int kappa, double x1, double x2, double Z);

//! Free propagator radial components from modified spherical Bessel
//! functions.
GreenComponents free_green(cplx omega, int kappa, double x1, double x2);

//! Parts odd and even in Z, for omega = i eps.
GreenSplit green_split(cplx omega, int kappa, double x1, double x2, double Z);

//! Green function at -Z from the blocks at +Z (omega = i eps): conjugated
//! blocks and az -> -az.
GreenComponents reflected_green(cplx omega, int kappa, double x1, double x2, double Z);

//! Sums over the two signs of kappa of products of components:
//! s0 = Re sum (G^{ik})^2, s1 = Re sum 2(G11 G22 + G12 G21),
//! s2 = 2 Re sum (G11 G'22 + G22 G'11 + G12 G'21 + G21 G'12),
//! primed at kappa' = -sign(kappa)(|kappa| + 1), all even in Z.
//! Evaluated in closed form from the blocks at |kappa| and |kappa| + 1.
TraceSums trace_sums(double eps, int abs_kappa, double x, double y, double Z);

//! Same sums from the components directly (not symmetrized in Z).
TraceSums trace_sums_direct(double eps, int abs_kappa, double x, double y, double Z);

//! Free 4x4 propagator at separation x, written as
//! vec (i alpha . x_vec) + beta_part beta + id_part.
struct FreeKernel {
  cplx vec, beta_part, id_part;
};
FreeKernel free_propagator_3d(cplx omega, double x);

//! Its derivative with respect to omega, in closed form. Throws DomainError
//! at omega = 0.
FreeKernel free_green_domega(cplx omega, double x);

} // namespace vpscreen::greens
