#pragma once
#include "vpscreen/quadrature.hpp"

#include <complex>
#include <functional>
#include <vector>

// Building blocks for vacuum-loop radial integrals on the imaginary
// frequency axis, omega = i eps. Every partial-wave Green function used here
// is separable,
//   G^{ik}(x, y) = c a_i(x) b_k(y) exp(-d (y - x)),   x <= y,
// with a and b stored exponentially scaled at the nodes of a radial grid.

namespace vpscreen::loop {

using cplx = std::complex<double>;

struct LoopGridParams {
  double r_lo{1e-5}; // first break, Compton units; the origin is excluded
  double r_hi{50.0};
  int per_decade{8};
  int per_interval{8};
};

quad::RadialGrid make_loop_grid(const LoopGridParams &p);

struct RadialSolutions {
  int kappa{0};
  double d{1.0}; // sqrt(1 + eps^2)
  cplx c;
  std::vector<cplx> a1, a2, b1, b2;

  const std::vector<cplx> &a(int i) const { return i == 1 ? a1 : a2; }
  const std::vector<cplx> &b(int i) const { return i == 1 ? b1 : b2; }
  //! Component G^{ik} between nodes p and q of the grid it was built on.
  cplx component(int i, int k, const quad::RadialGrid &g, std::size_t p,
                 std::size_t q) const;
};

//! Point-Coulomb solutions; Z may be negative (reflected charge).
RadialSolutions coulomb_solutions(double eps, int kappa, double Z,
                                  const quad::RadialGrid &grid);

//! Solutions for an extended nucleus of charge Z whose potential energy v(r)
//! equals -alpha Z / r from r_match on. Inside, the radial equation is
//! integrated numerically and joined to the point-Coulomb solutions at the
//! first grid node at or beyond r_match. kinks lists radii where v is not
//! smooth. The normalization c is that of the Coulomb solutions.
RadialSolutions extended_solutions(double eps, int kappa, double Z,
                                   const std::function<double(double)> &v, double r_match,
                                   const std::vector<double> &kinks,
                                   const quad::RadialGrid &grid);

//! Free solutions from modified spherical Bessel functions.
RadialSolutions free_solutions(double eps, int kappa, const quad::RadialGrid &grid);

//! Running integrals with an exponential weight on a grid,
//!   forward(h)_j  = int_0^{x_j} h(y) exp(-mu (x_j - y)) dy,
//!   backward(h)_j = int_{x_j}^{end} h(y) exp(-mu (y - x_j)) dy,
//! with h represented by its interpolating polynomial on each interval and
//! the exponential integrated exactly, so mu times the interval width may
//! be arbitrarily large.
class ExpConvolution {
public:
  ExpConvolution(const quad::RadialGrid &grid, double mu);
  std::vector<cplx> forward(const std::vector<cplx> &h) const;
  std::vector<cplx> backward(const std::vector<cplx> &h) const;
  const quad::RadialGrid &grid() const { return m_grid; }

private:
  quad::RadialGrid m_grid;
  double m_mu;
  int m_n;
  // per interval n + 1 segments; weights n per segment
  std::vector<double> m_fw, m_bw, m_decay;
};

//! D(y) = int g(z) X^{ik}(y, z) Y^{jl}(y, z) dz at every node y, for two
//! separable functions with equal d. conv must use mu = 2 d.
std::vector<cplx> pair_apply(const ExpConvolution &conv, const RadialSolutions &X,
                             int i, int k, const RadialSolutions &Y, int j, int l,
                             const std::vector<cplx> &g);

//! The same summed over (i, k) with j = i, l = k.
std::vector<cplx> pair_apply_traced(const ExpConvolution &conv, const RadialSolutions &X,
                                    const RadialSolutions &Y, const std::vector<cplx> &g);

//! Angular factor of the magnetic loop: with spinor harmonics Omega_{kappa m}
//! and O(p, m'; q, m) = int dOmega Omega^dag_{p m'} sigma.(n x z) Omega_{q m},
//! returns sum_{m, m'} O(p, m'; q, m) O(r, m; t, m').
double magnetic_coefficient(int p, int q, int r, int t);

} // namespace vpscreen::loop
