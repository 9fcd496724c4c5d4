#pragma once
#include "vpscreen/dirac_basis.hpp"
#include "vpscreen/quadrature.hpp"

#include <vector>

// Radial two-electron matrix elements for s1/2 orbitals at zero photon
// frequency: interaction alpha (1 - alpha_1 . alpha_2) / r12, optionally
// screened by the Uehling factor chi(r12).

namespace vpscreen::twobody {

enum class Kernel { Coulomb, Uehling };

//! L-th Legendre coefficient of the kernel in the angle between r1 and r2:
//! r<^L / r>^(L+1) for Coulomb, and the same for chi(r12)/r12 (L = 0, 1).
double multipole_kernel(int L, Kernel k, double r1, double r2);

//! R^L[f, g] = int int f(r1) g(r2) K_L(r1, r2) dr1 dr2 with f and g sampled
//! at the grid nodes. The kernel singularity at r1 = r2 is integrated
//! adaptively on the intervals around it.
double radial_integral(int L, Kernel k, const quad::RadialGrid &grid,
                       const std::vector<double> &f, const std::vector<double> &g);

//! Potential-like inner integral: Y(r_q) = int f(r) K_L(r_q, r) dr at every node.
std::vector<double> multipole_potential(int L, Kernel k, const quad::RadialGrid &grid,
                                        const std::vector<double> &f);

//! Permutation-summed element <c d | I | a b> for s1/2 orbitals, spins
//! (up, down) in both bra and ket, m_e c^2 units:
//!   alpha [R0(rho_ca, rho_db) + R1(u_ca, u_db)/3 + 2 R1(v_ca, v_db)/9
//!          + 4 R1(v_da, v_cb)/9]
//! with rho = PP' + QQ', u = P_c Q_a - Q_c P_a, v = P_c Q_a + Q_c P_a.
//! All orbitals must share a basis.
double i0_matrix_element(const Orbital &c, const Orbital &d, const Orbital &a,
                         const Orbital &b, Kernel k = Kernel::Coulomb);

//! Interaction energy of the (1s)^2 pair, alpha [F0 + (2/3) R1(2PQ, 2PQ)].
double pair_energy(const Orbital &a, Kernel k = Kernel::Coulomb);

//! Sum of the four first-order substitutions a -> delta_a in the pair
//! element: 4 alpha [R0(P dP + Q dQ, rho) + (2/3) R1(P dQ + Q dP, 2PQ)].
double first_order_pair(const Orbital &a, const Orbital &delta_a,
                        Kernel k = Kernel::Coulomb);

//! Two-body Uehling screening of the (1s)^2 pair, in eV.
double uehling_b_matrix_element(const Orbital &a);

} // namespace vpscreen::twobody
