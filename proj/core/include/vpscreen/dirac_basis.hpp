#pragma once
#include "vpscreen/bspline.hpp"
#include "vpscreen/nucleus.hpp"
#include "vpscreen/quadrature.hpp"

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <utility>
#include <vector>

// Finite-basis pseudo-spectrum of the radial Dirac equation,
//   (V+1) P + (-d/dr + kappa/r) Q = e P
//   (d/dr + kappa/r) P + (V-1) Q  = e Q,
// with P = r g and Q = r f, in a dual-kinetic-balance B-spline basis.

namespace vpscreen {

struct BasisParams {
  int n_splines{60};
  int order{8};
  double r_first{1e-6}; // first non-zero break, Compton units
  double r_max{0.0};    // 0: chosen from Z as 40 / (alpha Z)
  int extra_nodes{4};   // Gauss points per interval beyond the order
};

//! Resolved basis layout for a kappa: splines, kinetic-balance pairing and
//! the quadrature used for all matrix elements.
class DkbBasis {
public:
  DkbBasis(int kappa, const BasisParams &p, double Z);

  int kappa() const { return m_kappa; }
  int size() const { return 2 * m_n; } // number of basis vectors
  const BSplineSet &splines() const { return m_set; }
  double r_max() const { return m_set.breaks().back(); }

  //! P and Q of the expansion with coefficients c at radius r.
  std::pair<double, double> evaluate(const Eigen::VectorXd &c, double r) const;

  //! Quadrature nodes and weights, and P/Q of each basis vector there.
  const std::vector<double> &nodes() const { return m_nodes; }
  const std::vector<double> &weights() const { return m_weights; }
  const Eigen::MatrixXd &basis_P() const { return m_P; } // nodes x size
  const Eigen::MatrixXd &basis_Q() const { return m_Q; }
  //! The same nodes as a composite grid over the spline breaks.
  quad::RadialGrid grid() const;

  //! Overlap matrix and Hamiltonian for a potential given at the nodes.
  Eigen::MatrixXd overlap() const;
  Eigen::MatrixXd hamiltonian(const std::vector<double> &v_at_nodes) const;

private:
  int m_kappa;
  int m_n; // splines kept
  BSplineSet m_set;
  std::vector<double> m_nodes, m_weights;
  Eigen::MatrixXd m_P, m_Q, m_dP, m_dQ;
};

//! A radial state as coefficients in a DkbBasis.
struct Orbital {
  std::shared_ptr<const DkbBasis> basis;
  Eigen::VectorXd coef;
  int kappa{-1};
  double energy{0.0};

  std::pair<double, double> operator()(double r) const {
    return basis->evaluate(coef, r);
  }
  //! P and Q at the basis quadrature nodes.
  Eigen::VectorXd P_at_nodes() const { return basis->basis_P() * coef; }
  Eigen::VectorXd Q_at_nodes() const { return basis->basis_Q() * coef; }
  //! Number of sign changes of P between the origin and r_max.
  int nodes_of_P() const;
};

class DiracSpectrum {
public:
  DiracSpectrum(int kappa, const nucleus::NuclearModel &model,
                const BasisParams &params);

  int kappa() const { return m_basis->kappa(); }
  const nucleus::NuclearModel &model() const { return m_model; }
  const BasisParams &params() const { return m_params; }
  const std::shared_ptr<const DkbBasis> &basis() const { return m_basis; }

  //! Sorted eigenvalues, m_e c^2 units; negative-continuum pseudo-states first.
  const Eigen::VectorXd &energies() const { return m_energies; }
  int size() const { return static_cast<int>(m_energies.size()); }
  Orbital state(int n) const;

  //! Index of the lowest state above -1 (the ground state for this kappa).
  int lowest_bound() const;

  //! Projections <n|s> of a two-component function given at the basis
  //! quadrature nodes.
  Eigen::VectorXd project(const std::vector<double> &sP,
                          const std::vector<double> &sQ) const;

  //! sum_{n not in exclude} |n><n|s> / (e_ref - e_n), including the
  //! negative-energy pseudo-states.
  Orbital reduced_green_apply(double e_ref, const std::vector<int> &exclude,
                              const std::vector<double> &sP,
                              const std::vector<double> &sQ) const;

  //! Build from stored eigen-solution; used by the spectrum cache.
  DiracSpectrum(const nucleus::NuclearModel &model, const BasisParams &params,
                std::shared_ptr<const DkbBasis> basis, Eigen::VectorXd energies,
                Eigen::MatrixXd vectors);
  const Eigen::MatrixXd &vectors() const { return m_vectors; }

private:
  nucleus::NuclearModel m_model;
  BasisParams m_params;
  std::shared_ptr<const DkbBasis> m_basis;
  Eigen::VectorXd m_energies;
  Eigen::MatrixXd m_vectors; // columns are S-orthonormal eigenvectors
};

//! Ground state (lowest state above -1) of a kappa = -1 spectrum with no
//! radial nodes. Throws DomainError if none qualifies.
Orbital bound_1s(const DiracSpectrum &s);

//! Resolve r_max = 0 to the default for charge Z.
BasisParams resolved(const BasisParams &p, double Z);

//! Sommerfeld energy (m_e c^2 units) of a point-Coulomb level.
double sommerfeld_energy(int n, int kappa, double Z);

//! Spectrum cache: text files keyed by model, kappa and basis parameters.
//! Results are bit-identical with and without the cache (values stored as
//! hexadecimal floats).
std::string spectrum_cache_key(int kappa, const nucleus::NuclearModel &model,
                               const BasisParams &params);
std::shared_ptr<const DiracSpectrum>
cached_spectrum(const std::string &cache_dir, int kappa,
                const nucleus::NuclearModel &model, const BasisParams &params);

} // namespace vpscreen
