#include "vpscreen/constants.hpp"
#include "vpscreen/dirac_basis.hpp"
#include "vpscreen/twobody.hpp"
#include "vpscreen/uehling.hpp"

#include <cmath>
#include <gtest/gtest.h>

using namespace vpscreen;

namespace {

Orbital ground(double Z) { return bound_1s(DiracSpectrum(-1, nucleus::point_nucleus(Z), BasisParams{})); }

std::vector<double> density(const Orbital &a, const Orbital &b) {
  const Eigen::VectorXd Pa = a.P_at_nodes(), Qa = a.Q_at_nodes();
  const Eigen::VectorXd Pb = b.P_at_nodes(), Qb = b.Q_at_nodes();
  std::vector<double> r(Pa.size());
  for (Eigen::Index i = 0; i < Pa.size(); ++i)
    r[i] = Pa[i] * Pb[i] + Qa[i] * Qb[i];
  return r;
}

double coulomb_part(const Orbital &a) {
  const auto rho = density(a, a);
  return kAlpha * twobody::radial_integral(0, twobody::Kernel::Coulomb, a.basis->grid(), rho, rho);
}

} // namespace

TEST(Multipoles, KernelValues) {
  EXPECT_DOUBLE_EQ(twobody::multipole_kernel(0, twobody::Kernel::Coulomb, 0.5, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(twobody::multipole_kernel(1, twobody::Kernel::Coulomb, 2.0, 0.5), 0.5 / 4.0);
  // screened kernel is weaker than the bare one, and monotone in L
  const double bare = twobody::multipole_kernel(0, twobody::Kernel::Coulomb, 0.3, 0.4);
  const double scr = twobody::multipole_kernel(0, twobody::Kernel::Uehling, 0.3, 0.4);
  EXPECT_GT(scr, 0.0);
  EXPECT_LT(scr, 0.01 * bare);
}

TEST(RadialIntegral, SymmetricAndMatchesPotential) {
  const Orbital a = ground(30);
  const auto g = a.basis->grid();
  const auto rho = density(a, a);
  std::vector<double> f(rho.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = rho[i] * std::exp(-g.nodes[i]);
  for (int L : {0, 1})
    for (auto k : {twobody::Kernel::Coulomb, twobody::Kernel::Uehling}) {
      const double fg = twobody::radial_integral(L, k, g, f, rho);
      const double gf = twobody::radial_integral(L, k, g, rho, f);
      EXPECT_NEAR(fg, gf, 1e-9 * std::abs(fg)) << L;
    }
  // Y0 of a normalized density tends to 1/r outside it
  const auto y = twobody::multipole_potential(0, twobody::Kernel::Coulomb, g, rho);
  const std::size_t far = g.size() - 10;
  EXPECT_NEAR(y[far] * g.nodes[far], 1.0, 1e-8);
}

// F0 of the 1s density: (5/8) Z alpha^2 m c^2 in the nonrelativistic limit,
// with relative corrections of order (alpha Z)^2
TEST(PairEnergy, NonrelativisticLimit) {
  std::vector<double> dev, az2;
  for (double Z : {1.0, 5.0, 10.0}) {
    const double nr = 5.0 / 8.0 * Z * kAlpha * kAlpha;
    dev.push_back(coulomb_part(ground(Z)) / nr - 1.0);
    az2.push_back(std::pow(kAlpha * Z, 2));
  }
  double c = 0.0;
  for (std::size_t i = 0; i < dev.size(); ++i)
    c = std::max(c, std::abs(dev[i]) / az2[i]);
  EXPECT_GT(c, 0.1);
  EXPECT_LT(c, 10.0);
  for (std::size_t i = 0; i < dev.size(); ++i)
    EXPECT_LE(std::abs(dev[i]), c * az2[i]);
  // quadratic growth between Z = 5 and 10
  EXPECT_NEAR(dev[2] / dev[1], 4.0, 0.4);
}

TEST(PairEnergy, AgreesWithGeneralElement) {
  const Orbital a = ground(54);
  for (auto k : {twobody::Kernel::Coulomb, twobody::Kernel::Uehling}) {
    const double pair = twobody::pair_energy(a, k);
    const double full = twobody::i0_matrix_element(a, a, a, a, k);
    EXPECT_NEAR(full, pair, 1e-10 * std::abs(pair));
  }
  // the magnetic part is a correction of relative order (alpha Z)^2
  const double coulomb = coulomb_part(a);
  EXPECT_LT(std::abs(twobody::pair_energy(a) - coulomb), std::pow(kAlpha * 54, 2) * coulomb);
}

TEST(FirstOrderPair, MatchesDerivativeOfPairEnergy) {
  // pair_energy(a + t d) = pair_energy(a) + t first_order_pair(a, d) + O(t^2)
  const DiracSpectrum s(-1, nucleus::point_nucleus(40), BasisParams{});
  const Orbital a = bound_1s(s);
  const Orbital b = s.state(s.lowest_bound() + 1);
  auto mixed = [&](double t) {
    Orbital m = a;
    m.coef = a.coef + t * b.coef;
    return twobody::pair_energy(m);
  };
  const double h = 1e-4;
  const double fd = (mixed(h) - mixed(-h)) / (2.0 * h);
  EXPECT_NEAR(twobody::first_order_pair(a, b), fd, 1e-7 * std::abs(fd));
}

TEST(UehlingB, SmallPositiveShiftInEv) {
  const double v = twobody::uehling_b_matrix_element(ground(92));
  // reduction of the interelectronic repulsion: of order (2 alpha / 3 pi)
  // times a logarithm times the ~1.5 keV pair energy
  EXPECT_GT(v, 0.1);
  EXPECT_LT(v, 1.0);
}
