#include "vpscreen/constants.hpp"
#include "vpscreen/errors.hpp"
#include "vpscreen/greens.hpp"
#include "vpscreen/loop.hpp"

#include <cmath>
#include <gtest/gtest.h>

using namespace vpscreen;
using loop::cplx;

namespace {

cplx pick(const greens::GreenComponents &g, int i, int k) {
  if (i == 1)
    return k == 1 ? g.g11 : g.g12;
  return k == 1 ? g.g21 : g.g22;
}

quad::RadialGrid small_grid() { return loop::make_loop_grid({1e-4, 20.0, 4, 6}); }

} // namespace

class Separable : public ::testing::TestWithParam<int> {};

TEST_P(Separable, CoulombSolutionsRebuildGreenFunction) {
  const int kappa = GetParam();
  const auto g = small_grid();
  for (double eps : {0.3, 4.0})
    for (double Z : {40.0, -92.0}) {
      const auto s = loop::coulomb_solutions(eps, kappa, Z, g);
      for (std::size_t p : {std::size_t{5}, g.size() / 2})
        for (std::size_t q : {p, p + 7, g.size() - 20}) {
          const auto ref = greens::coulomb_green(cplx(0.0, eps), kappa, g.nodes[p], g.nodes[q], Z);
          for (int i = 1; i <= 2; ++i)
            for (int k = 1; k <= 2; ++k) {
              const cplx r = pick(ref, i, k);
              EXPECT_LT(std::abs(s.component(i, k, g, p, q) - r), 1e-9 * std::abs(r) + 1e-300)
                  << "kappa=" << kappa << " eps=" << eps << " Z=" << Z << " " << i << k;
            }
        }
    }
}

TEST_P(Separable, FreeSolutionsRebuildFreePropagator) {
  const int kappa = GetParam();
  const auto g = small_grid();
  const auto s = loop::free_solutions(1.7, kappa, g);
  for (std::size_t p : {std::size_t{3}, g.size() / 3})
    for (std::size_t q : {p + 1, g.size() / 2}) {
      const auto ref = greens::free_green(cplx(0.0, 1.7), kappa, g.nodes[p], g.nodes[q]);
      for (int i = 1; i <= 2; ++i)
        for (int k = 1; k <= 2; ++k) {
          const cplx r = pick(ref, i, k);
          EXPECT_LT(std::abs(s.component(i, k, g, p, q) - r), 1e-10 * std::abs(r)) << i << k;
        }
    }
}

TEST_P(Separable, ExtendedSolutionsWithCoulombFieldReproduceCoulomb) {
  const int kappa = GetParam();
  const auto g = small_grid();
  const double Z = 82.0;
  const std::function<double(double)> v = [Z](double r) { return -kAlpha * Z / r; };
  for (double eps : {0.2, 6.0}) {
    const auto ref = loop::coulomb_solutions(eps, kappa, Z, g);
    const auto ext = loop::extended_solutions(eps, kappa, Z, v, 0.05, {}, g);
    for (std::size_t p : {std::size_t{2}, g.size() / 4, g.size() / 2})
      for (std::size_t q : {p, g.size() - 30})
        for (int i = 1; i <= 2; ++i)
          for (int k = 1; k <= 2; ++k) {
            // the series start assumes a finite potential at the origin; in a
            // 1/r field it admits a trace of the irregular solution
            const cplx r = ref.component(i, k, g, p, q);
            EXPECT_LT(std::abs(ext.component(i, k, g, p, q) - r), 1e-5 * std::abs(r))
                << "eps=" << eps << " p=" << p << " q=" << q;
          }
  }
}

INSTANTIATE_TEST_SUITE_P(Kappas, Separable, ::testing::Values(-1, 1, -2, 3));

TEST(ExtendedSolutions, SmallShellApproachesPointNucleus) {
  const auto g = small_grid();
  const double Z = 92.0, R = 2e-4;
  const std::function<double(double)> v = [&](double r) { return -kAlpha * Z / std::max(r, R); };
  const auto ref = loop::coulomb_solutions(1.0, -1, Z, g);
  const auto ext = loop::extended_solutions(1.0, -1, Z, v, R, {R}, g);
  const std::size_t p = g.size() / 2, q = p + 10;
  for (int i = 1; i <= 2; ++i) {
    const cplx r = ref.component(i, i, g, p, q);
    // the shift is of order (alpha Z)^2 (R / x)^(2 lambda) relative
    EXPECT_LT(std::abs(ext.component(i, i, g, p, q) - r), 1e-3 * std::abs(r));
  }
  EXPECT_THROW(loop::extended_solutions(1.0, -1, Z, v, 100.0, {}, g), DomainError);
}

TEST(ExpConvolution, ConstantIntegrand) {
  const auto g = small_grid();
  const double x0 = g.breaks.front();
  for (double mu : {0.5, 40.0, 3000.0}) {
    const loop::ExpConvolution conv(g, mu);
    const std::vector<cplx> one(g.size(), 1.0);
    const auto fw = conv.forward(one), bw = conv.backward(one);
    const double end = g.breaks.back();
    for (std::size_t j = 0; j < g.size(); j += 13) {
      const double x = g.nodes[j];
      EXPECT_NEAR(fw[j].real(), -std::expm1(-mu * (x - x0)) / mu, 1e-12 / mu) << mu << ' ' << x;
      EXPECT_NEAR(bw[j].real(), -std::expm1(-mu * (end - x)) / mu, 1e-12 / mu) << mu << ' ' << x;
    }
  }
}

// sum over intermediate kappa of |<p|sigma.(n x z)|q>|^2 summed over m is
// the trace of sin^2(theta) over the multiplet: 2 (2j + 1) / 3
TEST(MagneticCoefficient, ClosureSumRule) {
  for (int p : {-1, 1, -2, 2, -3, 4}) {
    const int ap = std::abs(p);
    const int two_j = 2 * ap - 1;
    double sum = 0.0;
    for (int aq = std::max(1, ap - 1); aq <= ap + 1; ++aq)
      for (int q : {-aq, aq})
        sum += loop::magnetic_coefficient(p, q, q, p);
    EXPECT_NEAR(sum, 2.0 * (two_j + 1) / 3.0, 1e-12) << p;
  }
}

TEST(MagneticCoefficient, ParitySelection) {
  // n x z is odd: same-parity partners do not couple
  EXPECT_NEAR(loop::magnetic_coefficient(-1, -1, -1, -1), 0.0, 1e-14);
  EXPECT_NEAR(loop::magnetic_coefficient(-2, -2, -2, -2), 0.0, 1e-14);
  EXPECT_GT(loop::magnetic_coefficient(-1, 1, 1, -1), 0.0);
  EXPECT_THROW(loop::magnetic_coefficient(-1, 2, 1, -1), DomainError);
}
