#include "vpscreen/errors.hpp"
#include "vpscreen/greens.hpp"

#include <cmath>
#include <gtest/gtest.h>
#include <random>

using namespace vpscreen;
using greens::cplx;
using greens::GreenComponents;

namespace {

double norm(const GreenComponents &g) {
  return std::max({std::abs(g.g11), std::abs(g.g12), std::abs(g.g21), std::abs(g.g22)});
}

double distance(const GreenComponents &a, const GreenComponents &b) {
  const GreenComponents d{a.g11 - b.g11, a.g12 - b.g12, a.g21 - b.g21, a.g22 - b.g22};
  return norm(d) / norm(b);
}

struct GreenRef {
  cplx omega;
  int kappa;
  double x1, x2, Z;
  GreenComponents g;
};

// mpmath, 30 digits (tests/oracles/oracle.py)
const GreenRef kCoulomb[] = {
    {{0.0, 0.5}, -1, 0.3, 0.9, 92,
     {{-0.8062131179107812, -0.7496213210313283}, {1.3620872941110555, 0.46578513421029869},
      {0.17218398301513637, 0.26040725490578507}, {-0.34433292405315697, -0.219270621512429}}},
    {{0.0, 2.0}, 2, 0.05, 0.4, 60,
     {{-0.087364129262875097, -0.031203752683999982}, {0.0098352857447112732, -0.019337476348468275},
      {-0.74587484974900653, -0.1307487642062587}, {0.052502512447235547, -0.16912732202063295}}},
    {{0.3, 0.0}, -3, 1.0, 1.5, 20,
     {{-0.066375479217745387, 0.0}, {0.17607156557691698, 0.0}, {-0.0049669899557797936, 0.0},
      {0.013175734593945672, 0.0}}},
};

const GreenRef kFree[] = {
    {{0.0, 0.5}, -1, 0.3, 0.9, 0,
     {{-0.413875577120271, -0.2069377885601355}, {0.92258871468979798, 0.0},
      {-0.051350549775458181, 0.0}, {0.091574261125705028, -0.045787130562852514}}},
    {{0.0, 1.5}, 2, 0.2, 0.25, 0,
     {{-0.49997869965817086, -0.7499680494872563}, {0.12937267820835847, 0.0},
      {-12.545798606368216, 0.0}, {0.99886320823619646, -1.4982948123542947}}},
};

// random sweep over the parameter ranges used by the loop integrals
struct Sweep {
  std::mt19937_64 rng{2024};
  std::uniform_real_distribution<double> leps{std::log(0.05), std::log(30.0)};
  std::uniform_real_distribution<double> lx{std::log(1e-3), std::log(3.0)};
  std::uniform_int_distribution<int> ak{1, 6};
  std::uniform_int_distribution<int> sg{0, 1};
  std::uniform_real_distribution<double> zd{10.0, 100.0};

  double eps() { return std::exp(leps(rng)); }
  double x() { return std::exp(lx(rng)); }
  int kappa() { return sg(rng) ? ak(rng) : -ak(rng); }
  double Z() { return zd(rng); }
};

} // namespace

TEST(CoulombGreen, MatchesReference) {
  for (const auto &r : kCoulomb)
    EXPECT_LT(distance(greens::coulomb_green(r.omega, r.kappa, r.x1, r.x2, r.Z), r.g), 1e-10)
        << r.kappa << ' ' << r.omega;
}

TEST(FreeGreen, MatchesReference) {
  for (const auto &r : kFree)
    EXPECT_LT(distance(greens::free_green(r.omega, r.kappa, r.x1, r.x2), r.g), 1e-10) << r.kappa;
}

TEST(CoulombGreen, SymmetryUnderExchange) {
  Sweep s;
  for (int i = 0; i < 60; ++i) {
    const cplx w(0.0, s.eps());
    const int k = s.kappa();
    const double x = s.x(), y = s.x(), Z = s.Z();
    const GreenComponents a = greens::coulomb_green(w, k, x, y, Z);
    const GreenComponents b = greens::coulomb_green(w, k, y, x, Z);
    EXPECT_LT(distance({b.g11, b.g21, b.g12, b.g22}, a), 1e-8);
    // real radial equation: G(-i eps) = conj G(i eps)
    const GreenComponents c = greens::coulomb_green(std::conj(w), k, x, y, Z);
    EXPECT_LT(distance({std::conj(c.g11), std::conj(c.g12), std::conj(c.g21), std::conj(c.g22)}, a),
              1e-8);
  }
}

TEST(CoulombGreen, OddPlusEvenReconstruction) {
  Sweep s;
  for (int i = 0; i < 60; ++i) {
    const cplx w(0.0, s.eps());
    const int k = s.kappa();
    const double x = s.x(), y = s.x(), Z = s.Z();
    const auto split = greens::green_split(w, k, x, y, Z);
    const auto &o = split.odd, &e = split.even;
    const GreenComponents plus{e.g11 + o.g11, e.g12 + o.g12, e.g21 + o.g21, e.g22 + o.g22};
    const GreenComponents minus{e.g11 - o.g11, e.g12 - o.g12, e.g21 - o.g21, e.g22 - o.g22};
    EXPECT_LT(distance(plus, greens::coulomb_green(w, k, x, y, Z)), 1e-8);
    EXPECT_LT(distance(minus, greens::coulomb_green(w, k, x, y, -Z)), 1e-8) << k << ' ' << w;
    EXPECT_LT(distance(greens::reflected_green(w, k, x, y, Z), greens::coulomb_green(w, k, x, y, -Z)),
              1e-8);
  }
}

TEST(CoulombGreen, FreeLimit) {
  Sweep s;
  for (int i = 0; i < 60; ++i) {
    const cplx w(0.0, s.eps());
    const int k = s.kappa();
    const double x = s.x(), y = s.x();
    EXPECT_LT(distance(greens::coulomb_green(w, k, x, y, 1e-10), greens::free_green(w, k, x, y)), 1e-8)
        << k << ' ' << w << ' ' << x << ' ' << y;
  }
}

TEST(TraceSums, SymmetrizedClosedFormMatchesDirect) {
  Sweep s;
  for (int i = 0; i < 60; ++i) {
    const double eps = s.eps();
    const int ak = std::abs(s.kappa());
    double x = s.x(), y = s.x();
    if (x > y)
      std::swap(x, y);
    const double Z = s.Z();
    const auto t = greens::trace_sums(eps, ak, x, y, Z);
    const auto p = greens::trace_sums_direct(eps, ak, x, y, Z);
    const auto m = greens::trace_sums_direct(eps, ak, x, y, -Z);
    const double scale = std::max({std::abs(p.s0), std::abs(p.s1), std::abs(p.s2)});
    EXPECT_NEAR(t.s0, 0.5 * (p.s0 + m.s0), 1e-8 * scale);
    EXPECT_NEAR(t.s1, 0.5 * (p.s1 + m.s1), 1e-8 * scale);
    EXPECT_NEAR(t.s2, 0.5 * (p.s2 + m.s2), 1e-8 * scale);
  }
}

TEST(FreePropagator, FrequencyDerivativeMatchesDifferences) {
  Sweep s;
  std::uniform_real_distribution<double> lx(std::log(0.02), std::log(3.0));
  for (int i = 0; i < 60; ++i) {
    const cplx w(0.0, s.eps());
    const double x = std::exp(lx(s.rng));
    // fourth-order central differences along the imaginary axis, one
    // Richardson step; the kernel varies on the scale min(|w|, 1/x)
    auto at = [&](double t) { return greens::free_propagator_3d(w + cplx(0.0, t), x); };
    auto fd = [&](double h) {
      const auto f1 = at(h), f2 = at(2 * h), m1 = at(-h), m2 = at(-2 * h);
      auto one = [&](cplx a1, cplx a2, cplx b1, cplx b2) {
        return (8.0 * (a1 - b1) - (a2 - b2)) / (12.0 * cplx(0.0, h));
      };
      return greens::FreeKernel{one(f1.vec, f2.vec, m1.vec, m2.vec),
                                one(f1.beta_part, f2.beta_part, m1.beta_part, m2.beta_part),
                                one(f1.id_part, f2.id_part, m1.id_part, m2.id_part)};
    };
    const double h = 0.02 * std::min(std::abs(w), 1.0 / x);
    const auto c = fd(h), f = fd(0.5 * h);
    auto rich = [](cplx coarse, cplx fine) { return (16.0 * fine - coarse) / 15.0; };
    const cplx dv = rich(c.vec, f.vec), db = rich(c.beta_part, f.beta_part),
               di = rich(c.id_part, f.id_part);
    const auto d = greens::free_green_domega(w, x);
    const double scale = std::max({std::abs(dv), std::abs(db), std::abs(di)});
    EXPECT_LT(std::abs(d.vec - dv), 1e-8 * scale) << w << ' ' << x;
    EXPECT_LT(std::abs(d.beta_part - db), 1e-8 * scale) << w << ' ' << x;
    EXPECT_LT(std::abs(d.id_part - di), 1e-8 * scale) << w << ' ' << x;
  }
  EXPECT_THROW(greens::free_green_domega(0.0, 1.0), DomainError);
}

TEST(CoulombGreen, BoundPoleIsRejected) {
  const double e1 = std::sqrt(1.0 - std::pow(92 / 137.035999, 2));
  EXPECT_THROW(greens::coulomb_green(e1, -1, 0.3, 0.4, 92), PoleError);
  EXPECT_THROW(greens::coulomb_green(cplx(1.5, 0.0), -1, 0.3, 0.4, 92), DomainError);
}
