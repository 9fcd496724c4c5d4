#include "vpscreen/errors.hpp"
#include "vpscreen/loop.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>

namespace vpscreen::loop {

namespace {

using State = std::array<cplx, 2>;
namespace odeint = boost::numeric::odeint;

// (P, Q) exp(-shift r) for the radial equation
//   P' = -kappa P / r + (omega - v + 1) Q,  Q' = kappa Q / r + (v + 1 - omega) P
struct Radial {
  int kappa;
  cplx omega;
  double shift;
  const std::function<double(double)> &v;

  void operator()(const State &y, State &dy, double r) const {
    const double vr = v(r);
    dy[0] = (-kappa / r - shift) * y[0] + (omega - vr + 1.0) * y[1];
    dy[1] = (vr + 1.0 - omega) * y[0] + (kappa / r - shift) * y[1];
  }
};

// Integrate from r0 to r1 stopping at every kink in between.
void advance(const Radial &sys, State &y, double r0, double r1, const std::vector<double> &kinks) {
  auto stepper = odeint::make_controlled(1e-13, 1e-12, odeint::runge_kutta_dopri5<State>());
  std::vector<double> stops;
  for (double k : kinks)
    if ((k - r0) * (k - r1) < 0.0)
      stops.push_back(k);
  std::sort(stops.begin(), stops.end());
  if (r1 < r0)
    std::reverse(stops.begin(), stops.end());
  stops.push_back(r1);
  double r = r0;
  for (double s : stops) {
    const double dr = (s - r) / 16.0;
    odeint::integrate_adaptive(stepper, sys, y, r, s, dr);
    r = s;
  }
}

} // namespace

RadialSolutions extended_solutions(double eps, int kappa, double Z,
                                   const std::function<double(double)> &v, double r_match,
                                   const std::vector<double> &kinks,
                                   const quad::RadialGrid &grid) {
  RadialSolutions s = coulomb_solutions(eps, kappa, Z, grid);
  const auto &x = grid.nodes;
  const auto it = std::lower_bound(x.begin(), x.end(), r_match);
  if (it == x.end())
    throw DomainError("extended_solutions: matching radius beyond the grid");
  const std::size_t j = static_cast<std::size_t>(it - x.begin());
  const cplx omega(0.0, eps);
  const double d = s.d;
  const int k = std::abs(kappa);

  // regular solution from the origin, started on its power series
  const double r_s = 1e-3 * std::min(x.front(), 1.0 / d);
  const double v0 = v(r_s);
  State y = kappa < 0 ? State{1.0, (v0 + 1.0 - omega) * r_s / (2.0 * k + 1.0)}
                      : State{(omega - v0 + 1.0) * r_s / (2.0 * k + 1.0), 1.0};
  const Radial outward{kappa, omega, d, v};
  std::vector<State> reg(j + 1);
  double r = r_s;
  for (std::size_t i = 0; i <= j; ++i) {
    advance(outward, y, r, x[i], kinks);
    r = x[i];
    reg[i] = {y[0] / r, y[1] / r};
    // keep the magnitude near one; only ratios matter
    const double m = std::max(std::abs(y[0]), std::abs(y[1]));
    if (m > 1e100) {
      for (auto &q : reg)
        for (auto &c : q)
          c /= m;
      y[0] /= m;
      y[1] /= m;
    }
  }

  // reg_j = alpha_M a_j + beta b_j
  const cplx a1 = s.a1[j], a2 = s.a2[j], b1 = s.b1[j], b2 = s.b2[j];
  const cplx det = a1 * b2 - a2 * b1;
  const cplx alpha_m = (reg[j][0] * b2 - reg[j][1] * b1) / det;
  const cplx beta = (a1 * reg[j][1] - a2 * reg[j][0]) / det;
  if (alpha_m == 0.0)
    throw DomainError("extended_solutions: regular solution orthogonal to the Coulomb one");
  const cplx ratio = beta / alpha_m;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i < j) {
      s.a1[i] = reg[i][0] / alpha_m;
      s.a2[i] = reg[i][1] / alpha_m;
    } else {
      const double decay = std::exp(-2.0 * d * (x[i] - x[j]));
      s.a1[i] += ratio * s.b1[i] * decay;
      s.a2[i] += ratio * s.b2[i] * decay;
    }
  }

  // decaying solution continued inward from the matching node
  const Radial inward{kappa, omega, -d, v};
  State w{x[j] * b1, x[j] * b2};
  r = x[j];
  for (std::size_t i = j; i-- > 0;) {
    advance(inward, w, r, x[i], kinks);
    r = x[i];
    s.b1[i] = w[0] / r;
    s.b2[i] = w[1] / r;
  }
  return s;
}

} // namespace vpscreen::loop
