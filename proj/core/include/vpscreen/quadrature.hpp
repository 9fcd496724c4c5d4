#pragma once
#include <cstddef>
#include <functional>
#include <vector>

// One-dimensional quadrature rules and drivers.

namespace vpscreen::quad {

using Integrand = std::function<double(double)>;

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double lo{-1.0};
  double hi{1.0};

  std::size_t size() const { return nodes.size(); }
  double apply(const Integrand &f) const;
};

struct IntegralEstimate {
  double value{0.0};
  double error_estimate{0.0};
  long evaluations{0};
};

//! n-point Gauss-Legendre rule on [-1, 1]; 2 <= n <= 512.
QuadratureRule gauss_legendre(int n);

//! Same rule mapped onto [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

//! Integral over [0, inf) by a double-exponential (exp-sinh) rule with step
//! halving. decay_scale sets where the mapping is centred. Throws
//! ConvergenceError carrying the last estimate when refinement is exhausted.
IntegralEstimate integrate_semi_infinite(const Integrand &f, double decay_scale,
                                         double tol, double abs_floor = 1e-300);

//! Integral over [a, b] by tanh-sinh; tolerates integrable endpoint
//! singularities (log, power) at either end. Near b the abscissae are
//! limited by the spacing of doubles around b, so a power singularity there
//! is resolved only to about sqrt(eps) (b - a) of its local integral.
IntegralEstimate integrate_log_endpoint(const Integrand &f, double a, double b,
                                        double tol, double abs_floor = 1e-300);

//! Adaptive bisection with 10/20-point Gauss-Legendre comparison.
IntegralEstimate integrate_adaptive(const Integrand &f, double a, double b,
                                    double tol, double abs_floor = 1e-300);

//! Composite Gauss rule on geometrically spaced intervals.
struct RadialGrid {
  std::vector<double> breaks;  // interval end points, size n_intervals + 1
  std::vector<double> nodes;   // all nodes in ascending order
  std::vector<double> weights; // matching weights (dr measure)
  int per_interval{0};

  std::size_t n_intervals() const { return breaks.size() - 1; }
  std::size_t size() const { return nodes.size(); }
};

//! Grid covering [r_min, r_max] with `per_decade` intervals per factor of 10
//! and `per_interval` Gauss nodes in each. A uniform first interval [0, r_min]
//! is added when include_origin is set.
RadialGrid make_log_grid(double r_min, double r_max, int per_decade,
                         int per_interval, bool include_origin = true);

//! Running integrals on a RadialGrid: for values f at the nodes, the integral
//! from the first break to each node and from each node to the last break.
//! Within an interval f is represented by its interpolating polynomial.
class CumulativeRule {
public:
  explicit CumulativeRule(const RadialGrid &grid);
  const RadialGrid &grid() const { return m_grid; }
  std::vector<double> forward(const std::vector<double> &f) const;
  std::vector<double> backward(const std::vector<double> &f) const;

private:
  RadialGrid m_grid;
  std::vector<double> m_partial; // per_interval^2, reference interval [-1, 1]
};

//! Values between the nodes of a RadialGrid: on each interval, the polynomial
//! through that interval's Gauss nodes.
class GridInterpolant {
public:
  explicit GridInterpolant(const RadialGrid &grid);
  const RadialGrid &grid() const { return m_grid; }
  //! r must lie within the first and last break.
  double operator()(const std::vector<double> &f, double r) const;
  std::size_t interval_of(double r) const;
  //! Lagrange basis of the reference nodes at t in [-1, 1].
  void basis(double t, double *out) const;

private:
  RadialGrid m_grid;
  std::vector<double> m_x, m_w; // reference nodes, barycentric weights
};

//! Radial grid with the given breaks and n Gauss nodes per interval.
RadialGrid grid_from_breaks(const std::vector<double> &breaks, int per_interval);

} // namespace vpscreen::quad
