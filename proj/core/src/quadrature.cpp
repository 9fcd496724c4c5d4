#include "vpscreen/quadrature.hpp"
#include "vpscreen/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>

namespace vpscreen::quad {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 0.5 * kPi;

QuadratureRule build_gauss_legendre(int n) {
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1)
    r.nodes[n / 2] = 0.0;
  return r;
}

// Trapezoid sums over a double-exponential map with step halving. `term(s)`
// returns f(x(s)) * dx/ds, or 0 outside the representable range.
template <class Term>
IntegralEstimate de_driver(const Term &term, double s_lo, double s_hi, double tol,
                           double abs_floor, const char *name) {
  IntegralEstimate est;
  double h = 0.5;
  double sum = 0.0;
  for (double s = 0.0; s <= s_hi + 1e-12; s += h) {
    sum += term(s);
    ++est.evaluations;
  }
  for (double s = -h; s >= s_lo - 1e-12; s -= h) {
    sum += term(s);
    ++est.evaluations;
  }
  double prev = sum * h;
  for (int level = 1; level <= 12; ++level) {
    h *= 0.5;
    double add = 0.0;
    for (double s = h; s <= s_hi + 1e-12; s += 2.0 * h) {
      add += term(s);
      ++est.evaluations;
    }
    for (double s = -h; s >= s_lo - 1e-12; s -= 2.0 * h) {
      add += term(s);
      ++est.evaluations;
    }
    sum += add;
    const double cur = sum * h;
    est.value = cur;
    est.error_estimate = std::abs(cur - prev);
    if (level >= 3 && est.error_estimate <= std::max(tol * std::abs(cur), abs_floor))
      return est;
    prev = cur;
  }
  throw ConvergenceError(std::string(name) + ": refinement exhausted", est.value);
}

} // namespace

double QuadratureRule::apply(const Integrand &f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    s += weights[i] * f(nodes[i]);
  return s;
}

QuadratureRule gauss_legendre(int n) {
  if (n < 2 || n > 512)
    throw DomainError("gauss_legendre: n must be in [2, 512]");
  static std::mutex mtx;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, build_gauss_legendre(n)).first;
  return it->second;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  QuadratureRule r = gauss_legendre(n);
  const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r.nodes[i] = c + hw * r.nodes[i];
    r.weights[i] *= hw;
  }
  r.lo = a;
  r.hi = b;
  return r;
}

IntegralEstimate integrate_semi_infinite(const Integrand &f, double decay_scale,
                                         double tol, double abs_floor) {
  if (!(decay_scale > 0.0))
    throw DomainError("integrate_semi_infinite: decay_scale must be positive");
  auto term = [&](double s) {
    const double x = decay_scale * std::exp(kHalfPi * std::sinh(s));
    if (x == 0.0 || !std::isfinite(x))
      return 0.0;
    const double v = f(x) * x * kHalfPi * std::cosh(s);
    return std::isfinite(v) ? v : 0.0;
  };
  return de_driver(term, -4.5, 4.5, tol, abs_floor, "integrate_semi_infinite");
}

IntegralEstimate integrate_log_endpoint(const Integrand &f, double a, double b,
                                        double tol, double abs_floor) {
  if (!(b > a))
    throw DomainError("integrate_log_endpoint: need b > a");
  const double hw = 0.5 * (b - a);
  auto term = [&](double s) {
    const double u = kHalfPi * std::sinh(s);
    const double ch = std::cosh(u);
    const double w = hw * kHalfPi * std::cosh(s) / (ch * ch);
    if (w == 0.0 || !std::isfinite(w))
      return 0.0;
    // distance from the nearer end, computed without cancellation
    const double d = hw * 2.0 / (1.0 + std::exp(2.0 * std::abs(u)));
    const double x = (s < 0.0) ? a + d : b - d;
    if (x <= a || x >= b)
      return 0.0;
    return w * f(x);
  };
  return de_driver(term, -4.0, 4.0, tol, abs_floor, "integrate_log_endpoint");
}

IntegralEstimate integrate_adaptive(const Integrand &f, double a, double b,
                                    double tol, double abs_floor) {
  const QuadratureRule g10 = gauss_legendre(10);
  const QuadratureRule g20 = gauss_legendre(20);
  IntegralEstimate est;
  auto pair = [&](double lo, double hi, double &coarse, double &fine) {
    const double c = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
    coarse = fine = 0.0;
    for (std::size_t i = 0; i < g10.size(); ++i)
      coarse += g10.weights[i] * f(c + hw * g10.nodes[i]);
    for (std::size_t i = 0; i < g20.size(); ++i)
      fine += g20.weights[i] * f(c + hw * g20.nodes[i]);
    coarse *= hw;
    fine *= hw;
    est.evaluations += 30;
  };
  struct Seg {
    double lo, hi, value, err;
    bool operator<(const Seg &o) const { return err < o.err; }
  };
  auto make = [&](double lo, double hi) {
    double c, fi;
    pair(lo, hi, c, fi);
    return Seg{lo, hi, fi, std::abs(fi - c)};
  };
  std::priority_queue<Seg> queue;
  queue.push(make(a, b));
  double total = queue.top().value, err = queue.top().err;
  for (int split = 0; split < 4000; ++split) {
    if (err <= std::max(tol * std::abs(total), abs_floor)) {
      est.value = total;
      est.error_estimate = err;
      return est;
    }
    const Seg s = queue.top();
    queue.pop();
    const double m = 0.5 * (s.lo + s.hi);
    const Seg l = make(s.lo, m), r = make(m, s.hi);
    total += l.value + r.value - s.value;
    err += l.err + r.err - s.err;
    queue.push(l);
    queue.push(r);
  }
  throw ConvergenceError("integrate_adaptive: subdivision limit reached", total);
}

RadialGrid make_log_grid(double r_min, double r_max, int per_decade,
                         int per_interval, bool include_origin) {
  if (!(r_min > 0.0) || !(r_max > r_min) || per_decade < 1 || per_interval < 2)
    throw DomainError("make_log_grid: invalid parameters");
  RadialGrid g;
  g.per_interval = per_interval;
  if (include_origin)
    g.breaks.push_back(0.0);
  const int n = std::max(
      1, static_cast<int>(std::ceil(per_decade * std::log10(r_max / r_min))));
  const double ratio = std::pow(r_max / r_min, 1.0 / n);
  double r = r_min;
  for (int i = 0; i <= n; ++i) {
    g.breaks.push_back(i == n ? r_max : r);
    r *= ratio;
  }
  const QuadratureRule base = gauss_legendre(per_interval);
  for (std::size_t k = 0; k + 1 < g.breaks.size(); ++k) {
    const double c = 0.5 * (g.breaks[k] + g.breaks[k + 1]);
    const double hw = 0.5 * (g.breaks[k + 1] - g.breaks[k]);
    for (std::size_t i = 0; i < base.size(); ++i) {
      g.nodes.push_back(c + hw * base.nodes[i]);
      g.weights.push_back(hw * base.weights[i]);
    }
  }
  return g;
}

RadialGrid grid_from_breaks(const std::vector<double> &breaks, int per_interval) {
  if (breaks.size() < 2 || per_interval < 2)
    throw DomainError("grid_from_breaks: invalid parameters");
  RadialGrid g;
  g.breaks = breaks;
  g.per_interval = per_interval;
  const QuadratureRule base = gauss_legendre(per_interval);
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double c = 0.5 * (breaks[k] + breaks[k + 1]);
    const double hw = 0.5 * (breaks[k + 1] - breaks[k]);
    if (!(hw > 0.0))
      throw DomainError("grid_from_breaks: breaks must increase");
    for (std::size_t i = 0; i < base.size(); ++i) {
      g.nodes.push_back(c + hw * base.nodes[i]);
      g.weights.push_back(hw * base.weights[i]);
    }
  }
  return g;
}

CumulativeRule::CumulativeRule(const RadialGrid &grid) : m_grid(grid) {
  const int n = grid.per_interval;
  const QuadratureRule base = gauss_legendre(n);
  const std::vector<double> &x = base.nodes;
  auto lagrange = [&](int j, double y) {
    double v = 1.0;
    for (int m = 0; m < n; ++m)
      if (m != j)
        v *= (y - x[m]) / (x[j] - x[m]);
    return v;
  };
  m_partial.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int q = 0; q < n; ++q) {
    const QuadratureRule sub = gauss_legendre(n, -1.0, x[q]);
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int m = 0; m < n; ++m)
        s += sub.weights[m] * lagrange(j, sub.nodes[m]);
      m_partial[q * n + j] = s;
    }
  }
}

std::vector<double> CumulativeRule::forward(const std::vector<double> &f) const {
  const int n = m_grid.per_interval;
  if (f.size() != m_grid.size())
    throw DomainError("CumulativeRule: value count does not match the grid");
  std::vector<double> out(f.size());
  double carry = 0.0;
  for (std::size_t k = 0; k < m_grid.n_intervals(); ++k) {
    const double hw = 0.5 * (m_grid.breaks[k + 1] - m_grid.breaks[k]);
    const std::size_t off = k * n;
    for (int q = 0; q < n; ++q) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        s += m_partial[q * n + j] * f[off + j];
      out[off + q] = carry + hw * s;
    }
    double total = 0.0;
    for (int j = 0; j < n; ++j)
      total += m_grid.weights[off + j] * f[off + j];
    carry += total;
  }
  return out;
}

std::vector<double> CumulativeRule::backward(const std::vector<double> &f) const {
  const int n = m_grid.per_interval;
  if (f.size() != m_grid.size())
    throw DomainError("CumulativeRule: value count does not match the grid");
  std::vector<double> out(f.size());
  double carry = 0.0; // integral from the end of interval k to the last break
  for (std::size_t kk = m_grid.n_intervals(); kk-- > 0;) {
    const std::size_t off = kk * n;
    double total = 0.0;
    for (int j = 0; j < n; ++j)
      total += m_grid.weights[off + j] * f[off + j];
    const double hw = 0.5 * (m_grid.breaks[kk + 1] - m_grid.breaks[kk]);
    for (int q = 0; q < n; ++q) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        s += m_partial[q * n + j] * f[off + j];
      out[off + q] = carry + total - hw * s;
    }
    carry += total;
  }
  return out;
}

} // namespace vpscreen::quad

namespace vpscreen::quad {

GridInterpolant::GridInterpolant(const RadialGrid &grid)
    : m_grid(grid), m_x(gauss_legendre(grid.per_interval).nodes) {
  const std::size_t n = m_x.size();
  m_w.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double p = 1.0;
    for (std::size_t m = 0; m < n; ++m)
      if (m != j)
        p *= m_x[j] - m_x[m];
    m_w[j] = 1.0 / p;
  }
}

std::size_t GridInterpolant::interval_of(double r) const {
  const auto &b = m_grid.breaks;
  if (!(r >= b.front()) || !(r <= b.back()))
    throw DomainError("GridInterpolant: radius outside the grid");
  const auto it = std::upper_bound(b.begin(), b.end(), r);
  const std::size_t k = static_cast<std::size_t>(it - b.begin());
  return std::min(k == 0 ? 0 : k - 1, m_grid.n_intervals() - 1);
}

void GridInterpolant::basis(double t, double *out) const {
  const std::size_t n = m_x.size();
  double den = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double dx = t - m_x[j];
    if (dx == 0.0) {
      std::fill(out, out + n, 0.0);
      out[j] = 1.0;
      return;
    }
    out[j] = m_w[j] / dx;
    den += out[j];
  }
  for (std::size_t j = 0; j < n; ++j)
    out[j] /= den;
}

double GridInterpolant::operator()(const std::vector<double> &f, double r) const {
  if (f.size() != m_grid.size())
    throw DomainError("GridInterpolant: value count does not match the grid");
  const std::size_t k = interval_of(r);
  const double a = m_grid.breaks[k], b = m_grid.breaks[k + 1];
  const std::size_t n = m_x.size();
  double l[512];
  basis((2.0 * r - a - b) / (b - a), l);
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    s += l[j] * f[k * n + j];
  return s;
}

} // namespace vpscreen::quad
