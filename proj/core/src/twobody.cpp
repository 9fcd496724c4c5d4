#include "vpscreen/twobody.hpp"
#include "vpscreen/constants.hpp"
#include "vpscreen/errors.hpp"
#include "vpscreen/uehling.hpp"

#include <cmath>

namespace vpscreen::twobody {

namespace {

constexpr double kChiPrefactor = 2.0 * kAlpha / (3.0 * kPi);

double legendre(int L, double x) {
  double p0 = 1.0, p1 = x;
  if (L == 0)
    return p0;
  for (int l = 2; l <= L; ++l) {
    const double p2 = ((2 * l - 1) * x * p1 - (l - 1) * p0) / l;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double moment_or_zero(int n, double s) { return s > 100.0 ? 0.0 : uehling::moment(n, s); }

// (2L+1)/2 int_{-1}^{1} chi(s)/s P_L(mu) dmu, for well separated radii.
double uehling_kernel_by_angle(int L, double r1, double r2) {
  const quad::QuadratureRule &g = quad::gauss_legendre(24);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double mu = g.nodes[i];
    const double s = std::sqrt(r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * mu);
    sum += g.weights[i] * moment_or_zero(0, s) / s * legendre(L, mu);
  }
  return 0.5 * (2 * L + 1) * kChiPrefactor * sum;
}

double uehling_kernel(int L, double r1, double r2) {
  if (L < 0 || L > 1)
    throw DomainError("multipole_kernel: screened kernel implemented for L = 0, 1");
  const double lo = std::min(r1, r2), hi = std::max(r1, r2);
  const double d = hi - lo, s = hi + lo;
  if (d > 60.0)
    return 0.0;
  if (lo < 0.3 * hi)
    return uehling_kernel_by_angle(L, r1, r2);
  const double i0 = 0.5 * kChiPrefactor * (moment_or_zero(1, d) - moment_or_zero(1, s));
  if (L == 0)
    return i0 / (2.0 * r1 * r2);
  auto part = [](double x) {
    if (x > 100.0)
      return 0.0;
    return 0.5 * x * x * uehling::moment(1, x) + 0.5 * x * uehling::moment(2, x) +
           0.25 * uehling::moment(3, x);
  };
  const double i2 = kChiPrefactor * (part(d) - part(s));
  return 3.0 / (4.0 * r1 * r1 * r2 * r2) * ((r1 * r1 + r2 * r2) * i0 - i2);
}

// Barycentric interpolation on the Gauss nodes of one interval.
class IntervalInterpolant {
public:
  explicit IntervalInterpolant(int n) : m_x(quad::gauss_legendre(n).nodes), m_w(n) {
    for (int j = 0; j < n; ++j) {
      double p = 1.0;
      for (int m = 0; m < n; ++m)
        if (m != j)
          p *= m_x[j] - m_x[m];
      m_w[j] = 1.0 / p;
    }
  }

  double operator()(const double *f, double x) const {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < m_x.size(); ++j) {
      const double dx = x - m_x[j];
      if (dx == 0.0)
        return f[j];
      const double t = m_w[j] / dx;
      num += t * f[j];
      den += t;
    }
    return num / den;
  }

private:
  std::vector<double> m_x, m_w;
};

std::vector<double> coulomb_potential(int L, const quad::RadialGrid &grid,
                                      const std::vector<double> &f) {
  const std::size_t n = grid.size();
  std::vector<double> in(n), out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid.nodes[i];
    in[i] = f[i] * std::pow(r, L);
    out[i] = f[i] * std::pow(r, -L - 1);
  }
  const quad::CumulativeRule cum(grid);
  const std::vector<double> fw = cum.forward(in), bw = cum.backward(out);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid.nodes[i];
    y[i] = std::pow(r, -L - 1) * fw[i] + std::pow(r, L) * bw[i];
  }
  return y;
}

std::vector<double> screened_potential(int L, const quad::RadialGrid &grid,
                                       const std::vector<double> &f) {
  const int m = grid.per_interval;
  const std::size_t n_int = grid.n_intervals();
  const IntervalInterpolant interp(m);
  std::vector<double> abs_mass(n_int, 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < n_int; ++k) {
    for (int j = 0; j < m; ++j)
      abs_mass[k] += std::abs(f[k * m + j]) * grid.weights[k * m + j];
    total += abs_mass[k];
  }

  std::vector<double> y(grid.size(), 0.0);
  for (std::size_t q = 0; q < grid.size(); ++q) {
    const double r1 = grid.nodes[q];
    const std::size_t kq = q / m;
    double sum = 0.0;
    for (std::size_t k = 0; k < n_int; ++k) {
      const bool near = k + 1 >= kq && k <= kq + 1;
      if (!near || abs_mass[k] < 1e-18 * total) {
        for (int j = 0; j < m; ++j) {
          const std::size_t i = k * m + j;
          if (i != q)
            sum += grid.weights[i] * f[i] * uehling_kernel(L, r1, grid.nodes[i]);
        }
        continue;
      }
      const double a = grid.breaks[k], b = grid.breaks[k + 1];
      const double *fk = &f[k * m];
      auto integrand = [&](double r2) {
        const double x = (2.0 * r2 - a - b) / (b - a);
        return interp(fk, x) * uehling_kernel(L, r1, r2);
      };
      const double floor = 1e-16 * total * std::abs(uehling_kernel(L, r1, 1.5 * r1));
      // the kernel is log-singular at r2 = r1, an end point of every piece
      // here; for a point nucleus f is also singular at the origin, where
      // bisection can run out and tanh-sinh takes over
      auto piece = [&](double lo, double hi) {
        try {
          return quad::integrate_adaptive(integrand, lo, hi, 1e-11, floor).value;
        } catch (const ConvergenceError &) {
          return quad::integrate_log_endpoint(integrand, lo, hi, 1e-11, floor).value;
        }
      };
      if (k == kq)
        sum += piece(a, r1) + piece(r1, b);
      else
        sum += piece(a, b);
    }
    y[q] = sum;
  }
  return y;
}

std::vector<double> to_std(const Eigen::VectorXd &v) { return {v.data(), v.data() + v.size()}; }

struct Sampled {
  std::vector<double> P, Q;
};

Sampled sample(const Orbital &o) { return {to_std(o.P_at_nodes()), to_std(o.Q_at_nodes())}; }

const quad::RadialGrid &shared_grid(const Orbital &o, quad::RadialGrid &storage) {
  storage = o.basis->grid();
  return storage;
}

void require_same_basis(std::initializer_list<const Orbital *> os) {
  const DkbBasis *b = (*os.begin())->basis.get();
  for (const Orbital *o : os)
    if (o->basis.get() != b)
      throw DomainError("two-body element: orbitals must share a basis");
}

} // namespace

double multipole_kernel(int L, Kernel k, double r1, double r2) {
  if (!(r1 > 0.0) || !(r2 > 0.0) || L < 0)
    throw DomainError("multipole_kernel: radii must be positive");
  if (k == Kernel::Coulomb) {
    const double lo = std::min(r1, r2), hi = std::max(r1, r2);
    return std::pow(lo / hi, L) / hi;
  }
  if (r1 == r2)
    throw PoleError("multipole_kernel: screened kernel diverges at r1 = r2");
  return uehling_kernel(L, r1, r2);
}

std::vector<double> multipole_potential(int L, Kernel k, const quad::RadialGrid &grid,
                                        const std::vector<double> &f) {
  if (f.size() != grid.size())
    throw DomainError("multipole_potential: size mismatch");
  return k == Kernel::Coulomb ? coulomb_potential(L, grid, f) : screened_potential(L, grid, f);
}

double radial_integral(int L, Kernel k, const quad::RadialGrid &grid,
                       const std::vector<double> &f, const std::vector<double> &g) {
  if (g.size() != grid.size())
    throw DomainError("radial_integral: size mismatch");
  const std::vector<double> y = multipole_potential(L, k, grid, f);
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    sum += grid.weights[i] * g[i] * y[i];
  return sum;
}

double i0_matrix_element(const Orbital &c, const Orbital &d, const Orbital &a,
                         const Orbital &b, Kernel k) {
  require_same_basis({&c, &d, &a, &b});
  quad::RadialGrid grid;
  shared_grid(a, grid);
  const Sampled sc = sample(c), sd = sample(d), sa = sample(a), sb = sample(b);
  const std::size_t n = grid.size();
  std::vector<double> rho_ca(n), rho_db(n), u_ca(n), u_db(n), v_ca(n), v_db(n), v_da(n),
      v_cb(n);
  for (std::size_t i = 0; i < n; ++i) {
    rho_ca[i] = sc.P[i] * sa.P[i] + sc.Q[i] * sa.Q[i];
    rho_db[i] = sd.P[i] * sb.P[i] + sd.Q[i] * sb.Q[i];
    u_ca[i] = sc.P[i] * sa.Q[i] - sc.Q[i] * sa.P[i];
    u_db[i] = sd.P[i] * sb.Q[i] - sd.Q[i] * sb.P[i];
    v_ca[i] = sc.P[i] * sa.Q[i] + sc.Q[i] * sa.P[i];
    v_db[i] = sd.P[i] * sb.Q[i] + sd.Q[i] * sb.P[i];
    v_da[i] = sd.P[i] * sa.Q[i] + sd.Q[i] * sa.P[i];
    v_cb[i] = sc.P[i] * sb.Q[i] + sc.Q[i] * sb.P[i];
  }
  return kAlpha * (radial_integral(0, k, grid, rho_ca, rho_db) +
                   radial_integral(1, k, grid, u_ca, u_db) / 3.0 +
                   2.0 * radial_integral(1, k, grid, v_ca, v_db) / 9.0 +
                   4.0 * radial_integral(1, k, grid, v_da, v_cb) / 9.0);
}

double pair_energy(const Orbital &a, Kernel k) {
  quad::RadialGrid grid;
  shared_grid(a, grid);
  const Sampled s = sample(a);
  std::vector<double> rho(grid.size()), pq(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rho[i] = s.P[i] * s.P[i] + s.Q[i] * s.Q[i];
    pq[i] = 2.0 * s.P[i] * s.Q[i];
  }
  return kAlpha * (radial_integral(0, k, grid, rho, rho) +
                   2.0 / 3.0 * radial_integral(1, k, grid, pq, pq));
}

double first_order_pair(const Orbital &a, const Orbital &delta_a, Kernel k) {
  require_same_basis({&a, &delta_a});
  quad::RadialGrid grid;
  shared_grid(a, grid);
  const Sampled s = sample(a), ds = sample(delta_a);
  const std::size_t n = grid.size();
  std::vector<double> rho(n), drho(n), pq(n), dpq(n);
  for (std::size_t i = 0; i < n; ++i) {
    rho[i] = s.P[i] * s.P[i] + s.Q[i] * s.Q[i];
    drho[i] = s.P[i] * ds.P[i] + s.Q[i] * ds.Q[i];
    pq[i] = 2.0 * s.P[i] * s.Q[i];
    dpq[i] = s.P[i] * ds.Q[i] + s.Q[i] * ds.P[i];
  }
  return 4.0 * kAlpha *
         (radial_integral(0, k, grid, drho, rho) +
          2.0 / 3.0 * radial_integral(1, k, grid, dpq, pq));
}

double uehling_b_matrix_element(const Orbital &a) {
  return to_eV(pair_energy(a, Kernel::Uehling));
}

} // namespace vpscreen::twobody
