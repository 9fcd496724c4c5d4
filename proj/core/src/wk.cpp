#include "vpscreen/wk.hpp"
#include "vpscreen/constants.hpp"
#include "vpscreen/errors.hpp"
#include "vpscreen/twobody.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <cmath>
#include <ostream>
#include <thread>

namespace vpscreen::wk {

namespace {

using loop::cplx;
using loop::RadialSolutions;

void parallel_for(int n, int threads, const std::function<void(int)> &body) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i)
      body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mtx;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mtx);
          if (!error)
            error = std::current_exception();
        }
      }
    });
  for (auto &th : pool)
    th.join();
  if (error)
    std::rethrow_exception(error);
}

// Partial waves of one sign pattern at one frequency.
struct Waves {
  RadialSolutions plus, minus, free;
};

Waves make_waves(double eps, int kappa, double Z, const quad::RadialGrid &g) {
  return {loop::coulomb_solutions(eps, kappa, Z, g), loop::coulomb_solutions(eps, kappa, -Z, g),
          loop::free_solutions(eps, kappa, g)};
}

// even part of the loop product minus its free value, component-resolved
std::vector<cplx> even_minus_free(const loop::ExpConvolution &conv, const Waves &x, int i,
                                  int k, const Waves &y, int j, int l,
                                  const std::vector<cplx> &g) {
  const auto pp = loop::pair_apply(conv, x.plus, i, k, y.plus, j, l, g);
  const auto mm = loop::pair_apply(conv, x.minus, i, k, y.minus, j, l, g);
  const auto ff = loop::pair_apply(conv, x.free, i, k, y.free, j, l, g);
  std::vector<cplx> out(g.size());
  for (std::size_t q = 0; q < g.size(); ++q)
    out[q] = 0.5 * (pp[q] + mm[q]) - ff[q];
  return out;
}

std::vector<cplx> traced_even_minus_free(const loop::ExpConvolution &conv, const Waves &x,
                                         const std::vector<cplx> &g) {
  const auto pp = loop::pair_apply_traced(conv, x.plus, x.plus, g);
  const auto mm = loop::pair_apply_traced(conv, x.minus, x.minus, g);
  const auto ff = loop::pair_apply_traced(conv, x.free, x.free, g);
  std::vector<cplx> out(g.size());
  for (std::size_t q = 0; q < g.size(); ++q)
    out[q] = 0.5 * (pp[q] + mm[q]) - ff[q];
  return out;
}

double weighted_sum(const quad::RadialGrid &g, const std::vector<double> &f,
                    const std::vector<cplx> &v) {
  double s = 0.0;
  for (std::size_t q = 0; q < g.size(); ++q)
    s += g.weights[q] * f[q] * v[q].real();
  return s;
}

// Power-law remainder beyond the last frequency panel.
double frequency_tail(const std::vector<double> &panels) {
  const std::size_t n = panels.size();
  if (n < 2 || panels[n - 2] == 0.0)
    return 0.0;
  const double q = panels[n - 1] / panels[n - 2];
  if (!(q > 0.0 && q < 0.5))
    return 0.0;
  return panels[n - 1] * q / (1.0 - q);
}

int kappa_of(int n, int sign) { return sign * n; }

} // namespace

KappaSeries make_series(std::vector<double> terms, bool extrapolate, double rel_tol,
                        double abs_tol) {
  KappaSeries s;
  s.terms = std::move(terms);
  double sum = 0.0;
  for (double t : s.terms)
    sum += t;
  const std::size_t n = s.terms.size();
  // without a usable power law the last term stands for the remainder
  double remainder = n ? std::abs(s.terms.back()) : 0.0;
  if (extrapolate && n >= 2) {
    // t_k ~ C k^-p through the last two terms, summed from k = n + 1/2
    const double t1 = s.terms[n - 2], t2 = s.terms[n - 1];
    const double K = static_cast<double>(n);
    if (t1 * t2 > 0.0 && std::abs(t2) < std::abs(t1)) {
      const double p = std::log(t1 / t2) / std::log(K / (K - 1.0));
      if (p > 1.0) {
        s.tail = t2 * std::pow(K, p) * std::pow(K + 0.5, 1.0 - p) / (p - 1.0);
        remainder = std::abs(s.tail);
      }
    }
  }
  s.sum = sum + s.tail;
  s.converged = remainder <= std::max(rel_tol * std::abs(s.sum), abs_tol);
  return s;
}

quad::QuadratureRule frequency_rule(const WKConfig &cfg) {
  if (!(cfg.eps_first > 0.0) || !(cfg.eps_ratio > 1.0) || cfg.eps_panels < 1 ||
      cfg.eps_nodes < 2)
    throw DomainError("WKConfig: invalid frequency rule");
  quad::QuadratureRule r;
  double lo = 0.0, hi = cfg.eps_first;
  for (int p = 0; p < cfg.eps_panels; ++p) {
    const quad::QuadratureRule g = quad::gauss_legendre(cfg.eps_nodes, lo, hi);
    r.nodes.insert(r.nodes.end(), g.nodes.begin(), g.nodes.end());
    r.weights.insert(r.weights.end(), g.weights.begin(), g.weights.end());
    lo = hi;
    hi *= cfg.eps_ratio;
  }
  r.lo = 0.0;
  r.hi = lo;
  return r;
}

WkPotential::WkPotential(double Z, const WKConfig &cfg)
    : m_Z(Z), m_cfg(cfg), m_grid(loop::make_loop_grid(cfg.grid)) {
  build(nucleus::point_nucleus(Z));
}

WkPotential::WkPotential(const nucleus::NuclearModel &m, const WKConfig &cfg)
    : m_Z(m.Z), m_cfg(cfg), m_grid(loop::make_loop_grid(cfg.grid)) {
  build(m);
}

void WkPotential::build(const nucleus::NuclearModel &m) {
  const WKConfig &cfg = m_cfg;
  const double Z = m.Z;
  if (cfg.kappa_max < 1)
    throw DomainError("WKConfig: kappa_max must be at least 1");
  const int K = cfg.kappa_max;
  const std::size_t n = m_grid.size();
  const quad::QuadratureRule fr = frequency_rule(cfg);
  const int ne = static_cast<int>(fr.size());
  const bool point = m.shape == nucleus::Shape::Point;
  const double r_match = nucleus::outer_radius(m);
  std::vector<double> kinks;
  if (m.shape == nucleus::Shape::Shell)
    kinks.push_back(r_match);
  const std::function<double(double)> v_plus = [&m](double r) { return nucleus::potential(m, r); };
  const std::function<double(double)> v_minus = [&m](double r) {
    return -nucleus::potential(m, r);
  };
  auto solutions = [&](double eps, int kappa, bool plus) {
    if (point)
      return loop::coulomb_solutions(eps, kappa, plus ? Z : -Z, m_grid);
    return loop::extended_solutions(eps, kappa, plus ? Z : -Z, plus ? v_plus : v_minus, r_match,
                                    kinks, m_grid);
  };
  std::vector<cplx> g(n);
  for (std::size_t q = 0; q < n; ++q) {
    const double x = m_grid.nodes[q];
    g[q] = point ? -kAlpha * Z * x : nucleus::potential(m, x) * x * x;
  }

  // per frequency node, per |kappa|: density at the nodes
  std::vector<std::vector<std::vector<double>>> per_eps(ne);
  parallel_for(ne, cfg.threads, [&](int e) {
    const double eps = fr.nodes[e];
    const loop::ExpConvolution conv(m_grid, 2.0 * std::sqrt(1.0 + eps * eps));
    auto &out = per_eps[e];
    out.assign(K, std::vector<double>(n, 0.0));
    for (int a = 1; a <= K; ++a)
      for (int sign : {-1, 1}) {
        const int kappa = kappa_of(a, sign);
        const RadialSolutions G = solutions(eps, kappa, true);
        const RadialSolutions Gm = solutions(eps, kappa, false);
        const RadialSolutions F = loop::free_solutions(eps, kappa, m_grid);
        const auto fp = loop::pair_apply_traced(conv, F, G, g);
        const auto fm = loop::pair_apply_traced(conv, F, Gm, g);
        const auto ff = loop::pair_apply_traced(conv, F, F, g);
        for (std::size_t q = 0; q < n; ++q)
          out[a - 1][q] += a * (0.5 * (fp[q] + fm[q]) - ff[q]).real();
      }
  });

  m_partial.assign(K, std::vector<double>(n, 0.0));
  m_total.assign(n, 0.0);
  for (int a = 0; a < K; ++a) {
    std::vector<double> src(n, 0.0);
    for (int e = 0; e < ne; ++e)
      for (std::size_t q = 0; q < n; ++q)
        src[q] += fr.weights[e] * per_eps[e][a][q];
    double charge = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
      src[q] *= 2.0 * kAlpha / kPi * m_grid.nodes[q] * m_grid.nodes[q];
      charge += m_grid.weights[q] * src[q];
    }
    // each partial wave carries a net charge that belongs at the origin
    // (it sits beyond any finite frequency cutoff); remove it as a point charge
    m_partial[a] = twobody::multipole_potential(0, twobody::Kernel::Coulomb, m_grid, src);
    for (std::size_t q = 0; q < n; ++q) {
      m_partial[a][q] -= charge / m_grid.nodes[q];
      m_total[q] += m_partial[a][q];
    }
    m_removed.push_back(charge);
  }
}

double WkPotential::operator()(double x) const {
  if (!(x > 0.0))
    throw DomainError("WkPotential: x must be positive");
  if (x >= m_grid.breaks.back())
    return 0.0;
  const quad::GridInterpolant interp(m_grid);
  return interp(m_total, std::max(x, m_grid.breaks.front()));
}

KappaSeries WkPotential::series(double x) const {
  if (!(x > 0.0) || x >= m_grid.breaks.back())
    throw DomainError("WkPotential::series: x outside the loop grid");
  const quad::GridInterpolant interp(m_grid);
  std::vector<double> t;
  for (const auto &p : m_partial)
    t.push_back(interp(p, std::max(x, m_grid.breaks.front())));
  return make_series(std::move(t), m_cfg.tail_extrapolation, m_cfg.rel_tol);
}

void WkPotential::dump(std::ostream &os) const {
  os.precision(17);
  for (std::size_t q = 0; q < m_grid.size(); ++q) {
    os << m_grid.nodes[q] << ' ' << m_total[q];
    for (const auto &p : m_partial)
      os << ' ' << p[q];
    os << '\n';
  }
}

double wk_potential_a(double x, double Z, const WKConfig &cfg) { return WkPotential(Z, cfg)(x); }

LoopEnergies loop_energies(const Orbital &a, double Z, const WKConfig &cfg) {
  if (cfg.loop_kappa_max < 1)
    throw DomainError("WKConfig: loop_kappa_max must be at least 1");
  const int K = cfg.loop_kappa_max;
  const quad::RadialGrid grid = loop::make_loop_grid(cfg.grid);
  const std::size_t n = grid.size();

  // electron sources: Coulomb potential of the density and the magnetic
  // dipole function of the large-small cross density, moved to the loop grid
  const quad::RadialGrid bgrid = a.basis->grid();
  const Eigen::VectorXd P = a.P_at_nodes(), Q = a.Q_at_nodes();
  std::vector<double> rho(bgrid.size()), cross(bgrid.size());
  double dipole = 0.0, norm = 0.0, phi0 = 0.0;
  for (std::size_t i = 0; i < bgrid.size(); ++i) {
    rho[i] = P[i] * P[i] + Q[i] * Q[i];
    cross[i] = 2.0 * P[i] * Q[i];
    dipole += bgrid.weights[i] * bgrid.nodes[i] * cross[i];
    norm += bgrid.weights[i] * rho[i];
    phi0 += bgrid.weights[i] * rho[i] / bgrid.nodes[i];
  }
  const auto y0 = twobody::multipole_potential(0, twobody::Kernel::Coulomb, bgrid, rho);
  const auto y1 = twobody::multipole_potential(1, twobody::Kernel::Coulomb, bgrid, cross);
  const quad::GridInterpolant binterp(bgrid);
  const double r_end = bgrid.breaks.back();
  std::vector<double> phi(n), mag(n), f_phi(n), f_mag(n), f_ctrl(n), f_one(n);
  std::vector<cplx> g_phi(n), g_mag(n), g_ctrl(n);
  for (std::size_t q = 0; q < n; ++q) {
    const double z = grid.nodes[q];
    phi[q] = z < r_end ? binterp(y0, z) : norm / z;
    mag[q] = z < r_end ? binterp(y1, z) : dipole / (z * z);
    f_phi[q] = z * z * phi[q];
    f_mag[q] = z * z * mag[q];
    f_ctrl[q] = -z;
    f_one[q] = z * z;
    g_phi[q] = f_phi[q];
    g_ctrl[q] = f_ctrl[q];
    g_mag[q] = f_mag[q];
  }

  const quad::QuadratureRule fr = frequency_rule(cfg);
  const int ne = static_cast<int>(fr.size());
  struct Slice {
    std::vector<double> timelike, magnetic, control; // per |kappa|
  };
  std::vector<Slice> slices(ne);
  parallel_for(ne, cfg.threads, [&](int e) {
    const double eps = fr.nodes[e];
    const loop::ExpConvolution conv(grid, 2.0 * std::sqrt(1.0 + eps * eps));
    Slice &s = slices[e];
    s.timelike.assign(K, 0.0);
    s.magnetic.assign(K, 0.0);
    s.control.assign(K, 0.0);
    std::vector<Waves> waves; // index 2 (|kappa| - 1) + (sign > 0)
    for (int m = 1; m <= K + 1; ++m)
      for (int sign : {-1, 1})
        waves.push_back(make_waves(eps, kappa_of(m, sign), Z, grid));
    auto wave = [&](int kappa) -> const Waves & {
      return waves[2 * (std::abs(kappa) - 1) + (kappa > 0 ? 1 : 0)];
    };
    for (int m = 1; m <= K; ++m)
      for (int sign : {-1, 1}) {
        const int kappa = kappa_of(m, sign);
        // the net charge of each induced partial-wave density is moved to
        // the origin, where the electron potential is phi0
        const auto t = traced_even_minus_free(conv, wave(kappa), g_phi);
        s.timelike[m - 1] +=
            2.0 * m * (weighted_sum(grid, f_phi, t) - phi0 * weighted_sum(grid, f_one, t));
        const auto tc = traced_even_minus_free(conv, wave(kappa), g_ctrl);
        s.control[m - 1] +=
            2.0 * m * (weighted_sum(grid, f_phi, tc) - phi0 * weighted_sum(grid, f_one, tc));

        const int kp = -sign * (m + 1);
        const std::pair<int, int> pairs[] = {{kappa, kappa}, {kappa, kp}, {kp, kappa}};
        for (const auto &[k1, k2] : pairs) {
          const struct {
            int i, k, j, l;
            double c;
          } terms[] = {{2, 1, 1, 2, -loop::magnetic_coefficient(k2, -k1, k1, -k2)},
                       {2, 2, 1, 1, loop::magnetic_coefficient(k2, -k1, -k1, k2)},
                       {1, 1, 2, 2, loop::magnetic_coefficient(-k2, k1, k1, -k2)},
                       {1, 2, 2, 1, -loop::magnetic_coefficient(-k2, k1, -k1, k2)}};
          for (const auto &tm : terms) {
            if (tm.c == 0.0)
              continue;
            const auto v =
                even_minus_free(conv, wave(k1), tm.i, tm.k, wave(k2), tm.j, tm.l, g_mag);
            s.magnetic[m - 1] += -tm.c / 3.0 * weighted_sum(grid, f_mag, v);
          }
        }
      }
  });

  const double pref = kAlpha * kAlpha / kPi;
  std::vector<double> tl(K, 0.0), mg(K, 0.0), ct(K, 0.0);
  std::vector<double> panel_b(cfg.eps_panels, 0.0), panel_c(cfg.eps_panels, 0.0);
  for (int e = 0; e < ne; ++e) {
    const int panel = e / cfg.eps_nodes;
    for (int m = 0; m < K; ++m) {
      tl[m] += fr.weights[e] * slices[e].timelike[m];
      mg[m] += fr.weights[e] * slices[e].magnetic[m];
      ct[m] += fr.weights[e] * slices[e].control[m];
      panel_b[panel] +=
          fr.weights[e] * (slices[e].timelike[m] + slices[e].magnetic[m]);
      panel_c[panel] += fr.weights[e] * slices[e].control[m];
    }
  }
  const double tail_b = cfg.tail_extrapolation ? frequency_tail(panel_b) : 0.0;
  const double tail_c = cfg.tail_extrapolation ? frequency_tail(panel_c) : 0.0;

  std::vector<double> bt(K), cterms(K);
  double timelike = 0.0;
  for (int m = 0; m < K; ++m) {
    bt[m] = to_eV(pref * (tl[m] + mg[m]));
    cterms[m] = to_eV(pref * ct[m]);
    timelike += to_eV(pref * tl[m]);
  }
  LoopEnergies r;
  for (int m = 0; m < K; ++m)
    r.timelike_terms.push_back(to_eV(pref * tl[m]));
  r.b_series = make_series(bt, cfg.tail_extrapolation, cfg.rel_tol, cfg.abs_tol_eV);
  r.control_series = make_series(cterms, cfg.tail_extrapolation, cfg.rel_tol, cfg.abs_tol_eV);
  r.b_energy = r.b_series.sum + to_eV(pref * tail_b);
  r.control = r.control_series.sum + to_eV(pref * tail_c);
  r.timelike = timelike;
  return r;
}

double wk_b_energy(const Orbital &a, double Z, const WKConfig &cfg) {
  const LoopEnergies e = loop_energies(a, Z, cfg);
  if (!e.b_series.converged)
    throw ConvergenceError("kappa series not converged at kappa_max", e.b_energy);
  return e.b_energy;
}

double wk_control_b(const Orbital &a, double Z, const WKConfig &cfg) {
  const LoopEnergies e = loop_energies(a, Z, cfg);
  if (!e.control_series.converged)
    throw ConvergenceError("control: kappa series not converged at kappa_max", e.control);
  return e.control;
}

} // namespace vpscreen::wk
