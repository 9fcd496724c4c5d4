#include "vpscreen/loop.hpp"
#include "vpscreen/constants.hpp"
#include "vpscreen/errors.hpp"
#include "vpscreen/specfun.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace vpscreen::loop {

namespace {

using specfun::WhittakerParams;

cplx scaled_value(const specfun::ScaledComplex &v, double shift) {
  return v.mantissa * std::exp(v.log_scale + shift);
}

// Lagrange basis at t for the reference Gauss nodes.
struct Lagrange {
  std::vector<double> x, w;
  explicit Lagrange(int n) : x(quad::gauss_legendre(n).nodes), w(n) {
    for (int j = 0; j < n; ++j) {
      double p = 1.0;
      for (int m = 0; m < n; ++m)
        if (m != j)
          p *= x[j] - x[m];
      w[j] = 1.0 / p;
    }
  }
  void operator()(double t, double *out) const {
    double den = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double dx = t - x[j];
      if (dx == 0.0) {
        std::fill(out, out + x.size(), 0.0);
        out[j] = 1.0;
        return;
      }
      out[j] = w[j] / dx;
      den += out[j];
    }
    for (std::size_t j = 0; j < x.size(); ++j)
      out[j] /= den;
  }
};

// int_L^R l_m(y) exp(-mu (R - y)) dy (anchor at R) or exp(-mu (y - L)) (anchor at L)
// for all m, with y mapped to the reference interval by (c, hw).
void segment_weights(const Lagrange &lag, double L, double R, double c, double hw,
                     double mu, bool anchor_right, double *out) {
  const std::size_t n = lag.x.size();
  std::fill(out, out + n, 0.0);
  const double T = std::min(mu * (R - L), 40.0);
  if (!(T > 0.0))
    return;
  const int panels = std::max(1, static_cast<int>(std::ceil(T / 4.0)));
  const quad::QuadratureRule &g = quad::gauss_legendre(14);
  std::vector<double> l(n);
  for (int p = 0; p < panels; ++p) {
    const double t0 = T * p / panels, t1 = T * (p + 1) / panels;
    for (std::size_t q = 0; q < g.size(); ++q) {
      const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * g.nodes[q];
      const double wt = 0.5 * (t1 - t0) * g.weights[q] * std::exp(-t) / mu;
      const double y = anchor_right ? R - t / mu : L + t / mu;
      lag((y - c) / hw, l.data());
      for (std::size_t m = 0; m < n; ++m)
        out[m] += wt * l[m];
    }
  }
}

} // namespace

quad::RadialGrid make_loop_grid(const LoopGridParams &p) {
  if (!(p.r_lo > 0.0) || !(p.r_hi > p.r_lo) || p.per_decade < 1 || p.per_interval < 4)
    throw DomainError("make_loop_grid: invalid parameters");
  const int n = static_cast<int>(std::ceil(p.per_decade * std::log10(p.r_hi / p.r_lo)));
  // no interval at the origin: the irregular solutions are not integrable there
  std::vector<double> breaks;
  for (int i = 0; i <= n; ++i)
    breaks.push_back(p.r_lo * std::pow(p.r_hi / p.r_lo, static_cast<double>(i) / n));
  return quad::grid_from_breaks(breaks, p.per_interval);
}

cplx RadialSolutions::component(int i, int k, const quad::RadialGrid &g, std::size_t p,
                                std::size_t q) const {
  if (g.nodes[p] > g.nodes[q])
    return component(k, i, g, q, p);
  return c * a(i)[p] * b(k)[q] * std::exp(-d * (g.nodes[q] - g.nodes[p]));
}

RadialSolutions coulomb_solutions(double eps, int kappa, double Z,
                                  const quad::RadialGrid &grid) {
  if (kappa == 0)
    throw DomainError("coulomb_solutions: kappa must be non-zero");
  const double az0 = kAlpha * Z;
  if (std::abs(az0) >= std::abs(kappa))
    throw DomainError("coulomb_solutions: alpha Z must be below |kappa|");
  const cplx omega(0.0, eps);
  const double d = std::sqrt(1.0 + eps * eps);
  const double lam = std::sqrt(static_cast<double>(kappa) * kappa - az0 * az0);
  const cplx nu = az0 * omega / d;
  const double az = az0 / d;
  const double k = kappa;
  const cplx s1 = std::sqrt(1.0 + omega), s2 = std::sqrt(1.0 - omega);

  RadialSolutions s;
  s.kappa = kappa;
  s.d = d;
  s.c = -std::exp(specfun::log_gamma(lam - nu) - specfun::log_gamma(cplx(1.0 + 2.0 * lam))) /
        (4.0 * d * d);
  const std::size_t n = grid.size();
  s.a1.resize(n);
  s.a2.resize(n);
  s.b1.resize(n);
  s.b2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.nodes[i];
    const double z = 2.0 * d * x;
    const double lx = 1.5 * std::log(x);
    const cplx Mm = scaled_value(specfun::whittaker_M_log({nu - 0.5, lam, z}), -d * x - lx);
    const cplx Mp = scaled_value(specfun::whittaker_M_log({nu + 0.5, lam, z}), -d * x - lx);
    const cplx Wm = scaled_value(specfun::whittaker_W_log({nu - 0.5, lam, z}), d * x - lx);
    const cplx Wp = scaled_value(specfun::whittaker_W_log({nu + 0.5, lam, z}), d * x - lx);
    s.a1[i] = s1 * ((lam - nu) * Mm - (k - az) * Mp);
    s.a2[i] = s2 * ((lam - nu) * Mm + (k - az) * Mp);
    s.b1[i] = s1 * ((k + az) * Wm + Wp);
    s.b2[i] = s2 * ((k + az) * Wm - Wp);
  }
  return s;
}

RadialSolutions free_solutions(double eps, int kappa, const quad::RadialGrid &grid) {
  if (kappa == 0)
    throw DomainError("free_solutions: kappa must be non-zero");
  const cplx omega(0.0, eps);
  const double d = std::sqrt(1.0 + eps * eps);
  const int l = kappa < 0 ? -kappa - 1 : kappa;
  const int lb = kappa < 0 ? -kappa : kappa - 1;
  const cplx s1 = std::sqrt(1.0 + omega), s2 = std::sqrt(1.0 - omega);
  RadialSolutions s;
  s.kappa = kappa;
  s.d = d;
  s.c = 2.0 * d / kPi;
  const std::size_t n = grid.size();
  s.a1.resize(n);
  s.a2.resize(n);
  s.b1.resize(n);
  s.b2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = d * grid.nodes[i];
    const auto [il, kl] = specfun::bessel_ikl_scaled(l, x);
    const auto [ilb, klb] = specfun::bessel_ikl_scaled(lb, x);
    s.a1[i] = s1 * il;
    s.a2[i] = s2 * ilb;
    s.b1[i] = -s1 * kl;
    s.b2[i] = s2 * klb;
  }
  return s;
}

ExpConvolution::ExpConvolution(const quad::RadialGrid &grid, double mu)
    : m_grid(grid), m_mu(mu), m_n(grid.per_interval) {
  if (!(mu > 0.0))
    throw DomainError("ExpConvolution: mu must be positive");
  const Lagrange lag(m_n);
  const std::size_t segs = grid.n_intervals() * (m_n + 1);
  m_fw.assign(segs * m_n, 0.0);
  m_bw.assign(segs * m_n, 0.0);
  m_decay.assign(segs, 0.0);
  for (std::size_t k = 0; k < grid.n_intervals(); ++k) {
    const double a = grid.breaks[k], b = grid.breaks[k + 1];
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    for (int s = 0; s <= m_n; ++s) {
      const double L = s == 0 ? a : grid.nodes[k * m_n + s - 1];
      const double R = s == m_n ? b : grid.nodes[k * m_n + s];
      const std::size_t id = k * (m_n + 1) + s;
      m_decay[id] = std::exp(-mu * (R - L));
      segment_weights(lag, L, R, c, hw, mu, true, &m_fw[id * m_n]);
      segment_weights(lag, L, R, c, hw, mu, false, &m_bw[id * m_n]);
    }
  }
}

std::vector<cplx> ExpConvolution::forward(const std::vector<cplx> &h) const {
  if (h.size() != m_grid.size())
    throw DomainError("ExpConvolution: value count does not match the grid");
  std::vector<cplx> out(h.size());
  cplx carry = 0.0;
  for (std::size_t k = 0; k < m_grid.n_intervals(); ++k) {
    const cplx *hk = &h[k * m_n];
    for (int s = 0; s <= m_n; ++s) {
      const std::size_t id = k * (m_n + 1) + s;
      const double *w = &m_fw[id * m_n];
      cplx add = 0.0;
      for (int m = 0; m < m_n; ++m)
        add += w[m] * hk[m];
      carry = carry * m_decay[id] + add;
      if (s < m_n)
        out[k * m_n + s] = carry;
    }
  }
  return out;
}

std::vector<cplx> ExpConvolution::backward(const std::vector<cplx> &h) const {
  if (h.size() != m_grid.size())
    throw DomainError("ExpConvolution: value count does not match the grid");
  std::vector<cplx> out(h.size());
  cplx carry = 0.0;
  for (std::size_t kk = m_grid.n_intervals(); kk-- > 0;) {
    const cplx *hk = &h[kk * m_n];
    for (int s = m_n; s >= 0; --s) {
      const std::size_t id = kk * (m_n + 1) + s;
      const double *w = &m_bw[id * m_n];
      cplx add = 0.0;
      for (int m = 0; m < m_n; ++m)
        add += w[m] * hk[m];
      carry = carry * m_decay[id] + add;
      if (s > 0)
        out[kk * m_n + s - 1] = carry;
    }
  }
  return out;
}

std::vector<cplx> pair_apply(const ExpConvolution &conv, const RadialSolutions &X,
                             int i, int k, const RadialSolutions &Y, int j, int l,
                             const std::vector<cplx> &g) {
  const std::size_t n = g.size();
  // z > y: X^{ik}(y,z) = c a_i(y) b_k(z); z < y: c a_k(z) b_i(y)
  std::vector<cplx> hi(n), lo(n);
  for (std::size_t q = 0; q < n; ++q) {
    hi[q] = g[q] * X.b(k)[q] * Y.b(l)[q];
    lo[q] = g[q] * X.a(k)[q] * Y.a(l)[q];
  }
  const std::vector<cplx> above = conv.backward(hi), below = conv.forward(lo);
  const cplx cc = X.c * Y.c;
  std::vector<cplx> out(n);
  for (std::size_t q = 0; q < n; ++q)
    out[q] = cc * (X.a(i)[q] * Y.a(j)[q] * above[q] + X.b(i)[q] * Y.b(j)[q] * below[q]);
  return out;
}

std::vector<cplx> pair_apply_traced(const ExpConvolution &conv, const RadialSolutions &X,
                                    const RadialSolutions &Y, const std::vector<cplx> &g) {
  const std::size_t n = g.size();
  std::vector<cplx> hi(n), lo(n);
  for (std::size_t q = 0; q < n; ++q) {
    hi[q] = g[q] * (X.b1[q] * Y.b1[q] + X.b2[q] * Y.b2[q]);
    lo[q] = g[q] * (X.a1[q] * Y.a1[q] + X.a2[q] * Y.a2[q]);
  }
  const std::vector<cplx> above = conv.backward(hi), below = conv.forward(lo);
  const cplx cc = X.c * Y.c;
  std::vector<cplx> out(n);
  for (std::size_t q = 0; q < n; ++q)
    out[q] = cc * ((X.a1[q] * Y.a1[q] + X.a2[q] * Y.a2[q]) * above[q] +
                   (X.b1[q] * Y.b1[q] + X.b2[q] * Y.b2[q]) * below[q]);
  return out;
}

namespace {

using Spinor = std::array<cplx, 2>;

cplx spherical_harmonic(int l, int m, double ct, double phi) {
  const int am = std::abs(m);
  if (am > l)
    return 0.0;
  double norm = (2.0 * l + 1.0) / (4.0 * kPi);
  for (int i = l - am + 1; i <= l + am; ++i)
    norm /= i;
  // std::assoc_legendre omits the Condon-Shortley phase
  const double p = std::assoc_legendre(l, am, ct) * ((am % 2) ? -1.0 : 1.0);
  const cplx y = std::sqrt(norm) * p * std::exp(cplx(0.0, am * phi));
  if (m >= 0)
    return y;
  return ((am % 2) ? -1.0 : 1.0) * std::conj(y);
}

// Omega_{kappa, m} with m = mj2 / 2.
Spinor spinor_harmonic(int kappa, int mj2, double ct, double phi) {
  const int l = kappa < 0 ? -kappa - 1 : kappa;
  const double m = 0.5 * mj2;
  const double den = 2.0 * l + 1.0;
  double cu, cd; // coefficients of Y_{l, m-1/2} up and Y_{l, m+1/2} down
  if (kappa < 0) {
    cu = std::sqrt((l + m + 0.5) / den);
    cd = std::sqrt((l - m + 0.5) / den);
  } else {
    cu = -std::sqrt((l - m + 0.5) / den);
    cd = std::sqrt((l + m + 0.5) / den);
  }
  const int mu = (mj2 - 1) / 2, md = (mj2 + 1) / 2;
  return {cu * spherical_harmonic(l, mu, ct, phi), cd * spherical_harmonic(l, md, ct, phi)};
}

int two_j(int kappa) { return 2 * std::abs(kappa) - 1; }

// O(p, m'; q, m) for all m', m.
std::vector<cplx> magnetic_matrix(int p, int q) {
  const int jp = two_j(p), jq = two_j(q);
  const int lmax = std::max(std::abs(p), std::abs(q)) + 1;
  const quad::QuadratureRule &g = quad::gauss_legendre(lmax + 4);
  const int nphi = 2 * lmax + 6;
  std::vector<cplx> o((jp + 1) * (jq + 1), 0.0);
  for (std::size_t it = 0; it < g.size(); ++it) {
    const double ct = g.nodes[it], st = std::sqrt(1.0 - ct * ct);
    for (int ip = 0; ip < nphi; ++ip) {
      const double phi = 2.0 * kPi * ip / nphi;
      const double w = g.weights[it] * 2.0 * kPi / nphi;
      // v = n x z = (n_y, -n_x, 0); sigma.v
      const double vx = st * std::sin(phi), vy = -st * std::cos(phi);
      const cplx s01(vx, -vy), s10(vx, vy);
      for (int a = 0; a <= jp; ++a) {
        const Spinor L = spinor_harmonic(p, -jp + 2 * a, ct, phi);
        for (int b = 0; b <= jq; ++b) {
          const Spinor R = spinor_harmonic(q, -jq + 2 * b, ct, phi);
          o[a * (jq + 1) + b] +=
              w * (std::conj(L[0]) * s01 * R[1] + std::conj(L[1]) * s10 * R[0]);
        }
      }
    }
  }
  return o;
}

} // namespace

double magnetic_coefficient(int p, int q, int r, int t) {
  if (p == 0 || q == 0 || r == 0 || t == 0)
    throw DomainError("magnetic_coefficient: kappa must be non-zero");
  if (two_j(p) != two_j(t) || two_j(q) != two_j(r))
    throw DomainError("magnetic_coefficient: multiplets do not close");
  static std::mutex mtx;
  static std::map<std::tuple<int, int, int, int>, double> cache;
  const auto key = std::make_tuple(p, q, r, t);
  {
    std::lock_guard<std::mutex> lock(mtx);
    const auto it = cache.find(key);
    if (it != cache.end())
      return it->second;
  }
  const std::vector<cplx> o1 = magnetic_matrix(p, q), o2 = magnetic_matrix(r, t);
  const int jp = two_j(p) + 1, jq = two_j(q) + 1;
  cplx sum = 0.0;
  for (int a = 0; a < jp; ++a)
    for (int b = 0; b < jq; ++b)
      sum += o1[a * jq + b] * o2[b * jp + a];
  const double v = std::abs(sum.real()) < 1e-13 ? 0.0 : sum.real();
  std::lock_guard<std::mutex> lock(mtx);
  cache[key] = v;
  return v;
}

} // namespace vpscreen::loop
