#include "vpscreen/uehling.hpp"
#include "vpscreen/constants.hpp"
#include "vpscreen/errors.hpp"
#include "vpscreen/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace vpscreen::uehling {

namespace {

constexpr double kChiPrefactor = 2.0 * kAlpha / (3.0 * kPi);

// E_n(s) for n_lo <= n <= n_hi in one pass over the t = cosh u nodes.
void moments_direct(double s, int n_lo, int n_hi, double *out) {
  if (!(s > 0.0))
    throw DomainError("uehling moment: s must be positive");
  // integrand carries exp(-2 s (cosh u - 1)); cut where that is below e^-42
  const double u_max = std::acosh(1.0 + 42.0 / s) + 1.0;
  const quad::QuadratureRule g = quad::gauss_legendre(24);
  const int panels = std::max(4, static_cast<int>(std::ceil(u_max / 0.75)));
  const double w = u_max / panels;
  const int m = n_hi - n_lo + 1;
  std::fill(out, out + m, 0.0);
  for (int p = 0; p < panels; ++p) {
    const double c0 = (p + 0.5) * w;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double u = c0 + 0.5 * w * g.nodes[i];
      const double ch = std::cosh(u), sh = std::sinh(u);
      const double shh = std::sinh(0.5 * u);
      double f = 0.5 * w * g.weights[i] * (1.0 + 0.5 / (ch * ch)) * sh * sh /
                 (ch * ch) * std::pow(ch, -n_lo) * std::exp(-4.0 * s * shh * shh);
      for (int k = 0; k < m; ++k) {
        out[k] += f;
        f /= ch;
      }
    }
  }
  const double e = std::exp(-2.0 * s);
  for (int k = 0; k < m; ++k)
    out[k] *= e;
}

// Table of G_n(s) = E_n(s) exp(2s) and its s-derivative on a log grid.
struct MomentTable {
  static constexpr double s_lo = 1e-9, s_hi = 100.0;
  static constexpr int per_decade = 500;
  std::vector<double> s;
  std::array<std::vector<double>, 4> g, dg;
  double log_lo{}, step{};

  MomentTable() {
    const int n = static_cast<int>(per_decade * std::log10(s_hi / s_lo)) + 1;
    log_lo = std::log(s_lo);
    step = std::log(s_hi / s_lo) / (n - 1);
    s.resize(n);
    for (auto &v : g)
      v.resize(n);
    for (auto &v : dg)
      v.resize(n);
    for (int i = 0; i < n; ++i) {
      s[i] = std::exp(log_lo + i * step);
      const double e2 = std::exp(2.0 * s[i]);
      double e[5];
      moments_direct(s[i], -1, 3, e);
      double prev = e[0];
      for (int k = 0; k < 4; ++k) {
        const double ek = e[k + 1];
        g[k][i] = ek * e2;
        dg[k][i] = 2.0 * (ek - prev) * e2;
        prev = ek;
      }
    }
  }

  double eval(int k, double x) const {
    int i = static_cast<int>((std::log(x) - log_lo) / step);
    i = std::clamp(i, 0, static_cast<int>(s.size()) - 2);
    const double h = s[i + 1] - s[i];
    const double t = (x - s[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    const double v = h00 * g[k][i] + h10 * h * dg[k][i] + h01 * g[k][i + 1] +
                     h11 * h * dg[k][i + 1];
    return v * std::exp(-2.0 * x);
  }
};

const MomentTable &moment_table() {
  static const MomentTable t;
  return t;
}

} // namespace

double moment_direct(int n, double s) {
  double v;
  moments_direct(s, n, n, &v);
  return v;
}

double moment(int n, double s) {
  if (!(s > 0.0))
    throw DomainError("uehling moment: s must be positive");
  if (n < 0 || n > 3 || s < MomentTable::s_lo || s > MomentTable::s_hi)
    return moment_direct(n, s);
  return moment_table().eval(n, s);
}

double twobody_kernel(double s) {
  if (!(s > 0.0))
    throw DomainError("twobody_kernel: s must be positive");
  return kChiPrefactor * moment(0, s);
}

double uehling_point(double r, double Z) {
  if (!(r > 0.0))
    throw DomainError("uehling_point: r must be positive");
  return -kAlpha * Z / r * twobody_kernel(r);
}

double uehling_approx(const nucleus::NuclearModel &m, double r) {
  if (m.shape == nucleus::Shape::Point)
    return uehling_point(r, m.Z);
  if (!(r > 0.0))
    throw DomainError("uehling_approx: r must be positive");
  return nucleus::potential(m, r) * twobody_kernel(r);
}

double uehling_extended(const nucleus::NuclearModel &m, double r) {
  using nucleus::Shape;
  if (m.shape == Shape::Point)
    return uehling_point(r, m.Z);
  if (r < 0.0)
    throw DomainError("uehling_extended: r must be non-negative");
  const double pref = -kAlpha * m.Z * kChiPrefactor * kPi;

  if (m.shape == Shape::Shell) {
    // rho = delta(r' - R) / (4 pi R^2)
    const double R = fm_to_compton(m.R_fm);
    if (r == 0.0)
      return pref * 4.0 * moment(0, R) / (4.0 * kPi * R);
    const double diff = std::abs(r - R);
    const double e1 = diff > 0.0 ? moment(1, diff) : moment(1, 1e-12);
    return pref / r * (e1 - moment(1, r + R)) / (4.0 * kPi * R);
  }

  const double r_out = nucleus::outer_radius(m);
  const double tol = 1e-12;
  // deep inside, the difference below cancels to r/r' and the potential is
  // flat to (r/r_out)^2; use its value at the centre
  if (r < 1e-4 * r_out) {
    auto f = [&](double rp) { return rp * nucleus::rho(m, rp) * 4.0 * moment(0, rp); };
    return pref * quad::integrate_adaptive(f, 0.0, r_out, tol, 1e-300).value;
  }
  auto f = [&](double rp) {
    const double diff = std::abs(r - rp);
    if (diff <= 0.0)
      return 0.0;
    return rp * nucleus::rho(m, rp) * (moment(1, diff) - moment(1, r + rp));
  };
  double sum = 0.0;
  if (r < r_out) {
    sum += quad::integrate_adaptive(f, 0.0, r, tol, 1e-300).value;
    sum += quad::integrate_adaptive(f, r, r_out, tol, 1e-300).value;
  } else {
    sum += quad::integrate_adaptive(f, 0.0, r_out, tol, 1e-300).value;
  }
  return pref / r * sum;
}

PotentialTable::PotentialTable(const std::function<double(double)> &u, double r_min,
                               double r_max, int n_points,
                               std::function<double(double)> tail)
    : m_tail(std::move(tail)) {
  if (!(r_min > 0.0) || !(r_max > r_min) || n_points < 4)
    throw DomainError("PotentialTable: invalid grid");
  const int n = n_points;
  m_r.resize(n);
  m_u.resize(n);
  m_x.resize(n);
  m_y.resize(n);
  const double h = std::log(r_max / r_min) / (n - 1);
  for (int i = 0; i < n; ++i) {
    m_x[i] = std::log(r_min) + i * h;
    m_r[i] = std::exp(m_x[i]);
    m_u[i] = u(m_r[i]);
  }
  // Single-signed data are splined as ln|r U| + 2r, which removes the
  // exp(-2r) fall-off of a loop with two electron lines.
  m_sign = m_u[0] > 0.0 ? 1.0 : -1.0;
  m_log = std::all_of(m_u.begin(), m_u.end(),
                      [this](double v) { return v * m_sign > 0.0; });
  for (int i = 0; i < n; ++i)
    m_y[i] = m_log ? std::log(m_sign * m_r[i] * m_u[i]) + 2.0 * m_r[i] : m_r[i] * m_u[i];
  // natural cubic spline, uniform spacing
  m_y2.assign(n, 0.0);
  std::vector<double> c(n, 0.0);
  for (int i = 1; i < n - 1; ++i) {
    const double p = 0.5 * m_y2[i - 1] + 2.0;
    m_y2[i] = -0.5 / p;
    const double rhs = (m_y[i + 1] - 2.0 * m_y[i] + m_y[i - 1]) / h;
    c[i] = (6.0 * rhs / (2.0 * h) - 0.5 * c[i - 1]) / p;
  }
  m_y2[n - 1] = 0.0;
  for (int i = n - 2; i >= 0; --i)
    m_y2[i] = m_y2[i] * m_y2[i + 1] + c[i];
}

double PotentialTable::operator()(double r) const {
  if (m_r.empty())
    throw DomainError("PotentialTable: empty table");
  if (r >= m_r.back()) {
    if (m_tail)
      return m_tail(r);
    return m_u.back() * m_r.back() / r;
  }
  if (r <= m_r.front())
    return m_u.front();
  const double h = m_x[1] - m_x[0];
  const double x = std::log(r);
  int i = static_cast<int>((x - m_x[0]) / h);
  i = std::clamp(i, 0, static_cast<int>(m_x.size()) - 2);
  const double a = (m_x[i + 1] - x) / h, b = 1.0 - a;
  const double y = a * m_y[i] + b * m_y[i + 1] +
                   ((a * a * a - a) * m_y2[i] + (b * b * b - b) * m_y2[i + 1]) * h * h / 6.0;
  if (m_log)
    return m_sign * std::exp(y - 2.0 * r) / r;
  return y / r;
}

void PotentialTable::dump(std::ostream &os) const {
  os.precision(17);
  for (std::size_t i = 0; i < m_r.size(); ++i)
    os << m_r[i] << ' ' << m_u[i] << '\n';
}

PotentialTable extended_table(const nucleus::NuclearModel &m, int n_points) {
  const double Z = m.Z;
  return PotentialTable([&m](double r) { return uehling_extended(m, r); }, 1e-5, 20.0,
                        n_points, [Z](double r) { return uehling_point(r, Z); });
}

} // namespace vpscreen::uehling
