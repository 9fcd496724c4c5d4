#include "vpscreen/nucleus.hpp"
#include "vpscreen/constants.hpp"
#include "vpscreen/errors.hpp"
#include "vpscreen/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace vpscreen::nucleus {

namespace {

// -Li_n(-e^x) for x > 0, via the inversion formulas for n = 3 and 5.
double neg_li_neg_exp(int n, double x) {
  double tail = 0.0; // -Li_n(-e^{-x}) = sum_k (-1)^{k+1} e^{-kx} / k^n
  const double q = std::exp(-x);
  double qk = 1.0;
  for (int k = 1; k < 2000; ++k) {
    qk *= q;
    const double t = qk / std::pow(static_cast<double>(k), n);
    tail += (k % 2 == 1) ? t : -t;
    if (t < 1e-18 * std::abs(tail) || qk == 0.0)
      break;
  }
  const double pi2 = kPi * kPi;
  if (n == 3)
    return x * x * x / 6.0 + pi2 * x / 6.0 + tail;
  if (n == 5)
    return std::pow(x, 5) / 120.0 + pi2 * x * x * x / 36.0 + 7.0 * pi2 * pi2 * x / 360.0 +
           tail;
  throw DomainError("neg_li_neg_exp: unsupported order");
}

double fermi_rms(double c, double a) {
  const double x = c / a;
  return std::sqrt(12.0 * a * a * neg_li_neg_exp(5, x) / neg_li_neg_exp(3, x));
}

struct FermiCompton {
  double c, a, rho0;
};

FermiCompton fermi_params(const NuclearModel &m) {
  const double c = fm_to_compton(m.c_fm), a = fm_to_compton(m.a_fm);
  const double norm = 4.0 * kPi * 2.0 * a * a * a * neg_li_neg_exp(3, c / a);
  return {c, a, 1.0 / norm};
}

double fermi_shape(const FermiCompton &f, double r) {
  const double e = (r - f.c) / f.a;
  if (e > 700.0)
    return 0.0;
  return f.rho0 / (1.0 + std::exp(e));
}

// Integral of rho(s) s^power over [lo, hi], split at the Fermi surface.
double fermi_moment(const FermiCompton &f, int power, double lo, double hi) {
  if (hi <= lo)
    return 0.0;
  std::vector<double> b{lo, hi};
  for (double t : {-30.0, -6.0, 0.0, 6.0, 40.0}) {
    const double p = f.c + t * f.a;
    if (p > lo && p < hi)
      b.push_back(p);
  }
  std::sort(b.begin(), b.end());
  const quad::QuadratureRule g = quad::gauss_legendre(24);
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < b.size(); ++k) {
    const double c = 0.5 * (b[k] + b[k + 1]), hw = 0.5 * (b[k + 1] - b[k]);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double s = c + hw * g.nodes[i];
      sum += hw * g.weights[i] * fermi_shape(f, s) * std::pow(s, power);
    }
  }
  return sum;
}

const std::map<int, double> &rms_table() {
  static const std::map<int, double> t = {
      {20, 3.478}, {30, 3.928}, {32, 4.072}, {40, 4.270}, {50, 4.655},
      {54, 4.787}, {60, 4.914}, {66, 5.224}, {70, 5.317}, {74, 5.373},
      {80, 5.467}, {83, 5.533}, {90, 5.645}, {92, 5.860}, {100, 5.886}};
  return t;
}

} // namespace

NuclearModel point_nucleus(double Z) {
  NuclearModel m;
  m.Z = Z;
  return m;
}

NuclearModel shell_nucleus(double Z, double R_fm) {
  if (!(R_fm > 0.0))
    throw DomainError("shell_nucleus: radius must be positive");
  NuclearModel m;
  m.Z = Z;
  m.shape = Shape::Shell;
  m.R_fm = R_fm;
  m.rms_fm = R_fm;
  return m;
}

NuclearModel fermi_from_rms(double Z, double rms_fm, double skin_fm) {
  if (!(rms_fm > 0.0) || !(skin_fm > 0.0))
    throw DomainError("fermi_from_rms: rms and skin thickness must be positive");
  const double a = skin_fm / (4.0 * std::log(3.0));
  double lo = 1e-6 * a, hi = 2.0 * rms_fm;
  if (fermi_rms(lo, a) >= rms_fm)
    throw DomainError("fermi_from_rms: rms radius too small for the skin thickness");
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (fermi_rms(mid, a) < rms_fm ? lo : hi) = mid;
  }
  NuclearModel m;
  m.Z = Z;
  m.shape = Shape::Fermi;
  m.c_fm = 0.5 * (lo + hi);
  m.a_fm = a;
  m.rms_fm = rms_fm;
  return m;
}

NuclearModel make_model(double Z, double rms_fm, Shape shape) {
  switch (shape) {
  case Shape::Point:
    return point_nucleus(Z);
  case Shape::Shell:
    return shell_nucleus(Z, rms_fm);
  case Shape::Fermi:
    return fermi_from_rms(Z, rms_fm);
  }
  throw DomainError("make_model: unknown shape");
}

double rho(const NuclearModel &m, double r) {
  if (r < 0.0)
    throw DomainError("rho: r must be non-negative");
  switch (m.shape) {
  case Shape::Point:
    return r == 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  case Shape::Shell:
    return r == fm_to_compton(m.R_fm) ? std::numeric_limits<double>::infinity() : 0.0;
  case Shape::Fermi:
    return fermi_shape(fermi_params(m), r);
  }
  return 0.0;
}

double potential(const NuclearModel &m, double r) {
  if (r < 0.0)
    throw DomainError("potential: r must be non-negative");
  const double az = kAlpha * m.Z;
  switch (m.shape) {
  case Shape::Point:
    return r > 0.0 ? -az / r : -std::numeric_limits<double>::infinity();
  case Shape::Shell: {
    const double R = fm_to_compton(m.R_fm);
    return -az / std::max(r, R);
  }
  case Shape::Fermi: {
    const FermiCompton f = fermi_params(m);
    const double edge = f.c + 40.0 * f.a;
    if (r >= edge)
      return -az / r;
    const double inner = r > 0.0 ? fermi_moment(f, 2, 0.0, r) / r : 0.0;
    const double outer = fermi_moment(f, 1, r, edge);
    return -az * 4.0 * kPi * (inner + outer);
  }
  }
  return 0.0;
}

double second_moment(const NuclearModel &m) {
  switch (m.shape) {
  case Shape::Point:
    return 0.0;
  case Shape::Shell: {
    const double R = fm_to_compton(m.R_fm);
    return R * R;
  }
  case Shape::Fermi: {
    const FermiCompton f = fermi_params(m);
    return 4.0 * kPi * fermi_moment(f, 4, 0.0, f.c + 40.0 * f.a);
  }
  }
  return 0.0;
}

double normalization(const NuclearModel &m) {
  if (m.shape != Shape::Fermi)
    return 1.0;
  const FermiCompton f = fermi_params(m);
  return 4.0 * kPi * fermi_moment(f, 2, 0.0, f.c + 40.0 * f.a);
}

double outer_radius(const NuclearModel &m) {
  switch (m.shape) {
  case Shape::Point:
    return 0.0;
  case Shape::Shell:
    return fm_to_compton(m.R_fm);
  case Shape::Fermi:
    return fm_to_compton(m.c_fm + 40.0 * m.a_fm);
  }
  return 0.0;
}

double default_rms_fm(int Z) {
  const auto &t = rms_table();
  const auto it = t.find(Z);
  if (it == t.end())
    throw DomainError("default_rms_fm: no tabulated radius for this Z");
  return it->second;
}

const std::vector<int> &tabulated_charges() {
  static const std::vector<int> z = [] {
    std::vector<int> v;
    for (const auto &[k, _] : rms_table())
      v.push_back(k);
    return v;
  }();
  return z;
}

} // namespace vpscreen::nucleus
