#include "vpscreen/greens.hpp"
#include "vpscreen/constants.hpp"
#include "vpscreen/errors.hpp"
#include "vpscreen/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

namespace vpscreen::greens {

namespace {

using specfun::ScaledComplex;
using specfun::WhittakerParams;

double real_d(cplx omega) {
  const cplx d = std::sqrt(1.0 - omega * omega);
  if (std::abs(d.imag()) > 1e-14 * std::abs(d) || !(d.real() > 0.0))
    throw DomainError("greens: omega must be imaginary or real with |omega| < 1");
  return d.real();
}

void check_pole(cplx omega, int kappa, double Z) {
  if (omega.imag() != 0.0 || Z <= 0.0)
    return;
  const double az = kAlpha * Z;
  const double lam = std::sqrt(kappa * kappa - az * az);
  for (int nr = (kappa > 0 ? 1 : 0); nr < 200; ++nr) {
    const double n = nr + lam;
    const double e = 1.0 / std::sqrt(1.0 + az * az / (n * n));
    if (std::abs(omega.real() - e) < 1e-6)
      throw PoleError("coulomb_green: omega within 1e-6 of a bound level");
  }
}

cplx product(cplx log_q, const ScaledComplex &m, const ScaledComplex &w) {
  const cplx v = m.mantissa * w.mantissa * std::exp(log_q + m.log_scale + w.log_scale);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw RangeError("coulomb_green: Whittaker product out of range");
  return v;
}

GreenComponents transpose(const GreenComponents &g) {
  return {g.g11, g.g21, g.g12, g.g22};
}

GreenComponents reflected_ordered(cplx omega, int kappa, double x1, double x2,
                                  double Z) {
  GreenBlocks b = green_blocks(omega, kappa, x1, x2, Z);
  b.A = std::conj(b.A);
  b.B = std::conj(b.B);
  b.C = std::conj(b.C);
  b.D = std::conj(b.D);
  return components_from_blocks(b, omega, kappa, -kAlpha * Z / b.d);
}

} // namespace

GreenBlocks green_blocks(cplx omega, int kappa, double x1, double x2, double Z) {
  if (kappa == 0)
    throw DomainError("green_blocks: kappa must be non-zero");
  if (!(x1 > 0.0) || !(x2 >= x1))
    throw DomainError("green_blocks: need 0 < x1 <= x2");
  const double az = kAlpha * Z;
  if (std::abs(az) >= std::abs(kappa))
    throw DomainError("green_blocks: alpha Z must be below |kappa|");
  const double d = real_d(omega);
  const double lam = std::sqrt(kappa * kappa - az * az);
  const cplx nu = az * omega / d;
  const double z1 = 2.0 * d * x1, z2 = 2.0 * d * x2;

  const ScaledComplex Mm = specfun::whittaker_M_log(WhittakerParams{nu - 0.5, lam, z1});
  const ScaledComplex Mp = specfun::whittaker_M_log(WhittakerParams{nu + 0.5, lam, z1});
  const ScaledComplex Wm = specfun::whittaker_W_log(WhittakerParams{nu - 0.5, lam, z2});
  const ScaledComplex Wp = specfun::whittaker_W_log(WhittakerParams{nu + 0.5, lam, z2});
  const cplx lq = specfun::log_gamma(lam - nu) - specfun::log_gamma(1.0 + 2.0 * lam) -
                  std::log(4.0 * d * d) - 1.5 * std::log(x1 * x2);

  GreenBlocks b;
  b.d = d;
  b.lambda = lam;
  b.nu = nu;
  b.A = -(lam - nu) * product(lq, Mm, Wm);
  b.B = -(lam - nu) * product(lq, Mm, Wp);
  b.C = -product(lq, Mp, Wm);
  b.D = -product(lq, Mp, Wp);
  return b;
}

GreenComponents components_from_blocks(const GreenBlocks &b, cplx omega, int kappa,
                                       cplx az) {
  const double k = kappa;
  const cplx g = k * k - az * az;
  const cplx apd = b.A + b.D, amd = b.A - b.D;
  return {(1.0 + omega) * (k * amd + b.B - g * b.C + az * apd),
          b.d * (k * apd - b.B - g * b.C + az * amd),
          b.d * (k * apd + b.B + g * b.C + az * amd),
          (1.0 - omega) * (k * amd - b.B + g * b.C + az * apd)};
}

GreenComponents coulomb_green(cplx omega, int kappa, double x1, double x2, double Z) {
  check_pole(omega, kappa, Z);
  if (x1 > x2)
    return transpose(coulomb_green(omega, kappa, x2, x1, Z));
  const GreenBlocks b = green_blocks(omega, kappa, x1, x2, Z);
  return components_from_blocks(b, omega, kappa, kAlpha * Z / b.d);
}

GreenComponents free_green(cplx omega, int kappa, double x1, double x2) {
  if (kappa == 0)
    throw DomainError("free_green: kappa must be non-zero");
  if (!(x1 > 0.0) || !(x2 > 0.0))
    throw DomainError("free_green: radii must be positive");
  if (x1 > x2)
    return transpose(free_green(omega, kappa, x2, x1));
  const double d = real_d(omega);
  const int l = kappa < 0 ? -kappa - 1 : kappa;
  const int lb = kappa < 0 ? -kappa : kappa - 1;
  const double i_l = specfun::bessel_ikl_scaled(l, d * x1).first;
  const double i_lb = specfun::bessel_ikl_scaled(lb, d * x1).first;
  const double k_l = specfun::bessel_ikl_scaled(l, d * x2).second;
  const double k_lb = specfun::bessel_ikl_scaled(lb, d * x2).second;
  const double e = std::exp(-d * (x2 - x1));
  const double c = 2.0 * d / kPi;
  return {-c * (1.0 + omega) * i_l * k_l * e, cplx(c * d * i_l * k_lb * e),
          cplx(-c * d * i_lb * k_l * e), c * (1.0 - omega) * i_lb * k_lb * e};
}

GreenComponents reflected_green(cplx omega, int kappa, double x1, double x2, double Z) {
  if (omega.real() != 0.0)
    throw DomainError("reflected_green: omega must be purely imaginary");
  if (x1 > x2)
    return transpose(reflected_ordered(omega, kappa, x2, x1, Z));
  return reflected_ordered(omega, kappa, x1, x2, Z);
}

GreenSplit green_split(cplx omega, int kappa, double x1, double x2, double Z) {
  const GreenComponents p = coulomb_green(omega, kappa, x1, x2, Z);
  const GreenComponents m = reflected_green(omega, kappa, x1, x2, Z);
  GreenSplit s;
  s.even = {0.5 * (p.g11 + m.g11), 0.5 * (p.g12 + m.g12), 0.5 * (p.g21 + m.g21),
            0.5 * (p.g22 + m.g22)};
  s.odd = {0.5 * (p.g11 - m.g11), 0.5 * (p.g12 - m.g12), 0.5 * (p.g21 - m.g21),
           0.5 * (p.g22 - m.g22)};
  return s;
}

TraceSums trace_sums(double eps, int abs_kappa, double x, double y, double Z) {
  if (abs_kappa < 1)
    throw DomainError("trace_sums: |kappa| must be at least 1");
  if (x > y)
    std::swap(x, y);
  const cplx omega(0.0, eps);
  const GreenBlocks b = green_blocks(omega, abs_kappa, x, y, Z);
  const GreenBlocks p = green_blocks(omega, abs_kappa + 1, x, y, Z);
  const double k = abs_kappa;
  const double d = b.d.real();
  const double a = kAlpha * Z / d;
  const double g = k * k - a * a;
  const double gp = (k + 1) * (k + 1) - a * a;
  const cplx I(0.0, 1.0);
  const cplx A = b.A, B = b.B, C = b.C, D = b.D;

  const double s0 = std::real(8.0 * (k * k + a * a) * (A * A + D * D) +
                              16.0 * eps * eps * (k * k - a * a) * A * D +
                              8.0 * B * B + 8.0 * g * g * C * C +
                              16.0 * eps * eps * g * B * C +
                              16.0 * I * eps * a * (A + D) * (B - g * C));
  const double s1 =
      8.0 * d * d * std::real((k * k + a * a) * (A * A + D * D) - B * B - g * g * C * C);
  auto im_re = [](cplx u, cplx v) { return u.imag() * v.imag() - u.real() * v.real(); };
  const double s2 = 16.0 * d * d *
                    ((k * (k + 1) - a * a) * (im_re(A, p.A) + im_re(D, p.D)) +
                     im_re(B, p.B) + g * gp * im_re(C, p.C));
  return {s0, s1, s2};
}

TraceSums trace_sums_direct(double eps, int abs_kappa, double x, double y, double Z) {
  const cplx omega(0.0, eps);
  cplx s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (int sg : {-1, 1}) {
    const int kap = sg * abs_kappa;
    const int kp = -sg * (abs_kappa + 1);
    const GreenComponents g = coulomb_green(omega, kap, x, y, Z);
    const GreenComponents h = coulomb_green(omega, kp, x, y, Z);
    s0 += g.g11 * g.g11 + g.g12 * g.g12 + g.g21 * g.g21 + g.g22 * g.g22;
    s1 += 2.0 * (g.g11 * g.g22 + g.g12 * g.g21);
    s2 += g.g11 * h.g22 + g.g22 * h.g11 + g.g12 * h.g21 + g.g21 * h.g12;
  }
  return {s0.real(), s1.real(), 2.0 * s2.real()};
}

FreeKernel free_propagator_3d(cplx omega, double x) {
  if (!(x > 0.0))
    throw DomainError("free_propagator_3d: x must be positive");
  const cplx d = std::sqrt(1.0 - omega * omega);
  const cplx e = std::exp(-d * x) / (4.0 * kPi);
  const cplx phi = e / x;
  return {-(d * x + 1.0) * e / (x * x * x), -phi, -omega * phi};
}

FreeKernel free_green_domega(cplx omega, double x) {
  if (omega == 0.0)
    throw DomainError("free_green_domega: omega must be non-zero");
  if (!(x > 0.0))
    throw DomainError("free_green_domega: x must be positive");
  const cplx d = std::sqrt(1.0 - omega * omega);
  const cplx e = std::exp(-d * x) / (4.0 * kPi) * (omega / d);
  return {-(d / x) * e, -e, -(omega + d / (omega * x)) * e};
}

} // namespace vpscreen::greens
