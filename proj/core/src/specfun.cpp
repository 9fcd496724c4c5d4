#include "vpscreen/specfun.hpp"
#include "vpscreen/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace vpscreen::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLnSqrt2Pi = 0.91893853320467274178;
constexpr double kTiny = 1.0e-17;

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0};

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// ln sin(pi z), stable for large |Im z|.
cplx log_sin_pi(cplx z) {
  const cplx I(0.0, 1.0);
  if (std::abs(z.imag()) < 20.0)
    return std::log(std::sin(kPi * z));
  if (z.imag() > 0.0) {
    // sin(pi z) = exp(-i pi z) (1 - exp(2 i pi z)) / (-2i)
    return -I * kPi * z + std::log(1.0 - std::exp(2.0 * I * kPi * z)) -
           std::log(cplx(0.0, -2.0));
  }
  return I * kPi * z + std::log(1.0 - std::exp(-2.0 * I * kPi * z)) -
         std::log(cplx(0.0, 2.0));
}

ScaledComplex from_log(cplx log_value, cplx mantissa = 1.0) {
  return {mantissa * std::exp(cplx(0.0, log_value.imag())), log_value.real()};
}

ScaledComplex normalize(ScaledComplex s) {
  const double m = std::abs(s.mantissa);
  if (m == 0.0 || !std::isfinite(m))
    return s;
  const double lm = std::log(m);
  return {s.mantissa / m, s.log_scale + lm};
}

// Power series for 1F1 with running rescale.
ScaledComplex kummer_series(cplx a, cplx b, double z) {
  cplx sum = 1.0, term = 1.0;
  double scale = 0.0;
  const double big = 1.0e200;
  const int max_terms = 40000 + static_cast<int>(4.0 * std::abs(z));
  for (int n = 0; n < max_terms; ++n) {
    const cplx an = a + static_cast<double>(n);
    if (an == 0.0)
      return normalize({sum, scale}); // terminating polynomial
    term *= an / (b + static_cast<double>(n)) * (z / (n + 1.0));
    sum += term;
    if (std::abs(sum) > big) {
      sum /= big;
      term /= big;
      scale += std::log(big);
    }
    const bool decreasing =
        std::abs((a + (n + 1.0)) * z) < 0.8 * std::abs((b + (n + 1.0)) * (n + 2.0));
    if (decreasing && std::abs(term) <= kTiny * std::abs(sum))
      return normalize({sum, scale});
  }
  throw ConvergenceError("hyperg_1f1: series did not converge", std::abs(sum));
}

// Large-z expansion of 1F1, dominant exponential only. Returns false if the
// asymptotic series starts diverging before reaching machine precision.
bool kummer_asymptotic(cplx a, cplx b, double z, ScaledComplex &out) {
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b))
    return false;
  cplx sum = 1.0, term = 1.0;
  double prev = 1.0;
  bool converged = false;
  for (int n = 0; n < 400; ++n) {
    term *= (b - a + static_cast<double>(n)) * (1.0 - a + static_cast<double>(n)) /
            ((n + 1.0) * z);
    const double t = std::abs(term);
    if (n > 2 && t > prev)
      return false;
    sum += term;
    prev = t;
    if (t <= kTiny * std::abs(sum)) {
      converged = true;
      break;
    }
  }
  if (!converged)
    return false;
  const cplx lg = log_gamma(b) - log_gamma(a) + z + (a - b) * std::log(z);
  out = normalize(from_log(lg, sum));
  return true;
}

bool tricomi_asymptotic(cplx a, cplx b, double z, ScaledComplex &out) {
  cplx sum = 1.0, term = 1.0;
  double prev = 1.0;
  bool converged = false;
  for (int n = 0; n < 400; ++n) {
    term *= -(a + static_cast<double>(n)) * (a - b + (n + 1.0)) / ((n + 1.0) * z);
    const double t = std::abs(term);
    if (n > 2 && t > prev)
      return false;
    sum += term;
    prev = t;
    if (t <= kTiny * std::abs(sum)) {
      converged = true;
      break;
    }
  }
  if (!converged)
    return false;
  out = normalize(from_log(-a * std::log(z), sum));
  return true;
}

// U(a,b,z) = 1/Gamma(a) int_0^inf exp(-z t) t^(a-1) (1+t)^(b-a-1) dt, Re a > 0,
// by exp-sinh trapezoid t = tc exp(pi/2 sinh s) with step halving.
ScaledComplex tricomi_integral(cplx a, cplx b, double z) {
  const double ra = a.real();
  double tc;
  if (z >= 1.0)
    tc = std::max(ra, 0.5) / z;
  else
    tc = std::max({b.real() - 1.0, ra, 0.5}) / z;
  const double ltc = std::log(tc);
  const cplx am1 = a - 1.0;
  const cplx bam1 = b - a - 1.0;

  auto log_integrand = [&](double s) -> cplx {
    const double v = ltc + 0.5 * kPi * std::sinh(s); // ln t
    const double t = std::exp(v);
    const double l1p = std::log1p(t);
    // f(t) dt with dt = t (pi/2) cosh s ds
    return -z * t + am1 * v + bam1 * l1p + v + std::log(0.5 * kPi * std::cosh(s));
  };

  const double ref = log_integrand(0.0).real();
  const double cutoff = 45.0;

  // Determine the truncation window once, on a coarse scan.
  auto edge = [&](double dir) {
    double s = 0.0;
    int below = 0;
    while (std::abs(s) < 8.0) {
      s += dir * 0.125;
      if (log_integrand(s).real() < ref - cutoff) {
        if (++below >= 2)
          break;
      } else {
        below = 0;
      }
    }
    return s;
  };
  const double s_lo = edge(-1.0);
  const double s_hi = edge(+1.0);

  // Track the peak so we can sum in a safe scale.
  double peak = ref;
  for (double s = s_lo; s <= s_hi; s += 0.125)
    peak = std::max(peak, log_integrand(s).real());

  auto trapezoid = [&](double h) {
    cplx sum = 0.0;
    const int n_lo = static_cast<int>(std::floor(s_lo / h));
    const int n_hi = static_cast<int>(std::ceil(s_hi / h));
    for (int n = n_lo; n <= n_hi; ++n)
      sum += std::exp(log_integrand(n * h) - peak);
    return sum * h;
  };

  double h = 0.125;
  cplx prev = trapezoid(h);
  for (int level = 0; level < 6; ++level) {
    h *= 0.5;
    const cplx cur = trapezoid(h);
    if (std::abs(cur - prev) <= 1.0e-14 * std::abs(cur)) {
      ScaledComplex r{cur, peak};
      return normalize(r * from_log(-log_gamma(a)));
    }
    prev = cur;
  }
  throw ConvergenceError("hyperg_u: integral representation did not converge",
                         std::abs(prev));
}

} // namespace

cplx ScaledComplex::value() const {
  if (mantissa == 0.0)
    return 0.0;
  const cplx v = mantissa * std::exp(log_scale);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw RangeError("scaled value outside double range");
  return v;
}

cplx log_gamma(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("log_gamma: non-finite argument");
  if (is_nonpositive_integer(z))
    throw DomainError("log_gamma: pole at non-positive integer");
  if (z.real() < 0.5)
    return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);

  cplx shift = 0.0;
  while (z.real() < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const cplx zinv = 1.0 / z;
  const cplx zinv2 = zinv * zinv;
  cplx series = 0.0;
  cplx p = zinv;
  for (double c : kStirling) {
    series += c * p;
    p *= zinv2;
  }
  return (z - 0.5) * std::log(z) - z + kLnSqrt2Pi + series - shift;
}

ScaledComplex hyperg_1f1(cplx a, cplx b, double z) {
  if (is_nonpositive_integer(b))
    throw DomainError("hyperg_1f1: b is a non-positive integer");
  if (z > 40.0) {
    ScaledComplex r;
    if (kummer_asymptotic(a, b, z, r))
      return r;
  }
  return kummer_series(a, b, z);
}

ScaledComplex hyperg_u(cplx a, cplx b, double z) {
  if (!(z > 0.0))
    throw DomainError("hyperg_u: z must be positive");
  if (z > 40.0) {
    ScaledComplex r;
    if (tricomi_asymptotic(a, b, z, r))
      return r;
  }
  // below Re a = 1 the integrand decays too slowly at t -> 0 for the
  // truncated quadrature
  if (a.real() >= 1.0)
    return tricomi_integral(a, b, z);
  // Downward recurrence in a from two values with Re a >= 1:
  // U(a-1) = (2a - b + z) U(a) - a (a - b + 1) U(a+1).
  const int n = static_cast<int>(std::ceil(1.0 - a.real()));
  cplx a_top = a + static_cast<double>(n);
  const ScaledComplex u0 = tricomi_integral(a_top, b, z);
  const ScaledComplex u1 = tricomi_integral(a_top + 1.0, b, z);
  const double s = u0.log_scale;
  cplx cur = u0.mantissa;
  cplx up = u1.mantissa * std::exp(u1.log_scale - s);
  for (int i = 0; i < n; ++i) {
    const cplx down = (2.0 * a_top - b + z) * cur - a_top * (a_top - b + 1.0) * up;
    up = cur;
    cur = down;
    a_top -= 1.0;
  }
  return normalize({cur, s});
}

namespace {

void check_params(const WhittakerParams &p) {
  if (!(p.z > 0.0) || !std::isfinite(p.z))
    throw DomainError("whittaker: z must be positive and finite");
}

} // namespace

ScaledComplex whittaker_M_log(const WhittakerParams &p) {
  check_params(p);
  const cplx a = p.mu - p.k + 0.5;
  const cplx b = 1.0 + 2.0 * p.mu;
  const ScaledComplex f = hyperg_1f1(a, b, p.z);
  return normalize(f * from_log(-0.5 * p.z + (p.mu + 0.5) * std::log(p.z)));
}

ScaledComplex whittaker_W_log(const WhittakerParams &p) {
  check_params(p);
  const cplx a = p.mu - p.k + 0.5;
  const cplx b = 1.0 + 2.0 * p.mu;
  const ScaledComplex u = hyperg_u(a, b, p.z);
  return normalize(u * from_log(-0.5 * p.z + (p.mu + 0.5) * std::log(p.z)));
}

cplx whittaker_M(const WhittakerParams &p) { return whittaker_M_log(p).value(); }
cplx whittaker_W(const WhittakerParams &p) { return whittaker_W_log(p).value(); }

cplx whittaker_M_scaled(const WhittakerParams &p) {
  ScaledComplex s = whittaker_M_log(p);
  s.log_scale -= 0.5 * p.z;
  return s.value();
}

cplx whittaker_W_scaled(const WhittakerParams &p) {
  ScaledComplex s = whittaker_W_log(p);
  s.log_scale += 0.5 * p.z;
  return s.value();
}

std::pair<double, double> bessel_ikl_scaled(int l, double x) {
  if (!(x > 0.0))
    throw DomainError("bessel_ikl: x must be positive");
  if (l < 0)
    throw DomainError("bessel_ikl: l must be non-negative");

  // k_l: finite closed form, all terms positive.
  double ksum = 0.0;
  {
    double c = 1.0; // (l+k)! / (k! (l-k)! (2x)^k)
    for (int k = 0; k <= l; ++k) {
      ksum += c;
      c *= static_cast<double>((l + k + 1) * (l - k)) / ((k + 1.0) * 2.0 * x);
    }
  }
  const double kl = 0.5 * kPi / x * ksum;

  double il;
  if (x <= 30.0) {
    // x^l/(2l+1)!! sum_n (x^2/2)^n / (n! (2l+3)(2l+5)...(2l+2n+1))
    double pref = 1.0;
    for (int j = 1; j <= l; ++j)
      pref *= x / (2.0 * j + 1.0);
    double sum = 1.0, term = 1.0;
    const double h = 0.5 * x * x;
    for (int n = 1; n < 500; ++n) {
      term *= h / (n * (2.0 * l + 2.0 * n + 1.0));
      sum += term;
      if (term < 1.0e-17 * sum)
        break;
    }
    il = pref * sum * std::exp(-x);
  } else {
    double s1 = 0.0, s2 = 0.0, c = 1.0;
    for (int k = 0; k <= l; ++k) {
      s1 += (k % 2 == 0 ? c : -c);
      s2 += c;
      c *= static_cast<double>((l + k + 1) * (l - k)) / ((k + 1.0) * 2.0 * x);
    }
    const double sign = (l % 2 == 0) ? -1.0 : 1.0; // (-1)^(l+1)
    il = 0.5 / x * (s1 + sign * std::exp(-2.0 * x) * s2);
  }
  return {il, kl};
}

std::pair<double, double> bessel_ikl(int l, double x) {
  const auto [is, ks] = bessel_ikl_scaled(l, x);
  return {is * std::exp(x), ks * std::exp(-x)};
}

} // namespace vpscreen::specfun
