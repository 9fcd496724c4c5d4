#pragma once
#include <complex>
#include <utility>

// Special functions for the analytic Coulomb-Dirac Green function:
// complex log-gamma, Whittaker M and W with complex indices, and modified
// spherical Bessel functions for the free propagator.

namespace vpscreen::specfun {

using cplx = std::complex<double>;

//! A complex number stored as mantissa * exp(log_scale); used where the
//! magnitude may leave double range while products stay representable.
struct ScaledComplex {
  cplx mantissa{};
  double log_scale{0.0};

  cplx value() const;
  ScaledComplex operator*(const ScaledComplex &o) const {
    return {mantissa * o.mantissa, log_scale + o.log_scale};
  }
};

//! Parameters of M_{k,mu}(z) and W_{k,mu}(z); z is real and positive.
struct WhittakerParams {
  cplx k;
  cplx mu;
  double z;
};

//! ln Gamma(z). Real on the positive axis; for Re z < 0.5 the imaginary part
//! may differ from the principal continuation by a multiple of 2 pi.
//! Throws DomainError at the poles z = 0, -1, -2, ...
cplx log_gamma(cplx z);

//! Kummer's confluent hypergeometric function 1F1(a; b; z) for real z,
//! returned in log-scaled form.
ScaledComplex hyperg_1f1(cplx a, cplx b, double z);

//! Tricomi's confluent hypergeometric function U(a, b, z) for real z > 0.
ScaledComplex hyperg_u(cplx a, cplx b, double z);

//! Regular Whittaker function M_{k,mu}(z).
//! Throws RangeError if the value cannot be represented as a double.
cplx whittaker_M(const WhittakerParams &p);

//! Decaying Whittaker function W_{k,mu}(z).
cplx whittaker_W(const WhittakerParams &p);

//! M and W in log-scaled form; never overflow for z within double range.
ScaledComplex whittaker_M_log(const WhittakerParams &p);
ScaledComplex whittaker_W_log(const WhittakerParams &p);

//! M_{k,mu}(z) * exp(-z/2) and W_{k,mu}(z) * exp(+z/2). Both stay O(z^|k|)
//! for large z, which is how the Green-function code consumes them.
cplx whittaker_M_scaled(const WhittakerParams &p);
cplx whittaker_W_scaled(const WhittakerParams &p);

//! Modified spherical Bessel functions i_l(x) and k_l(x), with
//! k_0(x) = (pi/2) exp(-x)/x. Throws DomainError for x <= 0.
std::pair<double, double> bessel_ikl(int l, double x);

//! exp(-x) i_l(x) and exp(+x) k_l(x).
std::pair<double, double> bessel_ikl_scaled(int l, double x);

} // namespace vpscreen::specfun
