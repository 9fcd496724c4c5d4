"""Reference values for the unit tests, evaluated with mpmath at 30 digits.

Run `python3 oracle.py` and paste the printed tables into the matching test
files. The formulas here are written independently of the C++ sources.
"""
from mpmath import (mp, mpf, mpc, sqrt, gamma, loggamma, whitm, whitw, exp, pi,
                    besseli, besselk, quad, inf)

mp.dps = 30
alpha = 1 / mpf('137.035999')


def c(v):
    v = mpc(v)
    return f"{{{mp.nstr(v.real, 17)}, {mp.nstr(v.imag, 17)}}}"


def coulomb_green(w, kap, x1, x2, Z):
    """Radial Coulomb-Dirac Green function (g-form), x1 <= x2."""
    d = sqrt(1 - w * w)
    lam = sqrt(kap * kap - (alpha * Z) ** 2)
    nu = alpha * Z * w / d
    q = gamma(lam - nu) / gamma(1 + 2 * lam) / (4 * d * d * (x1 * x2) ** mpf(1.5))
    Mm = whitm(nu - 0.5, lam, 2 * d * x1)
    Mp = whitm(nu + 0.5, lam, 2 * d * x1)
    Wm = whitw(nu - 0.5, lam, 2 * d * x2)
    Wp = whitw(nu + 0.5, lam, 2 * d * x2)
    A = -q * (lam - nu) * Mm * Wm
    B = -q * (lam - nu) * Mm * Wp
    C = -q * Mp * Wm
    D = -q * Mp * Wp
    g = kap ** 2 - (alpha * Z / d) ** 2
    az = alpha * Z / d
    X1 = kap * (A - D) + B - g * C + az * (A + D)
    X2 = kap * (A + D) - B - g * C + az * (A - D)
    X3 = kap * (A + D) + B + g * C + az * (A - D)
    X4 = kap * (A - D) - B + g * C + az * (A + D)
    return [(1 + w) * X1, d * X2, d * X3, (1 - w) * X4]


def il(l, x):
    return sqrt(pi / (2 * x)) * besseli(l + 0.5, x)


def kl(l, x):
    return sqrt(pi / (2 * x)) * besselk(l + 0.5, x)


def free_green(w, kap, r1, r2):
    d = sqrt(1 - w * w)
    # small component index l-bar; same sign for both kappa signs, as the
    # Z -> 0 limit of coulomb_green shows
    if kap < 0:
        l, lb = -kap - 1, -kap
    else:
        l, lb = kap, kap - 1
    s = 1
    D = -pi / (2 * d * (w + 1))
    g0 = il(l, d * r1)
    f0 = s * d * il(lb, d * r1) / (w + 1)
    gi = kl(l, d * r2)
    fi = -s * d * kl(lb, d * r2) / (w + 1)
    return [g0 * gi / D, g0 * fi / D, f0 * gi / D, f0 * fi / D]


def moment(n, s):
    f = lambda t: (1 + 1 / (2 * t * t)) * sqrt(t * t - 1) / t ** 2 * t ** (-n) * exp(-2 * s * t)
    return quad(f, [1, 2, inf])


print("// log_gamma")
for z in (mpc(0.3, 0.0), mpc(2.5, 1.7), mpc(-1.3, 0.4), mpc(12.0, -30.0)):
    print(f"{{{c(z)}, {c(loggamma(z))}}},")

print("// whittaker M, W: k, mu, z, M, W")
for k, mu, z in ((mpc(-0.3, 0.8), mpf('0.95'), mpf('0.7')),
                 (mpc(0.4, -2.1), mpf('2.9'), mpf('15.0')),
                 (mpc(0.0, 0.55), mpf('1.7'), mpf('0.02'))):
    print(f"{{{c(k)}, {c(mu)}, {mp.nstr(z, 17)}, {c(whitm(k, mu, z))}, {c(whitw(k, mu, z))}}},")

print("// coulomb_green: omega, kappa, x1, x2, Z, g11 g12 g21 g22")
for w, kap, x1, x2, Z in ((mpc(0, 0.5), -1, mpf('0.3'), mpf('0.9'), 92),
                          (mpc(0, 2.0), 2, mpf('0.05'), mpf('0.4'), 60),
                          (mpc(0.3, 0), -3, mpf('1.0'), mpf('1.5'), 20)):
    g = coulomb_green(w, kap, x1, x2, Z)
    print(f"{{{c(w)}, {kap}, {mp.nstr(x1, 17)}, {mp.nstr(x2, 17)}, {Z}, "
          f"{{{', '.join(c(v) for v in g)}}}}},")

print("// free_green: omega, kappa, x1, x2")
for w, kap, x1, x2 in ((mpc(0, 0.5), -1, mpf('0.3'), mpf('0.9')),
                       (mpc(0, 1.5), 2, mpf('0.2'), mpf('0.25'))):
    g = free_green(w, kap, x1, x2)
    print(f"{{{c(w)}, {kap}, {mp.nstr(x1, 17)}, {mp.nstr(x2, 17)}, "
          f"{{{', '.join(c(v) for v in g)}}}}},")

print("// uehling moments E_n(s)")
for n, s in ((0, mpf('0.01')), (1, mpf('0.3')), (-1, mpf('1.0')), (3, mpf('2.5'))):
    print(f"{{{n}, {mp.nstr(s, 17)}, {mp.nstr(moment(n, s), 17)}}},")

print("// point uehling potential: r, Z, U")
for r, Z in ((mpf('0.01'), 92), (mpf('0.5'), 20)):
    U = -alpha * Z / r * 2 * alpha / (3 * pi) * moment(0, r)
    print(f"{{{mp.nstr(r, 17)}, {Z}, {mp.nstr(U, 17)}}},")
