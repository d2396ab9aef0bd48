"""Independent high-precision oracles for expected values.

Everything here is written straight from the defining formulas with
mpmath, sharing no code with the package under test.  Frozen constants
in the test modules were produced by these functions at 60 digits.
"""

import mpmath

DPS = 60


def psi_e_hp(lam):
    with mpmath.workdps(DPS):
        lam = mpmath.mpf(lam)
        return -mpmath.log(1 - lam) - lam


def hoeffding_hp(n, alpha, d, centered_bound):
    with mpmath.workdps(DPS):
        ell = mpmath.log(2 / mpmath.mpf(alpha))
        return mpmath.mpf(d) * mpmath.mpf(centered_bound) * mpmath.sqrt(2 * ell / n)


def bernstein_hp(n, sigma_sq, alpha, d, centered_bound):
    with mpmath.workdps(DPS):
        ell = mpmath.log(2 / mpmath.mpf(alpha))
        lead = mpmath.sqrt(2 * n * mpmath.mpf(d) ** 2 * mpmath.mpf(sigma_sq) * ell)
        return (lead + mpmath.mpf(2) / 3 * mpmath.mpf(centered_bound) * ell) / n


def limiting_width_hp(sigma, alpha, d):
    with mpmath.workdps(DPS):
        ell = mpmath.log(2 / mpmath.mpf(alpha))
        return mpmath.mpf(sigma) * mpmath.mpf(d) * mpmath.sqrt(2 * ell)


def finite_lil_hp(v, t, d):
    with mpmath.workdps(DPS):
        vv = max(mpmath.mpf(v), mpmath.mpf(1))
        ll = mpmath.log(mpmath.log(2 * vv))
        r = mpmath.mpf("1.7") * mpmath.sqrt(vv * (ll + mpmath.mpf("3.8")))
        r += mpmath.mpf("3.4") * ll + 13
        return mpmath.mpf(d) * r / t


def penalty_gap_hp(x, lam, d):
    with mpmath.workdps(DPS):
        x, lam, d = mpmath.mpf(x), mpmath.mpf(lam), mpmath.mpf(d)
        p = -mpmath.log(1 - lam) - lam
        a = lam * x / d - p * x * x
        s = lam * x + p * x * x
        if a == 0:
            ratio = mpmath.mpf(1) / 2
        else:
            ratio = (mpmath.exp(a) - a - 1) / (a * a)
        return -p * x * x + s * s * ratio


def cosh_sinh_gap_hp(x, y):
    with mpmath.workdps(DPS):
        x, y = mpmath.mpf(x), mpmath.mpf(y)
        return mpmath.cosh(y + x) - x * mpmath.sinh(y + x) - mpmath.cosh(y)


def q_gap_hp(y):
    with mpmath.workdps(DPS):
        y = mpmath.mpf(y)
        q = 1 + y + y**2 / 2 + y**3 / 6 + y**4 / 18
        return q - mpmath.exp(y)
