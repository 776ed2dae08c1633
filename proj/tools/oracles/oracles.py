"""Reference values frozen into the unit tests.

Each value is computed from a continuum formula, independently of the C++
code. Run `python3 tools/oracles/oracles.py` to regenerate; the tests quote
the printed numbers.
"""

import math

import mpmath as mp
from scipy import integrate, special

mp.mp.dps = 30


def bump(r, radius=1.0, amp=1.0):
    """amp * exp(1 - 1/(1 - (r/radius)^2)) inside the ball, 0 outside."""
    rho = (r / radius) ** 2
    if rho >= 1.0:
        return 0.0
    return amp * math.exp(1.0 - 1.0 / (1.0 - rho))


def bump_hankel(xi, radius=1.0):
    """2D Fourier transform of the radial bump: 2 pi int_0^R f(r) J0(xi r) r dr."""
    val, _ = integrate.quad(lambda r: bump(r, radius) * special.j0(xi * r) * r, 0.0, radius,
                            limit=400, epsabs=1e-15, epsrel=1e-13)
    return 2.0 * math.pi * val


def bump_sobolev_norm(s, radius=1.0, cutoff=200.0):
    """||f||_{Hdot^s}^2 = (2 pi)^-2 int |f^(xi)|^2 |xi|^{2s} dxi
                      = (1 / 2 pi) int_0^inf |f^(rho)|^2 rho^{2s+1} drho."""
    integrand = lambda rho: bump_hankel(rho, radius) ** 2 * rho ** (2 * s + 1)
    total = 0.0
    for a in range(0, int(cutoff), 5):
        val, _ = integrate.quad(integrand, a, a + 5, limit=200, epsabs=1e-16, epsrel=1e-12)
        total += val
    return math.sqrt(total / (2.0 * math.pi))


def bump_l2_norm(radius=1.0):
    val, _ = integrate.quad(lambda r: bump(r, radius) ** 2 * r, 0.0, radius, epsrel=1e-13)
    return math.sqrt(2.0 * math.pi * val)


def gaussian_box_propagation(sigma, t, x1, x2):
    """exp(i t (d11 - d22)) applied to exp(-|z|^2 / (2 sigma^2)), evaluated at x.

    Along x1, exp(i t d^2) maps exp(-x^2/(2 s2)) to sqrt(s2/(s2 + 2it)) exp(-x^2/(2(s2 + 2it)));
    along x2 the sign of t flips.
    """
    s2 = mp.mpf(sigma) ** 2
    a = s2 + 2j * t
    b = s2 - 2j * t
    return mp.sqrt(s2 / a) * mp.exp(-x1 ** 2 / (2 * a)) * mp.sqrt(s2 / b) * mp.exp(-x2 ** 2 / (2 * b))


if __name__ == "__main__":
    print("bump(R=1) L2 norm        ", repr(bump_l2_norm()))
    print("bump(R=1) Hdot^0 norm    ", repr(bump_sobolev_norm(0.0)))
    print("bump(R=1) Hdot^1/2 norm  ", repr(bump_sobolev_norm(0.5)))
    v = gaussian_box_propagation(0.3, mp.mpf(1) / 256, mp.mpf("0.1"), mp.mpf("0.05"))
    print("gauss sigma=0.3 t=1/256 x=(0.1,0.05)", mp.nstr(v.real, 17), mp.nstr(v.imag, 17))
