"""High-precision reference values computed with mpmath, independent of the package."""

import mpmath as mp

mp.mp.dps = 30


def rl_gauss(alpha, t):
    """(I^alpha_+ e^{-s^2})(t) for any complex alpha.

    int_0^inf s^{a-1} e^{-(t-s)^2} ds / Gamma(a) = 2^{-a/2} e^{-t^2/2} D_{-a}(-sqrt2 t),
    with D the parabolic cylinder function; the right side is entire in a.
    """
    a = mp.mpc(alpha)
    t = mp.mpf(t)
    return complex(2 ** (-a / 2) * mp.exp(-t * t / 2) * mp.pcfd(-a, -mp.sqrt(2) * t))


def rl_gauss_quad(alpha, t):
    """The same for Re alpha > 0 by direct quadrature of the defining integral."""
    a = mp.mpc(alpha)
    t = mp.mpf(t)
    f = lambda s: s ** (a - 1) * mp.exp(-(t - s) ** 2)
    return complex(mp.quad(f, [0, max(t, 0) + 1, mp.inf]) / mp.gamma(a))


def transversal_gauss(xprime, xn, n=2):
    """T of exp(-|x|^2): pi^{(n-1)/2} (1+|x'|^2)^{-1/2} exp(-x_n^2/(1+|x'|^2))."""
    s2 = 1 + sum(v * v for v in xprime)
    return float(mp.pi ** (mp.mpf(n - 1) / 2) / mp.sqrt(s2) * mp.exp(-mp.mpf(xn) ** 2 / s2))


def t_plus_gauss(alpha, xprime, xn, n=2):
    """T_+^alpha of exp(-|x|^2): the x_n-slice is c exp(-(x_n/s)^2), s^2 = 1+|x'|^2."""
    s = mp.sqrt(1 + sum(v * v for v in xprime))
    c = mp.pi ** (mp.mpf(n - 1) / 2) / s
    return complex(c * s ** mp.mpc(alpha) * rl_gauss(alpha, mp.mpf(xn) / s))


def t_star_plus_gauss(beta, xprime, xn, n=2):
    """T*_+^beta = I^beta_- along x_n of Tg(-x', .); the gaussian slice is even."""
    return t_plus_gauss(beta, [-v for v in xprime], -xn, n)


def r_plus_gauss(alpha, t, n=2):
    """R_+^alpha of exp(-|x|^2): pi^{(n-1)/2} (I^alpha_+ e^{-s^2})(t), any direction."""
    return complex(mp.pi ** (mp.mpf(n - 1) / 2) * rl_gauss(alpha, t))


def gamma_abs2(gam):
    return float(abs(mp.gamma(1 + 1j * mp.mpf(gam))) ** 2)
