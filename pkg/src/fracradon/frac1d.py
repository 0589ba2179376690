"""One-dimensional fractional calculus.

Riemann-Liouville integrals on both sides with analytic continuation in the
order, truncated Marchaud derivatives with extrapolation in the truncation
parameter, the averaging kernel that makes the truncated derivative an
approximate identity, and the Fourier symbol of the one-sided power kernel.

Fourier convention: w^(tau) = int w(t) exp(+i t tau) dt.  Under it

    (I^a_+ w)^ = (-i tau)^{-a} w^,     (I^a_- w)^ = (i tau)^{-a} w^.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math
import warnings

import numpy as np
from scipy import integrate
from scipy.signal import fftconvolve
from scipy.special import binom, comb

from .functions import Grid1D
from .gamma import rgamma

__all__ = [
    "FracOrder",
    "Signal",
    "TruncationWarning",
    "kappa",
    "lambda_kernel",
    "lambda_kernel_mass",
    "rl_integral",
    "rl_integral_at",
    "rl_continued",
    "spectral_derivative",
    "marchaud_truncated",
    "marchaud",
    "richardson",
    "marchaud_exponents",
    "fourier_symbol",
]


class TruncationWarning(UserWarning):
    """A signal does not decay at the grid boundary that an operator integrates over."""


@dataclass(frozen=True)
class FracOrder:
    """Complex order alpha with continuation level ell (Re alpha + ell > 0)."""

    alpha: complex
    level: int | None = None

    def __post_init__(self):
        a = complex(self.alpha)
        object.__setattr__(self, "alpha", a)
        minimal = max(0, math.floor(-a.real) + 1)
        lev = minimal if self.level is None else int(self.level)
        if a.real + lev <= 0:
            raise ValueError(f"level {lev} too small for alpha={a}: need Re(alpha) + level > 0")
        object.__setattr__(self, "level", lev)

    @property
    def is_real(self) -> bool:
        return self.alpha.imag == 0.0

    @property
    def value(self):
        """alpha as a float when it is real, else as a complex number."""
        return self.alpha.real if self.is_real else self.alpha

    @property
    def nonpositive_integer(self) -> bool:
        a = self.alpha
        return a.imag == 0 and a.real <= 0 and a.real == round(a.real)


def _as_order(alpha) -> FracOrder:
    return alpha if isinstance(alpha, FracOrder) else FracOrder(alpha)


@dataclass
class Signal:
    """Samples of a function of one variable on a :class:`Grid1D`.

    ``derivative`` optionally maps ``k`` to the exact k-th derivative sampled
    on the same grid (used by the analytic continuation in the order).
    """

    grid: Grid1D
    values: np.ndarray
    derivative: object = None
    threshold: float = 1e-12
    warnings: list = field(default_factory=list)

    def __post_init__(self):
        self.values = np.asarray(self.values)
        if self.values.shape != (self.grid.count,):
            raise ValueError("Signal values must match the grid node count")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("Signal values must be finite")
        for side in ("left", "right"):
            b = self.boundary(side)
            if b > self.threshold:
                self.warnings.append(f"{side} boundary magnitude {b:.3e} exceeds {self.threshold:g}")

    @classmethod
    def from_function(cls, fn, grid: Grid1D, dfn=None, **kw) -> "Signal":
        """Sample a callable ``fn(t)``; ``dfn(t, k)`` supplies exact derivatives."""
        t = grid.nodes
        deriv = None if dfn is None else (lambda k: np.asarray(dfn(t, k)))
        return cls(grid, np.asarray(fn(t)), deriv, **kw)

    @property
    def t(self) -> np.ndarray:
        return self.grid.nodes

    @property
    def h(self) -> float:
        return self.grid.h

    def boundary(self, side: str) -> float:
        """Boundary magnitude relative to the peak magnitude."""
        peak = np.max(np.abs(self.values))
        if peak == 0:
            return 0.0
        v = self.values[0] if side == "left" else self.values[-1]
        return float(abs(v) / peak)

    def with_values(self, values, derivative=None) -> "Signal":
        return Signal(self.grid, values, derivative, self.threshold)

    def nth_derivative(self, k: int) -> np.ndarray:
        if k == 0:
            return self.values
        if self.derivative is not None:
            return np.asarray(self.derivative(k))
        return spectral_derivative(self.values, self.h, k)


def _check_tail(sig: Signal, side: str, what: str):
    b = sig.boundary(side)
    if b > 1e-6:
        raise ValueError(f"{what}: {side} tail not decayed (relative boundary magnitude {b:.2e} > 1e-6)")
    if b > sig.threshold:
        warnings.warn(f"{what}: {side} boundary magnitude {b:.2e} may truncate the integral",
                      TruncationWarning, stacklevel=3)


# --------------------------------------------------------------------------
# constants and kernels


def kappa(ell: int, a: float) -> float:
    """Normalising constant of the Marchaud derivative of order a with ell differences.

    Equals int_0^inf (1 - e^{-v})^ell v^{-a-1} dv.
    """
    if int(ell) != ell or ell < 1:
        raise ValueError("ell must be a positive integer")
    if not 0 < a < ell:
        raise ValueError(f"need 0 < a < ell, got a={a}, ell={ell}")
    j = np.arange(1, ell + 1)
    signs = (-1.0) ** j
    if a == round(a):
        a_int = int(round(a))
        s = np.sum(comb(ell, j) * signs * j ** float(a_int) * np.log(j))
        return float((-1) ** (1 + a_int) / math.factorial(a_int) * s)
    return float(math.gamma(-a) * np.sum(comb(ell, j) * signs * j ** float(a)))


def lambda_kernel(ell: int, a: float, eta):
    """Averaging kernel lambda_{ell,a}(eta) for eta > 0 (unit mass on (0, inf))."""
    eta = np.asarray(eta, dtype=float)
    if np.any(eta <= 0):
        raise ValueError("lambda_kernel is defined for eta > 0")
    s = np.zeros(eta.shape)
    for j in range(ell + 1):
        s += comb(ell, j) * (-1.0) ** j * np.clip(eta - j, 0.0, None) ** a
    return s / (eta * math.gamma(1 + a) * kappa(ell, a))


def lambda_kernel_mass(ell: int, a: float, split: float = 50.0) -> float:
    """int_0^inf lambda_{ell,a}: quadrature on (0, split], asymptotic series beyond.

    For eta > ell the ell-th difference of eta^a expands as
    eta^a sum_{k >= ell} C(a,k) (-1)^k S_k eta^{-k}, S_k = sum_j C(ell,j)(-1)^j j^k,
    which avoids the cancellation in the direct formula at large eta.
    """
    fn = lambda e: float(lambda_kernel(ell, a, np.array([e]))[0])
    edges = np.unique(np.concatenate([np.arange(ell + 1.0), np.geomspace(ell + 1.0, split, 8)]))
    head = sum(integrate.quad(fn, lo, hi, limit=200, epsabs=1e-15, epsrel=1e-13)[0]
               for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo)
    j = np.arange(ell + 1)
    cj = comb(ell, j) * (-1.0) ** j
    tail = 0.0
    for k in range(ell, 80):
        S = float(np.sum(cj * j.astype(float) ** k))
        tail += binom(a, k) * (-1.0) ** k * S * split ** (a - k) / (k - a)
    return float(head + tail / (math.gamma(1 + a) * kappa(ell, a)))


def fourier_symbol(alpha, tau, sign: str = "+"):
    """(-i tau)^{-alpha} for sign '+', (i tau)^{-alpha} for sign '-' (principal branch)."""
    tau = np.asarray(tau, dtype=float)
    if np.any(tau == 0):
        raise ValueError("fourier_symbol is singular at tau = 0")
    s = 1.0 if sign == "+" else -1.0
    alpha = complex(alpha)
    return np.exp(-alpha * np.log(np.abs(tau)) + s * alpha * (math.pi / 2) * 1j * np.sign(tau))


# --------------------------------------------------------------------------
# cell moments for product integration


def _series_F(x, alpha, terms=12):
    # int_0^x (1+y)^{alpha-1} y dy for small x, by the binomial series
    out = np.zeros(np.shape(x), dtype=complex)
    c = 1.0 + 0j
    xp = x * x
    for k in range(terms):
        out += c * xp / (k + 2)
        c *= (alpha - 1 - k) / (k + 1)
        xp = xp * x
    return out


def _pow_minus_one(x, s):
    # (1+x)^s - 1, accurate for small x
    return np.expm1(s * np.log1p(x))


def _cell_moments(lo, hi, alpha):
    """Moments of u^{alpha-1} on [lo, hi], 0 <= lo < hi.

    Returns (D, M) with D = int u^{alpha-1} du and M = int u^{alpha-1}(u - lo) du,
    computed without the cancellation of the naive power differences.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    alpha = complex(alpha)
    D = np.empty(np.broadcast(lo, hi).shape, dtype=complex)
    M = np.empty_like(D)
    lo, hi = np.broadcast_arrays(lo, hi)
    zero = lo == 0
    if np.any(zero):
        if alpha.real <= 0:
            raise ValueError("moments of u^{alpha-1} at u = 0 need Re alpha > 0")
        b = hi[zero].astype(complex)
        D[zero] = b ** alpha / alpha
        M[zero] = b ** (alpha + 1) / (alpha + 1)
    nz = ~zero
    if np.any(nz):
        a = lo[nz]
        x = (hi[nz] - a) / a
        la = np.log(a)
        # D = a^alpha * ((1+x)^alpha - 1)/alpha
        if abs(alpha) < 1e-12:
            dpart = np.log1p(x) + 0j
        else:
            dpart = _pow_minus_one(x, alpha) / alpha
        D[nz] = np.exp(alpha * la) * dpart
        # M = a^{alpha+1} * F(x),  F(x) = int_0^x (1+y)^{alpha-1} y dy
        F = np.empty(x.shape, dtype=complex)
        small = x < 0.25
        if np.any(small):
            F[small] = _series_F(x[small], alpha, terms=40)
        big = ~small
        if np.any(big):
            xb = x[big]
            if abs(alpha + 1) < 1e-12:
                first = np.log1p(xb)
            else:
                first = _pow_minus_one(xb, alpha + 1) / (alpha + 1)
            if abs(alpha) < 1e-12:
                second = np.log1p(xb)
            else:
                second = _pow_minus_one(xb, alpha) / alpha
            F[big] = first - second
        M[nz] = np.exp((alpha + 1) * la) * F
    return D, M


def _rl_weights(count: int, h: float, alpha) -> np.ndarray:
    """Convolution weights c_m with I(t_k) ~ sum_m c_m w_{k-m} (no 1/Gamma factor)."""
    j = np.arange(count, dtype=float)
    A, B = _cell_moments(j, j + 1, alpha)
    c = A - B
    c[1:] += B[:-1]
    return c * h ** alpha


# --------------------------------------------------------------------------
# Riemann-Liouville integrals


def _finish(values, like_real):
    return values.real if like_real else values


def rl_integral(sig: Signal, alpha, sign: str = "+") -> Signal:
    """I^alpha_+ (or I^alpha_-) at every grid node, Re alpha > 0.

    Product integration: the kernel is integrated exactly against the
    piecewise linear interpolant of the samples.  The integral is taken
    from the grid end on the integrating side, which must carry a decayed
    tail.
    """
    order = _as_order(alpha)
    a = order.alpha
    if a.real <= 0:
        raise ValueError("rl_integral needs Re alpha > 0; use rl_continued")
    if sign not in "+-":
        raise ValueError("sign must be '+' or '-'")
    _check_tail(sig, "left" if sign == "+" else "right", "rl_integral")
    w = sig.values if sign == "+" else sig.values[::-1]
    c = _rl_weights(len(w), sig.h, a)
    out = fftconvolve(c, w)[: len(w)] * complex(rgamma(a))
    if sign == "-":
        out = out[::-1]
    real = order.is_real and not np.iscomplexobj(sig.values)
    return sig.with_values(_finish(out, real))


def rl_integral_at(nodes, values, alpha, targets, sign: str = "+"):
    """I^alpha_+- of the piecewise linear interpolant of (nodes, values) at arbitrary targets.

    ``nodes`` must be increasing but need not be uniform; the interpolant is
    taken as zero outside [nodes[0], nodes[-1]].  Re alpha > 0.
    """
    a = complex(alpha)
    if a.real <= 0:
        raise ValueError("rl_integral_at needs Re alpha > 0")
    s = np.asarray(nodes, dtype=float)
    v = np.asarray(values)
    targets = np.asarray(targets, dtype=float)
    if sign == "-":
        # I_-(w)(t) = I_+(w(-.))(-t)
        return rl_integral_at(-s[::-1], v[::-1], alpha, -targets, "+")
    if np.any(np.diff(s) <= 0):
        raise ValueError("nodes must be strictly increasing")
    out = np.zeros(targets.shape, dtype=complex)
    slope = np.diff(v) / np.diff(s)
    for idx, t in np.ndenumerate(targets):
        # cells fully left of t, then the partial cell containing t
        k = np.searchsorted(s, t, side="right") - 1
        if k < 0:
            continue
        total = 0j
        if k > 0:
            lo_d = t - s[1: k + 1]       # distance to cell right end
            hi_d = t - s[:k]             # distance to cell left end
            D, M = _cell_moments(lo_d, hi_d, a)
            # w(s) = v_{i+1} - slope_i (s_{i+1} - s) ; s_{i+1} - s = u - lo_d
            total += np.sum(v[1: k + 1] * D - slope[:k] * M)
        if k < len(s) - 1 and t > s[k]:
            D, M = _cell_moments(0.0, t - s[k], a)
            wt = v[k] + slope[k] * (t - s[k])
            total += wt * D - slope[k] * M
        out[idx] = total
    out *= complex(rgamma(a))
    real = a.imag == 0 and not np.iscomplexobj(v)
    return _finish(out, real)


def spectral_derivative(values, h: float, k: int) -> np.ndarray:
    """k-th derivative of periodic-extendable samples by FFT (exponentially accurate for smooth decaying data)."""
    values = np.asarray(values)
    if k == 0:
        return values
    xi = 2 * np.pi * np.fft.fftfreq(len(values), d=h)
    mult = (1j * xi) ** k
    if k % 2 == 1 and len(values) % 2 == 0:
        mult[len(values) // 2] = 0.0  # Nyquist bin has no consistent sign
    out = np.fft.ifft(mult * np.fft.fft(values))
    return out.real if not np.iscomplexobj(values) else out


def rl_continued(sig: Signal, alpha, sign: str = "+") -> Signal:
    """I^alpha_+- for any complex alpha by (+-1)^ell I^{alpha+ell}_+- w^{(ell)}.

    At non-positive integers the operator is the exact derivative
    (d/dt)^k (plus side) or (-d/dt)^k (minus side).
    """
    order = _as_order(alpha)
    a = order.alpha
    sgn = 1.0 if sign == "+" else -1.0
    if order.nonpositive_integer:
        k = int(round(-a.real))
        return sig.with_values((sgn ** k) * sig.nth_derivative(k))
    ell = order.level
    if ell == 0:
        return rl_integral(sig, order, sign)
    try:
        d = sig.nth_derivative(ell)
    except (NotImplementedError, ValueError) as exc:
        raise ValueError(f"rl_continued: derivative of order {ell} unavailable: {exc}") from exc
    inner = sig.with_values(d)
    res = rl_integral(inner, a + ell, sign)
    return sig.with_values(sgn ** ell * res.values)


# --------------------------------------------------------------------------
# Marchaud derivative


def marchaud_truncated(phi: Signal, a: float, eps: float, ell: int) -> Signal:
    """Truncated Marchaud derivative (1/kappa) int_eps^inf (Delta^ell_t phi)(x) t^{-1-a} dt.

    ``Delta^ell_t phi(x) = sum_j C(ell,j)(-1)^j phi(x - j t)``.  ``eps`` is
    rounded to a multiple of the grid spacing.  For j >= 1 the substitution
    s = j t turns each difference term into a one-sided convolution with
    s^{-1-a} on [j eps, inf), evaluated by product integration; the j = 0
    term is exact.  Samples left of the grid are taken as zero.
    """
    if ell <= a:
        raise ValueError("need ell > a")
    if a <= 0:
        raise ValueError("need a > 0")
    h = phi.h
    m0 = int(round(eps / h))
    if m0 < 1 or eps < h * (1 - 1e-9):
        raise ValueError(f"eps={eps} is below the grid spacing h={h}")
    _check_tail(phi, "left", "marchaud_truncated")
    N = len(phi.values)
    vals = phi.values
    out = vals * (m0 * h) ** (-a) / a
    for j in range(1, ell + 1):
        start = j * m0
        if start >= N:
            break
        m = np.arange(start, N, dtype=float)
        P, Q = _cell_moments(m * h, (m + 1) * h, -a)
        Q = Q / h
        w = np.zeros(N, dtype=complex)
        w[start:] = P - Q
        w[start + 1:] += Q[:-1]
        conv = fftconvolve(w, vals)[:N]
        out = out + comb(ell, j) * (-1.0) ** j * j ** a * conv
    out = out / kappa(ell, a)
    if not np.iscomplexobj(vals):
        out = out.real
    return phi.with_values(out)


def marchaud_exponents(a: float, ell: int, count: int = 2):
    """Leading exponents of the eps-expansion of the truncated Marchaud derivative.

    For smooth phi the error is a combination of integer powers of eps and,
    because the averaging kernel decays like eta^{a-ell-1}, of powers
    eps^{ell-a+k}.
    """
    pool = set(range(1, count + 2))
    pool |= {ell - a + k for k in range(count + 1)}
    return sorted(pool)[:count]


def richardson(values, eps, exponents):
    """Extrapolate v(eps) = v0 + sum_i c_i eps^{p_i} to eps = 0.

    ``values`` has shape (len(eps), ...); one exponent fewer than samples.
    """
    eps = np.asarray(eps, dtype=float)
    values = np.asarray(values)
    if len(exponents) != len(eps) - 1:
        raise ValueError("need exactly one more sample than exponents")
    A = np.ones((len(eps), len(eps)))
    for i, p in enumerate(exponents):
        A[:, i + 1] = eps ** p
    w = np.linalg.inv(A)[0]
    return np.tensordot(w, values, axes=(0, 0))


def marchaud(phi: Signal, a: float, ell: int | None = None, multiples=(1, 2, 4), exponents=None) -> Signal:
    """Marchaud derivative D^a_+ phi as the extrapolated eps -> 0 limit."""
    if ell is None:
        ell = int(math.floor(a)) + 1
    if exponents is None:
        exponents = marchaud_exponents(a, ell, len(multiples) - 1)
    eps = [m * phi.h for m in multiples]
    vals = [marchaud_truncated(phi, a, e, ell).values for e in eps]
    return phi.with_values(richardson(vals, eps, exponents))
