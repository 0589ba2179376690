"""Hyperplane, transversal and parabolic Radon transforms, duals and coordinate maps.

All transforms act on corpus functions by direct quadrature.  The corpus
functions are smooth and decay fast, so the composite trapezoid rule over
their effective support converges geometrically; node placement follows the
geometry of each transform so the node count does not grow with the
evaluation point.

Conventions:
    Rf(theta, t)  = int_{x.theta = t} f
    Tf(x', x_n)   = int f(y', x_n + x'.y') dy'
    T*g(x', x_n)  = int g(y', x_n - x'.y') dy' = Tg(-x', x_n)
    Pf(x', x_n)   = int f(x' - y', x_n - |y'|^2) dy'
"""

from __future__ import annotations

from dataclasses import dataclass
import math
import warnings

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicSpline

from .functions import Grid1D, TestFunction, sphere_area

__all__ = [
    "DivergenceWarning",
    "DirectionSet",
    "CylinderField",
    "Sheared",
    "radon",
    "radon_of",
    "radon_field",
    "radon_radial",
    "transversal",
    "transversal_of",
    "transversal_dual",
    "parabolic",
    "radon_dual",
    "orthonormal_complement",
    "theta_from_x",
    "x_from_theta",
    "lambda_map",
    "lambda_inv",
    "b1",
    "b1_inv",
    "b2",
    "b2_inv",
    "coordinate_map",
]

EQUATOR_FLOOR = 1e-3


class DivergenceWarning(UserWarning):
    """The integrand has not decayed at the truncation radius."""


# --------------------------------------------------------------------------
# direction sets and cylinder fields


@dataclass(frozen=True)
class DirectionSet:
    """Quadrature on S^{n-1}: unit vectors with weights summing to the sphere area."""

    n: int
    directions: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.directions, dtype=float).reshape(-1, self.n)
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        if len(d) != len(w):
            raise ValueError("one weight per direction")
        if np.max(np.abs(np.linalg.norm(d, axis=1) - 1)) > 1e-14:
            raise ValueError("directions must be unit vectors")
        object.__setattr__(self, "directions", d)
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.weights)

    @property
    def total_weight(self) -> float:
        return float(np.sum(self.weights))

    @classmethod
    def equispaced(cls, count: int = 128) -> "DirectionSet":
        """n = 2: angles 2 pi (k + 1/2) / count, antipodally closed for even count."""
        ang = 2 * np.pi * (np.arange(count) + 0.5) / count
        d = np.stack([np.cos(ang), np.sin(ang)], axis=1)
        return cls(2, d, np.full(count, 2 * np.pi / count))

    @classmethod
    def product(cls, n_polar: int = 24, n_azimuth: int = 48) -> "DirectionSet":
        """n = 3: Gauss-Legendre in cos(polar angle) times uniform azimuth."""
        u, wu = np.polynomial.legendre.leggauss(n_polar)
        phi = 2 * np.pi * np.arange(n_azimuth) / n_azimuth
        U, P = np.meshgrid(u, phi, indexing="ij")
        s = np.sqrt(1 - U ** 2)
        d = np.stack([s * np.cos(P), s * np.sin(P), U], axis=-1).reshape(-1, 3)
        d /= np.linalg.norm(d, axis=1, keepdims=True)
        w = (wu[:, None] * np.full(n_azimuth, 2 * np.pi / n_azimuth)[None, :]).reshape(-1)
        return cls(3, d, w)

    @classmethod
    def default(cls, n: int) -> "DirectionSet":
        if n == 2:
            return cls.equispaced(128)
        if n == 3:
            return cls.product(24, 48)
        raise ValueError("direction sets exist for n = 2, 3")

    def is_antipodal(self, tol: float = 1e-12) -> bool:
        d = self.directions
        dist = np.linalg.norm(d[:, None, :] + d[None, :, :], axis=-1)
        return bool(np.all(dist.min(axis=1) < tol))

    def away_from_equator(self, floor: float) -> "DirectionSet":
        keep = np.abs(self.directions[:, -1]) >= floor
        return DirectionSet(self.n, self.directions[keep], self.weights[keep])


@dataclass
class CylinderField:
    """Values on Z_n = S^{n-1} x R: one row per direction, one column per offset."""

    directions: DirectionSet
    offsets: Grid1D
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values)
        if self.values.shape != (len(self.directions), self.offsets.count):
            raise ValueError("values must have shape (directions, offsets)")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("CylinderField values must be finite")

    @property
    def n(self) -> int:
        return self.directions.n

    def evenness_defect(self) -> float:
        """max |phi(theta,t) - phi(-theta,-t)| over an antipodally closed set."""
        d = self.directions.directions
        partner = np.argmin(np.linalg.norm(d[:, None, :] + d[None, :, :], axis=-1), axis=1)
        t = self.offsets.nodes
        if not np.allclose(t, -t[::-1], atol=1e-12 * max(1.0, abs(t[0]))):
            raise ValueError("offset grid is not symmetric")
        return float(np.max(np.abs(self.values - self.values[partner][:, ::-1])))

    def mass(self) -> np.ndarray:
        """int phi(theta, t) dt for every direction (trapezoid)."""
        return integrate.trapezoid(self.values, self.offsets.nodes, axis=1)


# --------------------------------------------------------------------------
# geometry helpers


def orthonormal_complement(theta) -> np.ndarray:
    """Rows spanning theta-perp, from the Householder reflection taking e_n to theta."""
    theta = np.asarray(theta, dtype=float)
    n = len(theta)
    e = np.zeros(n)
    e[-1] = 1.0
    v = theta - e if theta[-1] < 0 else theta + e
    H = np.eye(n) - 2.0 * np.outer(v, v) / (v @ v)
    return H[:, :-1].T


def _line_nodes(half: float, step: float):
    k = max(int(math.ceil(half / step)), 1)
    s = np.linspace(-half, half, 2 * k + 1)
    return s, s[1] - s[0]


def _decay_check(fn, pts, peak, what, threshold=1e-12):
    edge = np.max(np.abs(fn(pts)))
    if edge > threshold * max(peak, 1e-300):
        warnings.warn(f"{what}: integrand is {edge:.2e} at the truncation radius", DivergenceWarning, stacklevel=3)


def _peak(f) -> float:
    return float(abs(np.asarray(f(np.zeros((1, f.n))))[0])) or 1.0


# --------------------------------------------------------------------------
# hyperplane Radon transform


def radon_of(fn, n: int, radius: float, step: float, theta, t):
    """Rf(theta, t) of a callable ``fn`` supported in the ball of ``radius``.

    ``t`` may be an array; the result has the shape of ``t``.
    """
    theta = np.asarray(theta, dtype=float)
    t = np.asarray(t, dtype=float)
    basis = orthonormal_complement(theta)
    s, hs = _line_nodes(radius, step)
    if n == 2:
        off = s[:, None] * basis[0][None, :]                       # (S, 2)
        w = hs
    elif n == 3:
        A, B = np.meshgrid(s, s, indexing="ij")
        inside = A ** 2 + B ** 2 <= (radius + 2 * hs) ** 2
        off = A[inside][:, None] * basis[0] + B[inside][:, None] * basis[1]
        w = hs * hs
    else:
        raise ValueError("radon supports n = 2, 3")
    flat = t.reshape(-1)
    out = np.empty(flat.shape, dtype=complex)
    chunk = max(1, 400000 // len(off))
    for i in range(0, len(flat), chunk):
        tt = flat[i: i + chunk]
        pts = tt[:, None, None] * theta[None, None, :] + off[None, :, :]
        out[i: i + chunk] = np.sum(fn(pts), axis=1) * w
    return out.reshape(t.shape)


def _truncation(f: TestFunction, L):
    if L is None:
        if not math.isfinite(f.radius):
            raise ValueError(f"{f.kind} has no finite support radius; pass a truncation radius L")
        return f.radius
    return float(L)


def radon(f: TestFunction, theta, t, L: float | None = None):
    """Hyperplane Radon transform of a corpus function at (theta, t), truncated to |y| <= L."""
    L = _truncation(f, L)
    theta = np.asarray(theta, dtype=float)
    if f.n not in (2, 3):
        raise ValueError("radon supports n = 2, 3")
    if theta.shape != (f.n,) or abs(np.linalg.norm(theta) - 1) > 1e-12:
        raise ValueError("theta must be a unit vector of length n")
    if not math.isfinite(f.radius) or L < f.radius:
        basis = orthonormal_complement(theta)
        _decay_check(f, L * basis, _peak(f), "radon")
    out = radon_of(f, f.n, L, f.step, theta, t)
    return out.real if f.real else out


def radon_field(f: TestFunction, directions: DirectionSet | None = None, offsets: Grid1D | None = None,
                L: float | None = None) -> CylinderField:
    directions = directions or DirectionSet.default(f.n)
    if offsets is None:
        R = _truncation(f, L)
        offsets = Grid1D.with_step(-R, R, min(f.step, 0.25))
    vals = np.stack([radon(f, th, offsets.nodes, L) for th in directions.directions])
    return CylinderField(directions, offsets, vals)


def _partial_integral(fn, lo, hi):
    """int_lo^hi fn by adaptive quadrature on geometrically growing pieces."""
    if hi <= lo:
        return 0.0
    edges = [lo]
    w = 1.0
    while edges[-1] + w < hi:
        edges.append(edges[-1] + w)
        w *= 4.0
    edges.append(hi)
    return float(sum(integrate.quad(fn, a, b, epsabs=1e-16, epsrel=1e-12, limit=200)[0]
                     for a, b in zip(edges[:-1], edges[1:])))


def radon_radial(f0, n: int, t, tail_check: bool = True) -> np.ndarray:
    """Radon transform of the radial function f(x) = f0(|x|) at offset t.

    sigma_{n-2} int_{|t|}^inf f0(r) (r^2 - t^2)^{(n-3)/2} r dr; for n = 2 the
    endpoint singularity is removed by r = |t| cosh u.  The tail is judged on
    partial integrals over [R, 1000 R]: increments that shrink by less than half
    per rung are reported as divergence (inf plus DivergenceWarning), otherwise
    the geometric remainder of the ladder is added.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    sig = sphere_area(n - 2) if n > 2 else 2.0
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(ts.shape)
    for i, tv in enumerate(np.abs(ts)):
        if n == 2 and tv > 0:
            # r = |t| cosh u
            def integrand(u, tv=tv):
                if u > 700:
                    return 0.0
                r = tv * math.cosh(u)
                return f0(r) * r
            to_var = lambda r, tv=tv: math.acosh(max(r / tv, 1.0))
            lo = 0.0
        elif n == 2:
            integrand, to_var, lo = f0, (lambda r: r), 0.0
        else:
            def integrand(r, tv=tv):
                return f0(r) * (r * r - tv * tv) ** ((n - 3) / 2) * r
            to_var, lo = (lambda r: r), tv
        # partial integrals on a ladder R = 10^3, 10^6, 10^9, 10^12 beyond |t|
        radii = [to_var(tv + 10.0 ** (3 * k)) for k in range(1, 5)]
        val = _partial_integral(integrand, lo, radii[0])
        steps = [_partial_integral(integrand, a, b) for a, b in zip(radii[:-1], radii[1:])]
        val += sum(steps)
        d2, d3 = abs(steps[-2]), abs(steps[-1])
        if d3 > 1e-15 * max(abs(val), 1e-300):
            ratio = d3 / d2 if d2 > 0 else math.inf
            if tail_check and ratio >= 0.5:
                warnings.warn("radon_radial: partial integrals fail the Cauchy test; the integral diverges",
                              DivergenceWarning, stacklevel=2)
                val = math.inf
            elif ratio < 1:
                # geometric tail of the ladder increments
                val += steps[-1] * ratio / (1 - ratio)
        out[i] = sig * val
    return out.reshape(np.shape(t)) if np.ndim(t) else out[0]


# --------------------------------------------------------------------------
# transversal transform and its dual


@dataclass(frozen=True, repr=False)
class Sheared(TestFunction):
    """B_1 f: x -> f(x', x_n - |x'|^2).  Its support is unbounded, so transversal
    quadrature uses a window around the origin in y' instead of a ball."""

    base: TestFunction = None

    @property
    def n(self):
        return self.base.n

    @property
    def kind(self):
        return self.base.kind

    @property
    def real(self):
        return self.base.real

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        y = x.copy()
        y[..., -1] = x[..., -1] - np.sum(x[..., :-1] ** 2, axis=-1)
        return self.base(y)

    @property
    def radius(self):
        return math.inf

    @property
    def step(self):
        return self.base.step

    @property
    def dsl(self):
        return f"{self.base.dsl}@B1"


def transversal_of(fn, n: int, radius: float, step: float, x, sheared: bool = False):
    """Tf at points x (shape (..., n)) for a callable supported in the ball of ``radius``.

    Nodes are centred at the foot y'* = -x_n x' / (1 + |x'|^2) of the
    perpendicular from the origin; along x' the step shrinks by
    sqrt(1 + |x'|^2), which keeps the node count fixed.  With
    ``sheared=True`` the callable is B_1 g for g supported in the ball, and
    nodes cover |y'| <= radius with the step reduced by the larger
    oscillation speed of the sheared integrand.
    """
    x = np.asarray(x, dtype=float)
    shape = x.shape[:-1]
    X = x.reshape(-1, n)
    xp, xn = X[:, :-1], X[:, -1]
    r2 = np.sum(xp ** 2, axis=1)
    out = np.empty(len(X), dtype=complex)
    if n == 2:
        if sheared:
            speed = 1.0 + np.abs(xp[:, 0]) + 2.0 * radius
            k = int(math.ceil(radius / step * speed.max()))
            u = np.linspace(-radius, radius, 2 * k + 1)
            hu = u[1] - u[0]
            chunk = max(1, 300000 // len(u))
            for i in range(0, len(X), chunk):
                sl = slice(i, i + chunk)
                y1 = np.broadcast_to(u, (len(xn[sl]), len(u)))
                yn = xn[sl, None] + xp[sl, 0:1] * y1
                out[sl] = np.sum(fn(np.stack([y1, yn], axis=-1)), axis=1) * hu
        else:
            s, hs = _line_nodes(radius, step)
            scale = 1.0 / np.sqrt(1.0 + r2)
            foot = -xn * xp[:, 0] / (1.0 + r2)
            chunk = max(1, 300000 // len(s))
            for i in range(0, len(X), chunk):
                sl = slice(i, i + chunk)
                y1 = foot[sl, None] + scale[sl, None] * s[None, :]
                yn = xn[sl, None] + xp[sl, 0:1] * y1
                vals = fn(np.stack([y1, yn], axis=-1))
                out[sl] = np.sum(vals, axis=1) * hs * scale[sl]
    elif n == 3:
        if sheared:
            raise NotImplementedError("sheared transversal quadrature is provided for n = 2")
        s, hs = _line_nodes(radius, step)
        A, B = np.meshgrid(s, s, indexing="ij")
        inside = (A ** 2 + B ** 2) <= (radius + 2 * hs) ** 2
        a, b = A[inside], B[inside]
        nrm = np.sqrt(r2)
        chunk = max(1, 300000 // len(a))
        for i in range(0, len(X), chunk):
            sl = slice(i, i + chunk)
            p = xp[sl]
            m = len(p)
            nr = nrm[sl]
            e1 = np.where(nr[:, None] > 0, p / np.where(nr > 0, nr, 1.0)[:, None], np.array([1.0, 0.0]))
            e2 = np.stack([-e1[:, 1], e1[:, 0]], axis=1)
            scale = 1.0 / np.sqrt(1.0 + r2[sl])
            foot = -(xn[sl] / (1.0 + r2[sl]))[:, None] * p
            y = (foot[:, None, :] + (scale[:, None] * a[None, :])[..., None] * e1[:, None, :]
                 + b[None, :, None] * e2[:, None, :])
            yn = xn[sl, None] + np.einsum("mk,mjk->mj", p, y)
            vals = fn(np.concatenate([y, yn[..., None]], axis=-1))
            out[sl] = np.sum(vals, axis=1) * hs * hs * scale
            del m
    else:
        raise ValueError("transversal supports n = 2, 3")
    return out.reshape(shape)


def transversal(f: TestFunction, x, L: float | None = None):
    """Transversal Radon transform Tf(x', x_n) by quadrature."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != f.n:
        raise ValueError("point dimension mismatch")
    if isinstance(f, Sheared):
        R = _truncation(f.base, L)
        out = transversal_of(f, f.n, R, f.base.step, x, sheared=True)
    else:
        R = _truncation(f, L)
        if not math.isfinite(f.radius) or R < f.radius:
            e = np.zeros(f.n)
            e[0] = R
            _decay_check(f, e[None, :], _peak(f), "transversal")
        out = transversal_of(f, f.n, R, f.step, x)
    return out.real if f.real else out


def transversal_dual(g: TestFunction, x, L: float | None = None):
    """T*g(x', x_n) = int g(y', x_n - x'.y') dy' = Tg(-x', x_n)."""
    x = np.array(x, dtype=float)
    x[..., :-1] *= -1.0
    return transversal(g, x, L)


# --------------------------------------------------------------------------
# parabolic transform


def parabolic(f: TestFunction, x, L: float | None = None, nodes: int = 24):
    """Parabolic Radon transform Pf(x', x_n) = int f(x' - y', x_n - |y'|^2) dy'.

    n = 2: y' = +-rho, composite Gauss-Legendre in rho over the interval where
    both |x' - y'| <= L and |x_n - rho^2| <= L.  n = 3: polar coordinates in y'.
    """
    R = _truncation(f, L)
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != f.n:
        raise ValueError("point dimension mismatch")
    shape = x.shape[:-1]
    X = x.reshape(-1, f.n)
    gl, gw = np.polynomial.legendre.leggauss(nodes)
    out = np.zeros(len(X), dtype=complex)
    panel = 6.0 * f.step
    for i, (xp, xn) in enumerate(zip(X[:, :-1], X[:, -1])):
        if xn + R <= 0:
            continue
        rlo = math.sqrt(max(0.0, xn - R))
        rhi = math.sqrt(xn + R)
        if f.n == 2:
            for om in (1.0, -1.0):
                lo = max(rlo, om * xp[0] - R)
                hi = min(rhi, om * xp[0] + R)
                if hi <= lo:
                    continue
                m = max(1, int(math.ceil((hi - lo) * max(1.0, 2 * hi) / panel)))
                edges = np.linspace(lo, hi, m + 1)
                mid = 0.5 * (edges[1:] + edges[:-1])
                half = 0.5 * (edges[1:] - edges[:-1])
                rho = (mid[:, None] + half[:, None] * gl[None, :]).ravel()
                w = (half[:, None] * gw[None, :]).ravel()
                pts = np.stack([xp[0] - om * rho, xn - rho ** 2], axis=-1)
                out[i] += np.sum(w * f(pts))
        elif f.n == 3:
            m = max(1, int(math.ceil((rhi - rlo) * max(1.0, 2 * rhi) / panel)))
            edges = np.linspace(rlo, rhi, m + 1)
            mid = 0.5 * (edges[1:] + edges[:-1])
            half = 0.5 * (edges[1:] - edges[:-1])
            rho = (mid[:, None] + half[:, None] * gl[None, :]).ravel()
            w = (half[:, None] * gw[None, :]).ravel() * rho
            nphi = int(64 + math.ceil(4 * rhi * (np.linalg.norm(xp) + R) / f.step))
            phi = 2 * np.pi * np.arange(nphi) / nphi
            yp = rho[:, None, None] * np.stack([np.cos(phi), np.sin(phi)], axis=-1)[None, :, :]
            pts = np.concatenate([xp - yp, (xn - rho ** 2)[:, None, None] * np.ones((1, nphi, 1))], axis=-1)
            out[i] = np.sum(w[:, None] * f(pts)) * (2 * np.pi / nphi)
        else:
            raise ValueError("parabolic supports n = 2, 3")
    out = out.reshape(shape)
    return out.real if f.real else out


# --------------------------------------------------------------------------
# dual Radon transform


def radon_dual(phi: CylinderField, x, normalized: bool = False, interp: str = "linear"):
    """(R* phi)(x) = sum_i w_i phi(theta_i, x.theta_i).

    ``normalized=True`` divides by the sphere area, i.e. averages over all
    hyperplanes through x.  ``interp`` is 'linear' or 'cubic' in the offset.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != phi.n:
        raise ValueError("point dimension mismatch")
    t = phi.offsets.nodes
    proj = x @ phi.directions.directions.T                       # (..., M)
    if np.any(proj < t[0] - 1e-12) or np.any(proj > t[-1] + 1e-12):
        raise ValueError("x.theta falls outside the offset grid")
    out = np.zeros(x.shape[:-1], dtype=np.result_type(phi.values.dtype, float))
    for i, w in enumerate(phi.directions.weights):
        row = phi.values[i]
        if interp == "linear":
            if np.iscomplexobj(row):
                v = np.interp(proj[..., i], t, row.real) + 1j * np.interp(proj[..., i], t, row.imag)
            else:
                v = np.interp(proj[..., i], t, row)
        elif interp == "cubic":
            v = CubicSpline(t, row)(proj[..., i])
        else:
            raise ValueError("interp must be 'linear' or 'cubic'")
        out = out + w * v
    if normalized:
        out = out / sphere_area(phi.n - 1)
    return out


# --------------------------------------------------------------------------
# coordinate maps


def x_from_theta(theta, t, floor: float = EQUATOR_FLOOR):
    """(theta, t) -> x = (-theta'/theta_n, t/theta_n); rejects |theta_n| < floor."""
    theta = np.asarray(theta, dtype=float)
    tn = theta[..., -1]
    if np.any(np.abs(tn) < floor):
        raise ValueError(f"direction within {floor:g} of the equator theta_n = 0")
    t = np.asarray(t, dtype=float)
    xp = -theta[..., :-1] / tn[..., None]
    xn = t / tn
    shape = np.broadcast_shapes(xp.shape[:-1], xn.shape)
    xp = np.broadcast_to(xp, shape + xp.shape[-1:])
    xn = np.broadcast_to(xn, shape)[..., None]
    return np.concatenate([xp, xn], axis=-1)


def theta_from_x(x):
    """x -> (theta, t) = ((x' - e_n)/sqrt(1+|x'|^2), -x_n/sqrt(1+|x'|^2))."""
    x = np.asarray(x, dtype=float)
    s = np.sqrt(1.0 + np.sum(x[..., :-1] ** 2, axis=-1))
    theta = np.concatenate([x[..., :-1], -np.ones(x.shape[:-1] + (1,))], axis=-1) / s[..., None]
    return theta, -x[..., -1] / s


def lambda_map(phi, alpha=0.0, floor: float = EQUATOR_FLOOR):
    """Lambda_alpha: a function phi(x) on R^n -> psi(theta, t) = |theta_n|^{alpha-1} phi(x(theta, t))."""
    alpha = complex(alpha)

    def psi(theta, t):
        x = x_from_theta(theta, t, floor)
        tn = np.abs(np.asarray(theta, dtype=float)[..., -1])
        fac = tn ** (alpha - 1)
        return (fac.real if alpha.imag == 0 else fac) * phi(x)

    return psi


def lambda_inv(psi, alpha=0.0):
    """Lambda_alpha^{-1}: psi(theta, t) -> phi(x) = (1+|x'|^2)^{(alpha-1)/2} psi(theta(x), t(x)).

    Lambda o Lambda^{-1} is the identity on even functions psi(theta,t) = psi(-theta,-t)
    (the range of R); Lambda^{-1} o Lambda is the identity on all functions.
    """
    alpha = complex(alpha)

    def phi(x):
        x = np.asarray(x, dtype=float)
        theta, t = theta_from_x(x)
        fac = (1.0 + np.sum(x[..., :-1] ** 2, axis=-1)) ** ((alpha - 1) / 2)
        return (fac.real if alpha.imag == 0 else fac) * psi(theta, t)

    return phi


def _shift_last(x, shift):
    y = np.array(x, dtype=float, copy=True)
    y[..., -1] += shift
    return y


def b1(f):
    """(B_1 f)(x) = f(x', x_n - |x'|^2).  A corpus function maps to :class:`Sheared`."""
    if isinstance(f, TestFunction):
        return Sheared(f)
    return lambda x: f(_shift_last(x, -np.sum(np.asarray(x)[..., :-1] ** 2, axis=-1)))


def b1_inv(u):
    """(B_1^{-1} u)(x) = u(x', x_n + |x'|^2)."""
    return lambda x: u(_shift_last(x, np.sum(np.asarray(x)[..., :-1] ** 2, axis=-1)))


def b2(F):
    """(B_2 F)(x) = F(2x', x_n - |x'|^2)."""
    def out(x):
        x = np.asarray(x, dtype=float)
        y = _shift_last(x, -np.sum(x[..., :-1] ** 2, axis=-1))
        y[..., :-1] *= 2.0
        return F(y)
    return out


def b2_inv(v):
    """(B_2^{-1} v)(x) = v(x'/2, x_n + |x'|^2/4)."""
    def out(x):
        x = np.asarray(x, dtype=float)
        y = _shift_last(x, np.sum(x[..., :-1] ** 2, axis=-1) / 4.0)
        y[..., :-1] /= 2.0
        return v(y)
    return out


_MAPS = {
    "lambda": lambda g, a: lambda_map(g, a),
    "lambda_inv": lambda g, a: lambda_inv(g, a),
    "b1": lambda g, a: b1(g),
    "b1_inv": lambda g, a: b1_inv(g),
    "b2": lambda g, a: b2(g),
    "b2_inv": lambda g, a: b2_inv(g),
}


def coordinate_map(kind: str, alpha, g):
    """Dispatch to one of the reparametrizations by name."""
    if kind not in _MAPS:
        raise ValueError(f"unknown map {kind!r}; choose from {sorted(_MAPS)}")
    return _MAPS[kind](g, alpha)
