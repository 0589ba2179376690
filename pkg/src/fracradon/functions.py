"""Analytic test functions, sampling grids and sampled fields.

Every downstream computation draws its inputs from the small corpus defined
here.  Gaussians and band-limited functions are represented internally as
finite sums of (possibly complex-centred) Gaussian atoms

    c * exp(-(x - z0).(x - z0) / (2 sigma^2)),

which gives closed forms for derivatives, Fourier transforms and hyperplane
integrals.  Those closed forms are the oracles for the quadrature code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
import math
import re

import numpy as np
from numpy.polynomial import hermite as _herm
from numpy.polynomial import polynomial as _poly
from scipy import integrate

__all__ = [
    "Grid1D",
    "GridND",
    "SampledField",
    "TestFunction",
    "Gaussian",
    "Mollifier",
    "LogDecay",
    "BandLimited",
    "Dilated",
    "NthDerivative",
    "parse_function",
    "evaluate",
    "sample",
    "gaussian_radon_oracle",
    "sphere_area",
    "default_grid",
]


def sphere_area(k: int) -> float:
    """Surface area of the unit sphere S^k in R^{k+1}."""
    m = k + 1
    return 2.0 * math.pi ** (m / 2) / math.gamma(m / 2)


# --------------------------------------------------------------------------
# grids and sampled data


@dataclass(frozen=True)
class Grid1D:
    """Uniform lattice ``lo + k*h``, ``0 <= k < count``, with ``h = (hi-lo)/(count-1)``."""

    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)) or not self.lo < self.hi:
            raise ValueError(f"Grid1D needs lo < hi, got [{self.lo}, {self.hi}]")
        if int(self.count) != self.count or self.count < 2:
            raise ValueError(f"Grid1D needs count >= 2, got {self.count}")
        object.__setattr__(self, "count", int(self.count))

    @property
    def h(self) -> float:
        return (self.hi - self.lo) / (self.count - 1)

    @cached_property
    def nodes(self) -> np.ndarray:
        return self.lo + self.h * np.arange(self.count)

    @classmethod
    def centered(cls, half_width: float, count: int) -> "Grid1D":
        return cls(-half_width, half_width, count)

    @classmethod
    def with_step(cls, lo: float, hi: float, step: float, anchor: str = "hi") -> "Grid1D":
        """Grid of spacing at most ``step`` that contains ``hi`` (or ``lo``) exactly."""
        count = max(int(math.ceil((hi - lo) / step)) + 1, 2)
        return cls(lo, hi, count)


@dataclass(frozen=True)
class GridND:
    """Tensor product of :class:`Grid1D` axes (n = 1, 2 or 3)."""

    axes: tuple

    def __post_init__(self):
        axes = tuple(self.axes)
        if not 1 <= len(axes) <= 3:
            raise ValueError("GridND supports dimensions 1..3")
        object.__setattr__(self, "axes", axes)

    @property
    def n(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> tuple:
        return tuple(a.count for a in self.axes)

    @property
    def spacing(self) -> tuple:
        return tuple(a.h for a in self.axes)

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    def is_uniform(self, rtol: float = 1e-12) -> bool:
        h = np.array(self.spacing)
        return bool(np.all(np.abs(h - h[0]) <= rtol * h[0]))

    def require_uniform(self):
        if not self.is_uniform():
            raise ValueError(f"operation needs a uniform lattice, spacings are {self.spacing}")

    def points(self) -> np.ndarray:
        """Nodes as an array of shape ``shape + (n,)`` in row-major (ij) order."""
        mesh = np.meshgrid(*[a.nodes for a in self.axes], indexing="ij")
        return np.stack(mesh, axis=-1)

    @classmethod
    def cube(cls, n: int, lo: float, hi: float, count: int) -> "GridND":
        return cls(tuple(Grid1D(lo, hi, count) for _ in range(n)))


def default_grid(n: int) -> GridND:
    """Desk-scale default lattice: 512^2 on [-8,8]^2 or 96^3 on [-6,6]^3."""
    if n == 2:
        return GridND.cube(2, -8.0, 8.0, 512)
    if n == 3:
        return GridND.cube(3, -6.0, 6.0, 96)
    if n == 1:
        return GridND((Grid1D(-8.0, 8.0, 2 ** 14),))
    raise ValueError("default grids exist for n = 1, 2, 3")


@dataclass
class SampledField:
    """Values of a function on a :class:`GridND`, with provenance metadata."""

    grid: GridND
    values: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values)
        if self.values.shape != self.grid.shape:
            raise ValueError(f"values shape {self.values.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("SampledField values must be finite")

    @property
    def n(self) -> int:
        return self.grid.n

    def integral(self) -> complex:
        return self.values.sum() * self.grid.cell_volume

    def lp_norm(self, p: float) -> float:
        return float((np.sum(np.abs(self.values) ** p) * self.grid.cell_volume) ** (1.0 / p))


# --------------------------------------------------------------------------
# Gaussian atoms


def _num(v) -> str:
    """Shortest round-trip text of a float, without a trailing '.0'."""
    r = repr(float(v))
    return r[:-2] if r.endswith(".0") else r


def _laplacian_polys(m: int, c: float, n: int):
    """Polynomials P_0..P_m with Delta^k g(q) = P_k(q) g(q), g = exp(-c q), q = |z|^2."""
    polys = [np.array([1.0])]
    for _ in range(m):
        p = polys[-1]
        d1 = _poly.polyder(p) if len(p) > 1 else np.array([0.0])
        d2 = _poly.polyder(d1) if len(d1) > 1 else np.array([0.0])
        inner = _poly.polyadd(_poly.polysub(d2, 2 * c * d1), c * c * p)
        term1 = _poly.polymulx(4.0 * inner)
        term2 = 2.0 * n * _poly.polysub(d1, c * p)
        polys.append(_poly.polyadd(term1, term2))
    return polys


class _Atoms:
    """Sum of Gaussian atoms exp(logamp - (x-z0).(x-z0)/(2 sigma^2))."""

    def __init__(self, n, sigma, centers, logamp, real):
        self.n = n
        self.sigma = float(sigma)
        self.centers = np.asarray(centers, dtype=complex).reshape(-1, n)
        self.logamp = np.asarray(logamp, dtype=complex).reshape(-1)
        self.real = real

    def _finish(self, total):
        return total.real if self.real else total

    def _each(self, x):
        x = np.asarray(x, dtype=float)
        c = 1.0 / (2.0 * self.sigma ** 2)
        for z0, la in zip(self.centers, self.logamp):
            z = x - z0
            q = np.einsum("...i,...i->...", z, z)
            yield z, q, np.exp(la - c * q)

    def value(self, x):
        total = 0j
        for _, _, e in self._each(x):
            total = total + e
        return self._finish(np.asarray(total))

    def dn(self, x, k):
        s = self.sigma * math.sqrt(2.0)
        coef = np.zeros(k + 1)
        coef[k] = 1.0
        total = 0j
        for z, _, e in self._each(x):
            total = total + e * (-1.0 / s) ** k * _herm.hermval(z[..., -1] / s, coef)
        return self._finish(np.asarray(total))

    def laplacian_power(self, x, m):
        c = 1.0 / (2.0 * self.sigma ** 2)
        pm = _laplacian_polys(m, c, self.n)[m]
        total = 0j
        for _, q, e in self._each(x):
            total = total + e * _poly.polyval(q, pm)
        return self._finish(np.asarray(total))

    def grad_laplacian(self, x, m):
        c = 1.0 / (2.0 * self.sigma ** 2)
        pm = _laplacian_polys(m, c, self.n)[m]
        dp = _poly.polysub(_poly.polyder(pm) if len(pm) > 1 else np.array([0.0]), c * pm)
        total = 0j
        for z, q, e in self._each(x):
            total = total + (2.0 * z) * (e * _poly.polyval(q, dp))[..., None]
        return self._finish(np.asarray(total))

    def fourier(self, xi):
        xi = np.asarray(xi, dtype=float)
        pref = (2 * math.pi) ** (self.n / 2) * self.sigma ** self.n
        r2 = np.einsum("...i,...i->...", xi, xi)
        total = 0j
        for z0, la in zip(self.centers, self.logamp):
            total = total + np.exp(la + 1j * (xi @ z0) - 0.5 * self.sigma ** 2 * r2)
        return pref * np.asarray(total)

    def radon(self, theta, t):
        theta = np.asarray(theta, dtype=float)
        t = np.asarray(t, dtype=float)
        pref = (2 * math.pi) ** ((self.n - 1) / 2) * self.sigma ** (self.n - 1)
        c = 1.0 / (2.0 * self.sigma ** 2)
        total = 0j
        for z0, la in zip(self.centers, self.logamp):
            u = t - theta @ z0
            total = total + np.exp(la - c * u * u)
        return self._finish(pref * np.asarray(total))

    def mass(self):
        pref = (2 * math.pi) ** (self.n / 2) * self.sigma ** self.n
        return self._finish(np.asarray(pref * np.sum(np.exp(self.logamp))))[()]


# --------------------------------------------------------------------------
# test functions


class TestFunction:
    """Symbolic descriptor of an analytic function on R^n.

    Subclasses provide pointwise evaluation (``f(x)`` with ``x`` of shape
    ``(..., n)``), an effective support radius and a quadrature step, and,
    where a closed form exists, derivatives, Fourier transform and mass.
    """

    __test__ = False  # keep pytest from collecting this class

    n: int
    kind: str = "abstract"
    real: bool = True

    # -- required interface
    def __call__(self, x):
        raise NotImplementedError

    @property
    def radius(self) -> float:
        """Radius outside which |f| is below 1e-16 of its peak (inf if none)."""
        raise NotImplementedError

    @property
    def step(self) -> float:
        """Trapezoid step that resolves f along lines to near machine precision."""
        raise NotImplementedError

    @property
    def dsl(self) -> str:
        raise NotImplementedError

    # -- optional closed forms
    def dn(self, x, k: int):
        """k-th partial derivative in the last variable."""
        raise NotImplementedError(f"{self.kind}: no analytic derivative")

    def laplacian_power(self, x, m: int):
        raise NotImplementedError(f"{self.kind}: no analytic Laplacian")

    def grad_laplacian(self, x, m: int):
        raise NotImplementedError(f"{self.kind}: no analytic gradient")

    def fourier(self, xi):
        raise NotImplementedError(f"{self.kind}: no closed-form Fourier transform")

    def radon_exact(self, theta, t):
        raise NotImplementedError(f"{self.kind}: no closed-form Radon transform")

    def mass(self) -> float:
        raise NotImplementedError(f"{self.kind}: no closed-form integral")

    def has_derivatives(self) -> bool:
        try:
            self.dn(np.zeros((1, self.n)), 1)
        except NotImplementedError:
            return False
        return True

    def dilated(self, lam_prime: float, lam_n: float) -> "Dilated":
        return Dilated(self, lam_prime, lam_n)

    def _check_points(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.n:
            raise ValueError(f"point dimension {x.shape[-1]} does not match function dimension {self.n}")
        return x

    def __repr__(self):
        return f"<{type(self).__name__} {self.dsl} n={self.n}>"


@dataclass(frozen=True, repr=False)
class Gaussian(TestFunction):
    """exp(-|x|^2 / a^2)."""

    n: int = 2
    a: float = 1.0
    kind = "gaussian"

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("gaussian scale a must be positive")
        if self.n < 1:
            raise ValueError("dimension must be >= 1")

    @cached_property
    def _atoms(self):
        return _Atoms(self.n, self.a / math.sqrt(2.0), np.zeros((1, self.n)), [0.0], True)

    def __call__(self, x):
        x = self._check_points(x)
        return np.exp(-np.einsum("...i,...i->...", x, x) / self.a ** 2)

    @property
    def radius(self):
        return self.a * math.sqrt(math.log(1e17))

    @property
    def step(self):
        return self.a / 3.0

    @property
    def dsl(self):
        return f"gaussian:a={_num(self.a)}"

    def dn(self, x, k):
        return self._atoms.dn(self._check_points(x), k)

    def laplacian_power(self, x, m):
        return self._atoms.laplacian_power(self._check_points(x), m)

    def grad_laplacian(self, x, m):
        return self._atoms.grad_laplacian(self._check_points(x), m)

    def fourier(self, xi):
        return self._atoms.fourier(xi).real

    def radon_exact(self, theta, t):
        return self._atoms.radon(theta, t)

    def profile(self, r):
        return np.exp(-(np.asarray(r, dtype=float) / self.a) ** 2)

    def mass(self):
        return (math.pi * self.a ** 2) ** (self.n / 2)

    def lp_norm(self, p: float) -> float:
        return (math.pi * self.a ** 2 / p) ** (self.n / (2 * p))


def _bump_integral(n: int) -> float:
    val, _ = integrate.quad(lambda r: math.exp(-1.0 / (1.0 - r * r)) * r ** (n - 1), 0.0, 1.0,
                            epsabs=1e-16, epsrel=1e-13, limit=200)
    return sphere_area(n - 1) * val


@dataclass(frozen=True, repr=False)
class Mollifier(TestFunction):
    """C eps^-n exp(-eps^2/(eps^2 - |x|^2)) on |x| < eps, normalised to unit mass."""

    n: int = 2
    eps: float = 1.0
    kind = "mollifier"

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError("mollifier eps must be positive")

    @cached_property
    def constant(self) -> float:
        return 1.0 / _bump_integral(self.n)

    def __call__(self, x):
        x = self._check_points(x)
        r2 = np.einsum("...i,...i->...", x, x) / self.eps ** 2
        inside = r2 < 1.0
        out = np.zeros(r2.shape)
        out[inside] = np.exp(-1.0 / (1.0 - r2[inside]))
        return out * (self.constant / self.eps ** self.n)

    @property
    def radius(self):
        return self.eps

    @property
    def step(self):
        return self.eps / 48.0

    @property
    def dsl(self):
        return f"mollifier:eps={_num(self.eps)}"

    def mass(self):
        return 1.0

    def profile(self, r):
        r = np.asarray(r, dtype=float) / self.eps
        out = np.zeros(r.shape)
        inside = np.abs(r) < 1
        out[inside] = np.exp(-1.0 / (1.0 - r[inside] ** 2))
        return out * (self.constant / self.eps ** self.n)


@dataclass(frozen=True, repr=False)
class LogDecay(TestFunction):
    """(2+|x|)^{-n/p} / log(2+|x|): in L^p but borderline for Radon-type integrals."""

    n: int = 2
    p: float = 2.0
    kind = "logdecay"

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("logdecay exponent p must be >= 1")

    def profile(self, r):
        s = 2.0 + np.abs(np.asarray(r, dtype=float))
        return s ** (-self.n / self.p) / np.log(s)

    def __call__(self, x):
        x = self._check_points(x)
        return self.profile(np.sqrt(np.einsum("...i,...i->...", x, x)))

    @property
    def radius(self):
        return math.inf

    @property
    def step(self):
        return 0.05

    @property
    def dsl(self):
        return f"logdecay:p={_num(self.p)},n={self.n}"


@dataclass(frozen=True, repr=False)
class BandLimited(TestFunction):
    """Stand-in for the Semyanistyi-Lizorkin class.

    Unit-amplitude cosines with seeded random phases on lattice frequencies
    ``k = dk * integer vector`` with ``|k_n| >= r0 + margin`` and ``|k| <= r1``,
    multiplied by the envelope ``exp(-|x|^2 / (2 width^2))``.  The margin
    ``5.5 / width`` pushes the Gaussian tails of every spectral bump below
    1e-12 of the energy inside the band ``|xi_n| < r0``.
    """

    n: int = 2
    r0: float = 1.0
    r1: float = 3.0
    seed: int = 7
    width: float = 6.0
    dk: float = 1.0
    kind = "bandlimited"

    def __post_init__(self):
        if not 0 < self.r0 < self.r1:
            raise ValueError("bandlimited needs 0 < r0 < r1")
        if self.width <= 0 or self.dk <= 0:
            raise ValueError("bandlimited width and dk must be positive")
        if len(self.modes) == 0:
            raise ValueError("no lattice frequency fits the band; lower r0, raise r1 or width")

    @property
    def margin(self) -> float:
        return 5.5 / self.width

    @cached_property
    def modes(self) -> np.ndarray:
        kmax = int(math.floor(self.r1 / self.dk))
        rng1 = np.arange(-kmax, kmax + 1) * self.dk
        mesh = np.meshgrid(*([rng1] * self.n), indexing="ij")
        ks = np.stack([m.ravel() for m in mesh], axis=-1)
        keep = (ks[:, -1] >= self.r0 + self.margin - 1e-12) & (np.linalg.norm(ks, axis=1) <= self.r1 + 1e-12)
        return ks[keep]

    @cached_property
    def phases(self) -> np.ndarray:
        rng = np.random.default_rng(self.seed)
        return rng.uniform(0.0, 2.0 * math.pi, size=len(self.modes))

    @cached_property
    def _atoms(self):
        # cos(k.x - phi) e^{-|x|^2/2s^2} = sum over +-k of exp(-|x|^2/2s^2 -+ i(k.x - phi)) / 2
        s2 = self.width ** 2
        centers, logamp = [], []
        for k, ph in zip(self.modes, self.phases):
            base = -0.5 * s2 * float(k @ k) + math.log(0.5)
            centers.append(-1j * s2 * k)
            logamp.append(base + 1j * ph)
            centers.append(1j * s2 * k)
            logamp.append(base - 1j * ph)
        return _Atoms(self.n, self.width, np.array(centers), np.array(logamp), True)

    def __call__(self, x):
        x = self._check_points(x)
        env = np.exp(-np.einsum("...i,...i->...", x, x) / (2 * self.width ** 2))
        acc = np.zeros(x.shape[:-1])
        for k, ph in zip(self.modes, self.phases):
            acc = acc + np.cos(x @ k - ph)
        return acc * env

    @property
    def radius(self):
        return self.width * math.sqrt(2 * math.log(1e16))

    @property
    def step(self):
        return math.pi / (2.0 * (self.r1 + 8.0 / self.width))

    @property
    def dsl(self):
        return (f"bandlimited:r0={_num(self.r0)},r1={_num(self.r1)},seed={self.seed},"
                f"width={_num(self.width)},dk={_num(self.dk)}")

    def dn(self, x, k):
        return self._atoms.dn(self._check_points(x), k)

    def laplacian_power(self, x, m):
        return self._atoms.laplacian_power(self._check_points(x), m)

    def grad_laplacian(self, x, m):
        return self._atoms.grad_laplacian(self._check_points(x), m)

    def fourier(self, xi):
        return self._atoms.fourier(xi)

    def radon_exact(self, theta, t):
        return self._atoms.radon(theta, t)

    def mass(self):
        return float(self._atoms.mass())


@dataclass(frozen=True, repr=False)
class Dilated(TestFunction):
    """x -> base(lam_prime * x', lam_n * x_n); a negative lam_n reflects x_n."""

    base: TestFunction = None
    lam_prime: float = 1.0
    lam_n: float = 1.0

    def __post_init__(self):
        if self.lam_prime <= 0 or self.lam_n == 0:
            raise ValueError("dilation factors must be nonzero (lam_prime > 0)")

    @property
    def n(self):
        return self.base.n

    @property
    def kind(self):
        return self.base.kind

    @property
    def real(self):
        return self.base.real

    @property
    def _scale(self):
        return np.array([self.lam_prime] * (self.n - 1) + [self.lam_n])

    def __call__(self, x):
        return self.base(self._check_points(x) * self._scale)

    @property
    def radius(self):
        return self.base.radius / min(self.lam_prime, abs(self.lam_n))

    @property
    def step(self):
        return self.base.step / max(self.lam_prime, abs(self.lam_n))

    @property
    def dsl(self):
        return f"{self.base.dsl}@dilate({_num(self.lam_prime)},{_num(self.lam_n)})"

    def dn(self, x, k):
        return self.lam_n ** k * self.base.dn(self._check_points(x) * self._scale, k)

    def _isotropic(self):
        if self.lam_prime != abs(self.lam_n):
            raise NotImplementedError("Laplacian of an anisotropic dilation is not provided")

    def laplacian_power(self, x, m):
        self._isotropic()
        return self.lam_prime ** (2 * m) * self.base.laplacian_power(self._check_points(x) * self._scale, m)

    def grad_laplacian(self, x, m):
        self._isotropic()
        g = self.base.grad_laplacian(self._check_points(x) * self._scale, m)
        return self.lam_prime ** (2 * m) * g * self._scale

    def fourier(self, xi):
        xi = np.asarray(xi, dtype=float)
        jac = self.lam_prime ** (self.n - 1) * abs(self.lam_n)
        return self.base.fourier(xi / self._scale) / jac

    def mass(self):
        return self.base.mass() / (self.lam_prime ** (self.n - 1) * abs(self.lam_n))


@dataclass(frozen=True, repr=False)
class NthDerivative(TestFunction):
    """The analytic k-th derivative in x_n of a corpus function, as a function."""

    base: TestFunction = None
    k: int = 1

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
        return self.base.dn(x, self.k)

    @property
    def radius(self):
        return self.base.radius

    @property
    def step(self):
        return self.base.step

    @property
    def dsl(self):
        return f"{self.base.dsl}@dn{self.k}"

    def dn(self, x, k):
        return self.base.dn(x, self.k + k)


# --------------------------------------------------------------------------
# DSL and module-level operations

_KINDS = {
    "gaussian": (Gaussian, {"a": float}),
    "mollifier": (Mollifier, {"eps": float}),
    "logdecay": (LogDecay, {"p": float}),
    "bandlimited": (BandLimited, {"r0": float, "r1": float, "seed": int, "width": float, "dk": float}),
}


def parse_function(text: str, n: int | None = None) -> TestFunction:
    """Parse a DSL string such as ``gaussian:a=1`` or ``bandlimited:r0=1,r1=3,seed=7``.

    An ``n=`` entry in the string overrides the ``n`` argument (default 2).
    """
    m = re.fullmatch(r"\s*([a-z]+)\s*(?::(.*))?", text)
    if not m or m.group(1) not in _KINDS:
        raise ValueError(f"unknown function {text!r}; kinds are {sorted(_KINDS)}")
    cls, allowed = _KINDS[m.group(1)]
    kwargs = {}
    body = (m.group(2) or "").strip()
    if body:
        for item in body.split(","):
            if "=" not in item:
                raise ValueError(f"malformed parameter {item!r} in {text!r}")
            key, val = (s.strip() for s in item.split("=", 1))
            if key == "n":
                n = int(val)
                continue
            if key not in allowed:
                raise ValueError(f"{m.group(1)} has no parameter {key!r}")
            try:
                kwargs[key] = allowed[key](val)
            except ValueError as exc:
                raise ValueError(f"bad value for {key!r} in {text!r}") from exc
    return cls(n=2 if n is None else n, **kwargs)


def evaluate(f: TestFunction, x) -> complex:
    """Exact value of ``f`` at a single point ``x``."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != f.n:
        raise ValueError(f"point must have length {f.n}")
    return complex(np.asarray(f(x[None, :]))[0])


def sample(f: TestFunction, grid: GridND) -> SampledField:
    """Sample ``f`` at every node of ``grid`` (row-major order)."""
    if grid.n != f.n:
        raise ValueError(f"grid dimension {grid.n} does not match function dimension {f.n}")
    values = np.asarray(f(grid.points()))
    return SampledField(grid, values, {"function": f.dsl, "n": f.n})


def gaussian_radon_oracle(n: int, t):
    """Radon transform of exp(-|x|^2) in R^n: pi^{(n-1)/2} exp(-t^2), any direction."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return math.pi ** ((n - 1) / 2) * np.exp(-np.asarray(t, dtype=float) ** 2)
