"""Fractional Radon-type integrals R_+^a, T_+^a, T*_+^a and P_+^a for complex order.

Every operator here is a one-dimensional Riemann-Liouville integral applied
along a family of slices of a Radon-type transform:

    (R_+^a f)(theta, t)  = (I^a_+ R_theta f)(t)
    (T_+^a f)(x', x_n)   = (I^a_+ T_x' f)(x_n)
    (T*_+^a g)(x', x_n)  = (I^a_- T*_x' g)(x_n)
    (P_+^a f)(x', x_n)   = (I^a_+ P_x' f)(x_n)

A slice is sampled on a uniform grid covering the support of the
transform along the line, then handed to :mod:`frac1d`.  Four evaluation
methods are offered:

    direct         product integration, Re a > 0
    continued      analytic continuation through exact slice derivatives
    hypersingular  Marchaud difference integral, real a in [(1-n)/2, 0)
    spectral       multiplier (-+i xi)^{-a} on the slice DFT (band-limited input)

The field-level part (:class:`TransversalField`) evaluates T and T* through
the slice theorem on whole grids, which is what the inversion and
composition identities need.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np
from scipy.interpolate import CubicSpline

from . import transforms as tr
from .frac1d import (
    FracOrder, Signal, _as_order, fourier_symbol, marchaud_exponents,
    marchaud_truncated, richardson, rl_continued, rl_integral,
)
from .functions import Grid1D, GridND, NthDerivative, SampledField, TestFunction, sample
from .spectral import apply_multiplier, dft_1d, idft_1d

__all__ = [
    "METHODS",
    "FracTransformRequest",
    "t_plus",
    "t_plus_slice",
    "t_star_plus",
    "r_plus",
    "r_plus_slice",
    "p_plus",
    "t_plus_hypersingular",
    "lambda_conjugate",
    "cauchy_circle",
    "TransversalField",
    "transversal_field",
    "invert",
    "compose",
    "composition_rhs",
    "t_field",
    "t_star_field",
    "relative_l2",
]

METHODS = ("direct", "continued", "hypersingular", "spectral")
KINDS = ("R", "T", "T*", "P")

# grid refinement relative to the corpus quadrature step
RESOLUTION = 8
# step halvings combined by Richardson extrapolation
LEVELS = 3


# --------------------------------------------------------------------------
# slices


@dataclass
class _Slice:
    """A transform restricted to a line, with its support and sampling step."""

    values: object          # s -> samples
    derivative: object      # (s, k) -> k-th derivative samples, or None
    lo: float
    hi: float
    h: float


def _finite_radius(f: TestFunction) -> float:
    if not math.isfinite(f.radius):
        raise ValueError(f"{f.kind} has no finite support radius; fractional slices need one")
    return f.radius


def _real(f, v):
    v = np.asarray(v)
    return v.real if f.real else v


def _t_slice(f: TestFunction, xprime, resolution=RESOLUTION) -> _Slice:
    xprime = np.asarray(xprime, dtype=float).reshape(-1)
    if len(xprime) != f.n - 1:
        raise ValueError("x' must have n-1 components")
    R = _finite_radius(f)
    stretch = math.sqrt(1.0 + float(xprime @ xprime))

    def pts(s):
        s = np.asarray(s, dtype=float)
        return np.concatenate([np.broadcast_to(xprime, s.shape + (f.n - 1,)), s[..., None]], axis=-1)

    def values(s):
        return tr.transversal(f, pts(s))

    def derivative(s, k):
        return tr.transversal(NthDerivative(f, k), pts(s))

    deriv = derivative if f.has_derivatives() else None
    return _Slice(values, deriv, -R * stretch, R * stretch, f.step * stretch / resolution)


def _sheared_t_slice(f: TestFunction, xprime, resolution=RESOLUTION) -> _Slice:
    """Slice of T B_1 f, where B_1 f(y) = f(y', y_n - |y'|^2); n = 2."""
    if f.n != 2:
        raise ValueError("the conjugated parabolic path is provided for n = 2")
    xp = float(np.asarray(xprime, dtype=float).reshape(-1)[0])
    R = _finite_radius(f)

    def pts(s):
        s = np.asarray(s, dtype=float)
        return np.stack([np.full(s.shape, xp), s], axis=-1)

    def values(s):
        return tr.transversal(tr.Sheared(f), pts(s))

    def derivative(s, k):
        return tr.transversal(tr.Sheared(NthDerivative(f, k)), pts(s))

    deriv = derivative if f.has_derivatives() else None
    return _Slice(values, deriv, -R - xp * xp / 4.0, R + R * R + abs(xp) * R, f.step / resolution)


def _p_slice(f: TestFunction, xprime, resolution=RESOLUTION) -> _Slice:
    xprime = np.asarray(xprime, dtype=float).reshape(-1)
    R = _finite_radius(f)
    r = float(np.linalg.norm(xprime))

    def pts(s):
        s = np.asarray(s, dtype=float)
        return np.concatenate([np.broadcast_to(xprime, s.shape + (f.n - 1,)), s[..., None]], axis=-1)

    def values(s):
        return tr.parabolic(f, pts(s))

    def derivative(s, k):
        return tr.parabolic(NthDerivative(f, k), pts(s))

    deriv = derivative if f.has_derivatives() else None
    return _Slice(values, deriv, -R, (r + R) ** 2 + R, f.step / resolution)


def _radon_derivative(f: TestFunction, theta, t, k: int):
    """(d/dt)^k R_theta f through R(Delta^m f) and R(theta . grad Delta^m f)."""
    m, odd = divmod(k, 2)
    if odd:
        fn = lambda y: f.grad_laplacian(y, m) @ theta
    else:
        fn = lambda y: f.laplacian_power(y, m)
    return _real(f, tr.radon_of(fn, f.n, f.radius, f.step, theta, t))


def _r_slice(f: TestFunction, theta, resolution=RESOLUTION) -> _Slice:
    theta = np.asarray(theta, dtype=float)
    R = _finite_radius(f)

    def values(s):
        return tr.radon(f, theta, s)

    try:
        f.grad_laplacian(np.zeros((1, f.n)), 0)
        deriv = lambda s, k: _radon_derivative(f, theta, s, k)
    except NotImplementedError:
        deriv = None
    return _Slice(values, deriv, -R, R, f.step / resolution)


def _resolve_method(method: str, order: FracOrder) -> str:
    if method == "auto":
        return "direct" if order.alpha.real > 0 else "continued"
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    if method == "direct" and order.alpha.real <= 0:
        raise ValueError("the direct method needs Re alpha > 0")
    return method


def _slice_grid(sl: _Slice, targets, side: str, pad: float = 0.0) -> Grid1D:
    targets = np.asarray(targets, dtype=float)
    # cover the whole support: spectral differentiation needs a periodic-safe window
    lo = min(sl.lo - pad, float(np.min(targets)) - 2 * sl.h)
    hi = max(sl.hi + pad, float(np.max(targets)) + 2 * sl.h)
    return Grid1D.with_step(lo, hi, sl.h)


def _rl_once(sl: _Slice, order: FracOrder, side: str, method: str, grid: Grid1D) -> np.ndarray:
    sig = Signal.from_function(sl.values, grid, sl.derivative)
    if method == "direct":
        return rl_integral(sig, order, side).values
    return rl_continued(sig, order, side).values


def _frac_slice(sl: _Slice, order: FracOrder, side: str, method: str, grid: Grid1D,
                levels: int = LEVELS) -> Signal:
    """I^alpha_side of the slice, sampled on ``grid``.

    Product integration against the piecewise linear interpolant has an
    error expansion c_1 h^2 + c_2 h^{2+b} + ..., b = Re(alpha + ell) the order
    actually integrated; ``levels`` halvings of h are combined by Richardson
    extrapolation at the nodes of ``grid``.
    """
    if method in ("direct", "continued"):
        b = order.alpha.real + order.level
        vals = []
        for k in range(levels):
            fine = Grid1D(grid.lo, grid.hi, (grid.count - 1) * 2 ** k + 1)
            vals.append(_rl_once(sl, order, side, method, fine)[:: 2 ** k])
        if order.nonpositive_integer or levels == 1:
            out = vals[-1]
        else:
            exps = sorted({2.0, 2.0 + b, 4.0, 3.0 + b})[: levels - 1]
            out = richardson(vals, [grid.h / 2 ** k for k in range(levels)], exps)
        return Signal(grid, out)
    if method == "spectral":
        sig = Signal.from_function(sl.values, grid)
        symbol = lambda xi: fourier_symbol(order.alpha, xi, side)
        out = apply_multiplier(sig.values, grid, symbol, zero_bin="error", tol=1e-9)
        a = order.alpha
        return sig.with_values(out.real if (a.imag == 0 and np.isrealobj(sig.values)) else out)
    raise ValueError(f"method {method!r} is not a slice method")


def _spectral_pad(sl: _Slice) -> float:
    # multiplier output decays on the scale of the input; pad the periodic window
    return 0.5 * (sl.hi - sl.lo)


def _pointwise(slice_of, alpha, keys, coords, method, side, resolution):
    """Group evaluation points by slice key and interpolate each fractional slice."""
    order = _as_order(alpha)
    method = _resolve_method(method, order)
    keys = np.asarray(keys, dtype=float)
    coords = np.asarray(coords, dtype=float)
    flat_k = keys.reshape(-1, keys.shape[-1])
    flat_c = coords.reshape(-1)
    out = np.empty(len(flat_c), dtype=complex)
    uniq, inv = np.unique(flat_k, axis=0, return_inverse=True)
    inv = np.asarray(inv).reshape(-1)
    real = True
    for i, key in enumerate(uniq):
        sel = inv == i
        sl = slice_of(key, resolution)
        pad = _spectral_pad(sl) if method == "spectral" else 0.0
        grid = _slice_grid(sl, flat_c[sel], side, pad)
        res = _frac_slice(sl, order, side, method, grid)
        real = real and np.isrealobj(res.values)
        out[sel] = CubicSpline(grid.nodes, res.values)(flat_c[sel])
    out = out.reshape(coords.shape)
    return out.real if real else out


def _split(x, n):
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != n:
        raise ValueError(f"points must have {n} coordinates")
    return x[..., :-1], x[..., -1]


# --------------------------------------------------------------------------
# pointwise operators


def t_plus(f: TestFunction, alpha, x, method: str = "auto", side: str = "+", resolution: int = RESOLUTION):
    """(T_+^alpha f)(x) = (I^alpha_+ T_x' f)(x_n) at points x of shape (..., n).

    ``side='-'`` applies I^alpha_- instead, which is the form the conjugation
    with R_+^alpha takes on the lower hemisphere theta_n < 0.
    """
    if method == "hypersingular":
        return t_plus_hypersingular(f, -float(np.real(alpha)), x, resolution=resolution)
    xp, xn = _split(x, f.n)
    return _pointwise(lambda k, r: _t_slice(f, k, r), alpha, xp, xn, method, side, resolution)


def t_plus_slice(f: TestFunction, alpha, xprime, grid: Grid1D | None = None, method: str = "auto",
                 side: str = "+", resolution: int = RESOLUTION) -> Signal:
    """T_+^alpha f along the whole line x_n -> (x', x_n), on its natural grid or on ``grid``."""
    order = _as_order(alpha)
    method = _resolve_method(method, order)
    sl = _t_slice(f, xprime, resolution)
    if grid is None:
        grid = Grid1D.with_step(sl.lo, sl.hi, sl.h)
    return _frac_slice(sl, order, side, method, grid)


def t_star_plus(g: TestFunction, beta, x, method: str = "auto", resolution: int = RESOLUTION):
    """(T*_+^beta g)(x) = (I^beta_- T*_x' g)(x_n), with T*g(x', .) = Tg(-x', .)."""
    xp, xn = _split(x, g.n)
    return _pointwise(lambda k, r: _t_slice(g, -k, r), beta, xp, xn, method, "-", resolution)


def r_plus(f: TestFunction, alpha, theta, t, method: str = "auto", resolution: int = RESOLUTION):
    """(R_+^alpha f)(theta, t) = (I^alpha_+ R_theta f)(t).

    ``theta`` has shape (..., n) and broadcasts against ``t``.  For the
    continued method the t-derivatives of R_theta f come from R applied to
    Delta^m f and to theta . grad Delta^m f, so no numerical differentiation
    enters when the corpus function has closed-form derivatives.
    """
    theta = np.asarray(theta, dtype=float)
    t = np.asarray(t, dtype=float)
    shape = np.broadcast_shapes(theta.shape[:-1], t.shape)
    th = np.broadcast_to(theta, shape + (f.n,))
    tt = np.broadcast_to(t, shape)
    return _pointwise(lambda k, r: _r_slice(f, k, r), alpha, th, tt, method, "+", resolution)


def r_plus_slice(f: TestFunction, alpha, theta, grid: Grid1D | None = None, method: str = "auto",
                 resolution: int = RESOLUTION) -> Signal:
    order = _as_order(alpha)
    method = _resolve_method(method, order)
    sl = _r_slice(f, theta, resolution)
    if grid is None:
        grid = Grid1D.with_step(sl.lo, sl.hi, sl.h)
    return _frac_slice(sl, order, "+", method, grid)


def p_plus(f: TestFunction, alpha, x, method: str = "auto", path: str = "direct",
           resolution: int = RESOLUTION):
    """(P_+^alpha f)(x).

    ``path='direct'`` integrates along slices of Pf (continued through
    P(d_n^k f) when Re alpha <= 0); ``path='conjugated'`` evaluates
    B_2 T_+^alpha B_1 f, i.e. T_+^alpha of the sheared function at
    (2x', x_n - |x'|^2).
    """
    xp, xn = _split(x, f.n)
    if path == "direct":
        return _pointwise(lambda k, r: _p_slice(f, k, r), alpha, xp, xn, method, "+", resolution)
    if path == "conjugated":
        r2 = np.sum(xp ** 2, axis=-1)
        return _pointwise(lambda k, r: _sheared_t_slice(f, k, r), alpha, 2.0 * xp, xn - r2,
                          method, "+", resolution)
    raise ValueError("path must be 'direct' or 'conjugated'")


def lambda_conjugate(f: TestFunction, alpha, theta, t, method: str = "auto", floor: float = 0.1,
                     resolution: int = RESOLUTION):
    """Lambda_alpha T_+^alpha f evaluated at (theta, t), |theta_n| >= floor.

    On theta_n > 0 this is |theta_n|^{alpha-1} (T_+^alpha f)(-theta'/theta_n, t/theta_n).
    On theta_n < 0 the substitution x_n = t/theta_n reverses orientation, so
    the one-sided integral in x_n is I^alpha_- and the value reproduces
    R_+^alpha f there.
    """
    theta = np.asarray(theta, dtype=float)
    t = np.asarray(t, dtype=float)
    shape = np.broadcast_shapes(theta.shape[:-1], t.shape)
    th = np.broadcast_to(theta, shape + (f.n,))
    tt = np.broadcast_to(t, shape)
    x = tr.x_from_theta(th, tt, floor)
    a = complex(alpha)
    tn = th[..., -1]
    out = np.empty(shape, dtype=complex)
    for side, sel in (("+", tn > 0), ("-", tn < 0)):
        if np.any(sel):
            out[sel] = np.abs(tn[sel]) ** (a - 1) * t_plus(f, alpha, x[sel], method, side, resolution)
    return out.real if (a.imag == 0 and f.real) else out


def t_plus_hypersingular(f: TestFunction, a: float, x, ell: int | None = None, multiples=(1, 2, 4),
                         resolution: int = RESOLUTION, levels: int = LEVELS, check: bool = True):
    """T_+^{-a} f by the Marchaud difference integral of the slices of Tf.

    ``a`` is the (positive) order of the derivative, 0 < a <= (n-1)/2.  On
    each grid the eps-limit is taken by Richardson extrapolation over
    eps = multiples * h.  The remaining discretization error comes from the
    cells next to the truncation point, where the kernel is of size eps^{-1-a};
    with eps proportional to h it scales like h^{2-a}, h^{3-a}, ..., and
    ``levels`` halvings of h remove it.  With ``check`` the truncated values on
    the coarsest grid must approach each other as eps decreases; otherwise
    ValueError reports the eps values.
    """
    a = float(a)
    if not 0 < a <= (f.n - 1) / 2:
        raise ValueError(f"hypersingular path needs alpha = -a in [(1-n)/2, 0), got alpha = {-a}")
    if ell is None:
        ell = int(math.floor(a)) + 1
    if ell <= a:
        raise ValueError("need ell > -alpha")
    xp, xn = _split(x, f.n)
    flat_k = xp.reshape(-1, f.n - 1)
    flat_c = xn.reshape(-1)
    out = np.empty(len(flat_c), dtype=complex)
    uniq, inv = np.unique(flat_k, axis=0, return_inverse=True)
    inv = np.asarray(inv).reshape(-1)
    for i, key in enumerate(uniq):
        sel = inv == i
        sl = _t_slice(f, key, resolution)
        grid = _slice_grid(sl, flat_c[sel], "+")
        per_level = []
        for k in range(levels):
            fine = Grid1D(grid.lo, grid.hi, (grid.count - 1) * 2 ** k + 1)
            phi = Signal.from_function(sl.values, fine)
            eps = [m * fine.h for m in multiples]
            vals = [marchaud_truncated(phi, a, e, ell).values for e in eps]
            if check and k == 0 and len(vals) >= 3:
                d1 = np.max(np.abs(vals[0] - vals[1]))
                d2 = np.max(np.abs(vals[1] - vals[2]))
                if not d1 < d2:
                    raise ValueError(f"eps-sequence {eps} does not converge ({d1:.2e} vs {d2:.2e})")
            per_level.append(richardson(vals, eps, marchaud_exponents(a, ell, len(eps) - 1))[:: 2 ** k])
        if levels > 1:
            hs = [grid.h / 2 ** k for k in range(levels)]
            res = richardson(per_level, hs, [2 - a + k for k in range(levels - 1)])
        else:
            res = per_level[0]
        out[sel] = CubicSpline(grid.nodes, res)(flat_c[sel])
    out = out.reshape(xn.shape)
    return out.real if f.real else out


def cauchy_circle(fn, center, radius: float = 0.1, count: int = 5):
    """Mean of fn over ``count`` equispaced points on |alpha - center| = radius, minus fn(center).

    The trapezoid rule on the circle reproduces the centre value of an
    analytic function up to terms of order radius^count, so a small result
    is evidence that alpha -> fn(alpha) is holomorphic there.
    """
    pts = complex(center) + radius * np.exp(2j * np.pi * np.arange(count) / count)
    vals = np.array([np.asarray(fn(p)) for p in pts])
    return np.mean(vals, axis=0) - np.asarray(fn(complex(center)))


# --------------------------------------------------------------------------
# request object


@dataclass
class FracTransformRequest:
    """One evaluation of a fractional Radon-type transform.

    For ``kind='R'`` the evaluation layout is ``theta`` (..., n) with offsets
    ``t``; for the other kinds it is an array of points ``x`` (..., n).
    """

    kind: str
    alpha: FracOrder
    f: TestFunction
    x: np.ndarray | None = None
    theta: np.ndarray | None = None
    t: np.ndarray | None = None
    method: str = "auto"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        self.alpha = _as_order(self.alpha)
        if self.method != "auto":
            _resolve_method(self.method, self.alpha)
        if self.method == "hypersingular":
            a = self.alpha.alpha
            if a.imag != 0 or not (1 - self.f.n) / 2 <= a.real < 0 or self.kind != "T":
                raise ValueError("hypersingular needs kind T and real alpha in [(1-n)/2, 0)")
        if self.method == "continued" and not self.f.has_derivatives():
            raise ValueError(f"the continued method needs analytic derivatives; {self.f.kind} has none")
        if self.kind == "R":
            if self.theta is None or self.t is None:
                raise ValueError("kind R needs theta and t")
        elif self.x is None:
            raise ValueError(f"kind {self.kind} needs points x")

    def evaluate(self):
        a = self.alpha
        if self.kind == "R":
            return r_plus(self.f, a, self.theta, self.t, self.method)
        if self.kind == "T":
            return t_plus(self.f, a if self.method != "hypersingular" else a.alpha.real, self.x, self.method)
        if self.kind == "T*":
            return t_star_plus(self.f, a, self.x, self.method)
        return p_plus(self.f, a, self.x, self.method)


# --------------------------------------------------------------------------
# field-level evaluation through the slice theorem


@dataclass
class TransversalField:
    """A function on R^n stored as its partial Fourier transform in x_n.

    ``xprime`` holds one node array per x' axis (a tensor grid, trapezoid
    weights), ``xn`` is the uniform x_n grid and ``coeffs`` has shape
    (*x' shape, len(xn)) in unshifted DFT order along the last axis.
    """

    xprime: tuple
    xn: Grid1D
    coeffs: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.xprime) + 1

    @property
    def xi(self) -> np.ndarray:
        return 2 * np.pi * np.fft.fftfreq(self.xn.count, d=self.xn.h)

    def values(self) -> np.ndarray:
        return idft_1d(self.coeffs, self.xn)

    def weights(self) -> np.ndarray:
        w = 1.0
        for k, ax in enumerate(self.xprime):
            wk = np.gradient(ax) if len(ax) > 1 else np.ones(1)
            shape = [1] * len(self.xprime)
            shape[k] = len(ax)
            w = w * wk.reshape(shape)
        return np.asarray(w)

    def l2_norm_sq(self) -> float:
        """int |F|^2 dx, by Plancherel in x_n and the trapezoid rule in x'."""
        dxi = 2 * np.pi / (self.xn.count * self.xn.h)
        per = np.sum(np.abs(self.coeffs) ** 2, axis=-1) * dxi / (2 * np.pi)
        return float(np.sum(per * self.weights()))

    def multiply(self, symbol, tol: float = 1e-12) -> "TransversalField":
        """Apply a Fourier multiplier in x_n; the zero bin must carry no mass."""
        xi = self.xi
        c = self.coeffs
        peak = np.max(np.abs(c))
        if peak > 0 and np.max(np.abs(c[..., xi == 0])) > tol * peak:
            raise ValueError("field carries mass at xi_n = 0; the multiplier is singular there")
        m = np.zeros(xi.shape, dtype=complex)
        nz = xi != 0
        m[nz] = symbol(xi[nz])
        return TransversalField(self.xprime, self.xn, c * m, dict(self.meta))


def transversal_field(f: TestFunction | SampledField, grid: GridND | None = None) -> TransversalField:
    """Partial x_n-transform of f sampled on a uniform grid."""
    if isinstance(f, TestFunction):
        if grid is None:
            grid = _field_grid(f)
        f = sample(f, grid)
    g = f.grid
    g.require_uniform()
    coeffs = dft_1d(f.values, g.axes[-1])
    return TransversalField(tuple(a.nodes for a in g.axes[:-1]), g.axes[-1], coeffs, dict(f.provenance))


def _field_grid(f: TestFunction) -> GridND:
    """Sampling grid for field-level work: the support in x', a long periodic window in x_n."""
    R = _finite_radius(f)
    h = min(0.25, f.step / 1.2)
    k = int(math.ceil(R / h))
    kn = int(math.ceil(2.5 * R / h))
    axes = [Grid1D(-k * h, k * h, 2 * k + 1)] * (f.n - 1) + [Grid1D(-kn * h, kn * h, 2 * kn + 1)]
    return GridND(tuple(axes))


def _active_bins(coeffs, tol):
    mag = np.max(np.abs(coeffs).reshape(-1, coeffs.shape[-1]), axis=0)
    return np.nonzero(mag > tol * mag.max())[0]


def _transversal_apply(F: TransversalField, out_xprime, adjoint: bool, tol: float = 1e-15) -> TransversalField:
    """T (or T*) of the field F, through (T_x' F)^(xi) = int F^(y', xi) exp(-+i xi x'.y') dy'."""
    sgn = 1.0 if adjoint else -1.0
    xi = F.xi
    out_xprime = tuple(np.asarray(a, dtype=float) for a in out_xprime)
    shape = tuple(len(a) for a in out_xprime) + (len(xi),)
    out = np.zeros(shape, dtype=complex)
    w_axes = []
    for ax in F.xprime:
        w = np.gradient(ax) if len(ax) > 1 else np.ones(1)
        w_axes.append(w)
    for b in _active_bins(F.coeffs, tol):
        acc = F.coeffs[..., b]
        # contract the x' axes one at a time (separable phase)
        for k in range(len(F.xprime)):
            kern = np.exp(sgn * 1j * xi[b] * np.outer(out_xprime[k], F.xprime[k])) * w_axes[k][None, :]
            acc = np.tensordot(kern, acc, axes=([1], [k]))
            acc = np.moveaxis(acc, 0, k)
        out[..., b] = acc
    return TransversalField(out_xprime, F.xn, out, dict(F.meta))


def _apply_order(F: TransversalField, alpha, side: str) -> TransversalField:
    a = complex(alpha)
    if a == 0:
        return F
    return F.multiply(lambda xi: fourier_symbol(a, xi, side))


def t_field(F: TransversalField, alpha, out_xprime) -> TransversalField:
    """T_+^alpha of a field, sampled at the x' nodes ``out_xprime``."""
    return _apply_order(_transversal_apply(F, out_xprime, adjoint=False), alpha, "+")


def t_star_field(F: TransversalField, beta, out_xprime) -> TransversalField:
    """T*_+^beta of a field, sampled at the x' nodes ``out_xprime``."""
    return _apply_order(_transversal_apply(F, out_xprime, adjoint=True), beta, "-")


def _check_phi(f: TestFunction, F: TransversalField, tol: float = 1e-12):
    """Reject inputs whose x_n-spectrum reaches the band |xi_n| < r0."""
    r0 = getattr(f, "r0", None)
    if r0 is None:
        raise ValueError(f"{f.kind} is not in the band-limited class")
    e = np.sum(np.abs(F.coeffs.reshape(-1, F.coeffs.shape[-1])) ** 2, axis=0)
    frac = e[np.abs(F.xi) < r0].sum() / e.sum()
    if frac >= tol:
        raise ValueError(f"input is not in the band-limited class: band mass {frac:.2e} >= {tol:g}")


def _middle_xprime(f: TestFunction, n: int, half: float | None = None, h: float = 0.01):
    """x' window holding the support of T-fields of band-limited f."""
    if half is None:
        r0, r1 = f.r0, f.r1
        # |x'| xi_n <= r1 + bump width, with xi_n >= r0
        half = (r1 + 8.0 / f.width) / r0
    ax = Grid1D.with_step(-half, half, h).nodes
    return (ax,) * (n - 1)


def compose(f: TestFunction, alpha, beta, middle=None, grid: GridND | None = None):
    """T_+^alpha T*_+^beta f on the sampling grid of f.

    Returns (input field, composed field) as :class:`TransversalField` objects
    on the same x' nodes, so that they can be compared coefficient-wise.
    """
    F = transversal_field(f, grid)
    _check_phi(f, F)
    mid = middle if middle is not None else _middle_xprime(f, f.n)
    G = t_star_field(F, beta, mid)
    H = t_field(G, alpha, F.xprime)
    return F, H


def composition_rhs(F: TransversalField, alpha, beta) -> TransversalField:
    """(2 pi)^{n-1} I^alpha_+ I^beta_- I_2^{n-1} F as a multiplier in x_n."""
    n = F.n
    a, b = complex(alpha), complex(beta)

    def sym(xi):
        return ((2 * np.pi) ** (n - 1) * np.abs(xi) ** (1.0 - n)
                * fourier_symbol(a, xi, "+") * fourier_symbol(b, xi, "-"))

    return F.multiply(sym)


def relative_l2(A: TransversalField, B: TransversalField) -> float:
    """||A - B||_2 / ||B||_2 for fields on the same nodes."""
    D = TransversalField(A.xprime, A.xn, A.coeffs - B.coeffs)
    return math.sqrt(D.l2_norm_sq() / B.l2_norm_sq())


def invert(f: TestFunction, grid: GridND | None = None):
    """(2 pi)^{1-n} T_+^{(1-n)/2} T*_+^{(1-n)/2} f on the sampling grid of f.

    Returns (reconstruction as SampledField, relative l2 error against f).
    Inputs outside the band-limited class are rejected.
    """
    n = f.n
    a = (1 - n) / 2
    F, H = compose(f, a, a, grid=grid)
    H = TransversalField(H.xprime, H.xn, H.coeffs / (2 * np.pi) ** (n - 1), H.meta)
    err = relative_l2(H, F)
    axes = tuple(Grid1D(ax[0], ax[-1], len(ax)) for ax in H.xprime) + (H.xn,)
    vals = H.values()
    out = SampledField(GridND(axes), vals.real if f.real else vals, {"function": f.dsl, "op": "invert"})
    return out, err
