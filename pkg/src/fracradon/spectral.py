"""Discrete Fourier machinery under the convention f^(xi) = int f(x) exp(+i x.xi) dx.

The scaled DFT below is the trapezoid approximation of that integral on a
uniform lattice, with the phase shift for the lattice origin folded in, so
that ``dft(sample(f)).coeffs`` approximates f^ at the lattice frequencies
``xi = 2 pi fftfreq(N, h)``.  ``idft`` is its exact inverse.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math
import os

import numpy as np
import scipy.fft as sfft

from .functions import Grid1D, GridND, SampledField, TestFunction

__all__ = [
    "workers",
    "Spectrum",
    "dft",
    "idft",
    "dft_at",
    "dft_1d",
    "idft_1d",
    "apply_multiplier",
    "riesz_1d",
    "riesz_nd",
    "slice_check",
    "band_mass_fraction",
    "require_phi_class",
]


def workers() -> int:
    """Thread count for scipy.fft, capped by FRACRADON_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("FRACRADON_THREADS", "1")))
    except ValueError:
        return 1


def _freqs(axis: Grid1D) -> np.ndarray:
    return 2 * np.pi * np.fft.fftfreq(axis.count, d=axis.h)


@dataclass
class Spectrum:
    """Samples of f^ at lattice frequencies (unshifted FFT order per axis)."""

    grid: GridND
    coeffs: np.ndarray
    normalization: str = "h-scaled trapezoid, exp(+i x.xi)"
    meta: dict = field(default_factory=dict)

    @property
    def freqs(self) -> tuple:
        return tuple(_freqs(a) for a in self.grid.axes)

    def mesh(self) -> np.ndarray:
        return np.stack(np.meshgrid(*self.freqs, indexing="ij"), axis=-1)


def _phase(grid: GridND, sign: float):
    out = 1.0
    for k, (a, xi) in enumerate(zip(grid.axes, (_freqs(a) for a in grid.axes))):
        shape = [1] * grid.n
        shape[k] = a.count
        out = out * np.exp(sign * 1j * a.lo * xi).reshape(shape)
    return out


def dft(f: SampledField) -> Spectrum:
    """Scaled forward transform of a sampled field on a uniform lattice."""
    g = f.grid
    for a in g.axes:
        if not np.isfinite(a.h):
            raise ValueError("non-uniform grid")
    n_tot = np.prod(g.shape)
    coeffs = sfft.ifftn(f.values, workers=workers()) * (n_tot * g.cell_volume)
    return Spectrum(g, coeffs * _phase(g, +1.0), meta=dict(f.provenance))


def idft(s: Spectrum) -> SampledField:
    """Exact inverse of :func:`dft`; returns complex values."""
    g = s.grid
    vals = sfft.fftn(s.coeffs * _phase(g, -1.0), workers=workers()) / (np.prod(g.shape) * g.cell_volume)
    return SampledField(g, vals, dict(s.meta))


def dft_1d(values: np.ndarray, axis: Grid1D, along: int = -1) -> np.ndarray:
    """Scaled 1-D forward transform along one array axis."""
    v = np.moveaxis(np.asarray(values), along, -1)
    xi = _freqs(axis)
    out = sfft.ifft(v, axis=-1, workers=workers()) * (axis.count * axis.h) * np.exp(1j * axis.lo * xi)
    return np.moveaxis(out, -1, along)


def idft_1d(coeffs: np.ndarray, axis: Grid1D, along: int = -1) -> np.ndarray:
    """Inverse of :func:`dft_1d`."""
    c = np.moveaxis(np.asarray(coeffs), along, -1)
    xi = _freqs(axis)
    out = sfft.fft(c * np.exp(-1j * axis.lo * xi), axis=-1, workers=workers()) / (axis.count * axis.h)
    return np.moveaxis(out, -1, along)


def dft_at(f: SampledField, xi) -> np.ndarray:
    """Trapezoid Fourier sum at arbitrary frequencies ``xi`` of shape (..., n)."""
    xi = np.asarray(xi, dtype=float)
    if xi.shape[-1] != f.n:
        raise ValueError("frequency dimension mismatch")
    flat = xi.reshape(-1, f.n)
    out = np.empty(len(flat), dtype=complex)
    nodes = [a.nodes for a in f.grid.axes]
    for i, q in enumerate(flat):
        acc = f.values
        # separable: contract one axis at a time
        for k in range(f.n - 1, -1, -1):
            acc = acc @ np.exp(1j * q[k] * nodes[k])
        out[i] = acc * f.grid.cell_volume
    return out.reshape(xi.shape[:-1])


def apply_multiplier(values, axis: Grid1D, symbol, zero_bin: str = "error", along: int = -1, tol: float = 1e-12):
    """Multiply the 1-D spectrum along ``along`` by ``symbol(xi)`` and transform back.

    ``zero_bin`` decides the xi = 0 bin: 'zero' drops it, 'keep' evaluates the
    symbol there, 'error' refuses if that bin carries mass above ``tol``
    (relative to the largest bin) and otherwise drops it.
    """
    if zero_bin not in ("zero", "error", "keep"):
        raise ValueError("zero_bin must be 'zero', 'error' or 'keep'")
    c = dft_1d(values, axis, along)
    xi = _freqs(axis)
    m = np.zeros(xi.shape, dtype=complex)
    nz = xi != 0
    m[nz] = symbol(xi[nz])
    if zero_bin == "keep":
        m[~nz] = symbol(xi[~nz])
    elif zero_bin == "error":
        c_moved = np.moveaxis(c, along, -1)
        dc = np.max(np.abs(c_moved[..., 0]))
        peak = np.max(np.abs(c_moved))
        if peak > 0 and dc > tol * peak:
            raise ValueError(f"zero-frequency bin carries mass {dc / peak:.2e} of the peak")
    shape = [1] * np.ndim(c)
    shape[along] = len(xi)
    out = idft_1d(c * m.reshape(shape), axis, along)
    return out


def riesz_1d(values, axis: Grid1D, lam: float, along: int = -1, zero_bin: str = "error"):
    """One-dimensional Riesz potential: multiplier |xi|^{-lam}."""
    return apply_multiplier(values, axis, lambda x: np.abs(x) ** (-lam), zero_bin, along)


def riesz_nd(f: SampledField, lam: float, tol: float = 1e-12) -> SampledField:
    """n-dimensional Riesz potential I^lam f with multiplier |xi|^{-lam}, 0 < lam < n."""
    if not 0 <= lam < f.n:
        raise ValueError(f"need 0 <= lam < n, got {lam}")
    f.grid.require_uniform()
    s = dft(f)
    r = np.sqrt(np.sum(s.mesh() ** 2, axis=-1))
    peak = np.max(np.abs(s.coeffs))
    # DC mass check on the bins nearest the origin
    near = r <= r[r > 0].min() * 1.01
    if lam > 0 and np.max(np.abs(s.coeffs[near])) > tol * peak:
        raise ValueError("riesz_nd: input carries mass near zero frequency")
    m = np.zeros(r.shape)
    m[r > 0] = r[r > 0] ** (-lam)
    if lam == 0:
        m[:] = 1.0
    return idft(Spectrum(f.grid, s.coeffs * m, meta=s.meta))


def band_mass_fraction(f: SampledField, r0: float, axis: int = -1) -> float:
    """Energy of the DFT inside the band |xi_axis| < r0, relative to the total."""
    s = dft(f)
    xi = s.freqs[axis]
    e = np.abs(s.coeffs) ** 2
    e = np.moveaxis(e, axis, -1)
    inside = e[..., np.abs(xi) < r0].sum()
    total = e.sum()
    return float(inside / total) if total > 0 else 0.0


def require_phi_class(f: SampledField, r0: float, tol: float = 1e-12):
    """Reject inputs whose spectrum reaches the hyperplane xi_n = 0."""
    frac = band_mass_fraction(f, r0)
    if frac >= tol:
        raise ValueError(f"input is not in the band-limited class: band mass {frac:.2e} >= {tol:g}")
    return frac


def slice_check(f: TestFunction, variant: str = "R", probes=None, offsets: Grid1D | None = None) -> float:
    """Max relative error of the Fourier slice identities over a probe set.

    variant 'R': DFT_t of t -> Rf(theta, t) against f^(rho theta).
    variant 'T': DFT of x_n -> Tf(x', x_n) against f^(-x' xi_n, xi_n).
    ``probes`` is a list of directions (R) or of x' values (T); the compared
    frequencies are the lattice frequencies inside the resolvable band where
    |f^| exceeds 1e-3 of its largest value over the whole probe set.
    """
    from . import transforms

    if offsets is None:
        L = min(f.radius, 60.0) * (1.5 if variant == "T" else 1.0)
        offsets = Grid1D.with_step(-L, L, min(f.step, 0.25))
    xi = _freqs(offsets)
    nyq = math.pi / offsets.h
    worst = 0.0
    if probes is None:
        if variant == "R":
            ang = np.linspace(0, np.pi, 8, endpoint=False) + 0.1
            if f.n == 2:
                probes = [np.array([np.cos(a), np.sin(a)]) for a in ang]
            else:
                probes = [np.array([np.cos(a) * np.sin(a + 0.3), np.sin(a) * np.sin(a + 0.3), np.cos(a + 0.3)])
                          for a in ang]
        else:
            probes = [np.full(f.n - 1, v) for v in np.linspace(-1.0, 1.0, 8)]
    rows = []
    for pr in probes:
        pr = np.asarray(pr, dtype=float)
        if variant == "R":
            vals = transforms.radon(f, pr, offsets.nodes)
            exact = f.fourier(xi[:, None] * pr[None, :])
        elif variant == "T":
            pts = np.concatenate([np.broadcast_to(pr, (offsets.count, f.n - 1)), offsets.nodes[:, None]], axis=1)
            vals = transforms.transversal(f, pts)
            arg = np.concatenate([-pr[None, :] * xi[:, None], xi[:, None]], axis=1)
            exact = f.fourier(arg)
        else:
            raise ValueError("variant must be 'R' or 'T'")
        rows.append((dft_1d(vals, offsets), exact))
    # compare where the exact transform is significant on the scale of the whole probe set
    peak = max(np.max(np.abs(e)) for _, e in rows)
    compared = 0
    for got, exact in rows:
        keep = (np.abs(exact) > 1e-3 * peak) & (np.abs(xi) < 0.8 * nyq)
        if not np.any(keep):
            continue
        compared += 1
        err = np.max(np.abs(got[keep] - exact[keep]) / np.abs(exact[keep]))
        worst = max(worst, float(err))
    if compared == 0:
        raise ValueError("no probe frequency inside the resolvable band")
    return worst
