import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracradon.frac1d import Signal, fourier_symbol, rl_integral
from fracradon.functions import BandLimited, Gaussian, Grid1D, GridND, SampledField, sample
from fracradon import spectral as sp


def gauss_field(count=128, L=8.0):
    return sample(Gaussian(2, 1.0), GridND.cube(2, -L, L, count))


def test_gaussian_transform_pair():
    s = sp.dft(gauss_field())
    expect = math.pi * np.exp(-np.sum(s.mesh() ** 2, axis=-1) / 4)
    assert np.max(np.abs(s.coeffs - expect)) <= 1e-10


def test_dft_at_matches_lattice():
    f = gauss_field(32, 6.0)
    xi = np.array([[0.0, 0.0], [1.0, -0.5], [2.5, 0.3]])
    expect = math.pi * np.exp(-np.sum(xi ** 2, axis=-1) / 4)
    assert np.allclose(sp.dft_at(f, xi), expect, atol=1e-10)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2 ** 31 - 1), st.integers(8, 40), st.integers(8, 40))
def test_round_trip_and_parseval(seed, nx, ny):
    rng = np.random.default_rng(seed)
    grid = GridND((Grid1D(-3.0, 2.0, nx), Grid1D(-1.0, 4.0, ny)))
    vals = rng.normal(size=(nx, ny)) + 1j * rng.normal(size=(nx, ny))
    f = SampledField(grid, vals)
    s = sp.dft(f)
    back = sp.idft(s).values
    assert np.max(np.abs(back - vals)) <= 1e-12 * np.max(np.abs(vals))
    # Parseval: sum |f|^2 dV = (2 pi)^{-n} sum |f^|^2 dxi
    dxi = np.prod([2 * np.pi / (a.count * a.h) for a in grid.axes])
    lhs = np.sum(np.abs(vals) ** 2) * grid.cell_volume
    rhs = np.sum(np.abs(s.coeffs) ** 2) * dxi / (2 * np.pi) ** 2
    assert lhs == pytest.approx(rhs, rel=1e-10)


def test_one_dimensional_round_trip():
    g = Grid1D(-5, 5, 64)
    v = np.random.default_rng(2).normal(size=(3, 64))
    assert np.allclose(sp.idft_1d(sp.dft_1d(v, g), g), v, atol=1e-13)
    assert np.allclose(sp.idft_1d(sp.dft_1d(v.T, g, along=0), g, along=0), v.T, atol=1e-13)


@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(0.01, 30), st.sampled_from([-1.0, 1.0]))
def test_multiplier_modulus(ar, ai, mag, sgn):
    m = fourier_symbol(complex(ar, ai), sgn * mag)
    assert abs(m) == pytest.approx(mag ** (-ar) * math.exp(-sgn * ai * math.pi / 2), rel=1e-12)


def test_apply_multiplier_identity_and_zero_bin():
    g = Grid1D(-8, 8, 256)
    v = np.exp(-g.nodes ** 2)
    out = sp.apply_multiplier(v, g, lambda x: np.ones_like(x), zero_bin="keep")
    assert np.allclose(out, v, atol=1e-14)
    with pytest.raises(ValueError):
        sp.apply_multiplier(v, g, lambda x: np.ones_like(x))
    with pytest.raises(ValueError):
        sp.apply_multiplier(v, g, lambda x: x, zero_bin="maybe")
    # dropping the zero bin removes exactly the mean
    dropped = sp.apply_multiplier(v, g, lambda x: np.ones_like(x), zero_bin="zero")
    assert np.allclose(dropped, v - v.mean(), atol=1e-14)


def test_apply_multiplier_matches_rl_integral():
    g = Grid1D(-80, 80, 2 ** 13)
    w = np.cos(3 * g.nodes) * np.exp(-g.nodes ** 2 / 72)
    for alpha in (0.5, 0.3 + 0.4j):
        spec = sp.apply_multiplier(w, g, lambda x: fourier_symbol(alpha, x), zero_bin="error", tol=1e-10)
        rl = rl_integral(Signal(g, w), alpha).values
        assert np.max(np.abs(spec - rl)) / np.max(np.abs(rl)) <= 1e-3


def band_field():
    f = BandLimited(2, 1.0, 3.0, 7)
    return sample(f, GridND.cube(2, -40, 40, 320))


def test_riesz_identity_and_semigroup():
    f = band_field()
    assert np.allclose(sp.riesz_nd(f, 0.0).values, f.values, atol=1e-12)
    for lam, mu in ((0.3, 0.5), (0.7, 0.6)):
        two = sp.riesz_nd(sp.riesz_nd(f, lam, tol=1e-8), mu, tol=1e-8).values
        one = sp.riesz_nd(f, lam + mu, tol=1e-8).values
        assert np.max(np.abs(two - one)) <= 1e-6 * np.max(np.abs(one))
    small = sp.riesz_nd(f, 1e-6, tol=1e-8).values
    assert np.max(np.abs(small - f.values)) <= 1e-4 * np.max(np.abs(f.values))


def test_riesz_rejects():
    with pytest.raises(ValueError):
        sp.riesz_nd(gauss_field(), 0.5)
    with pytest.raises(ValueError):
        sp.riesz_nd(band_field(), 2.0)


def test_phi_class():
    assert sp.require_phi_class(band_field(), 1.0) < 1e-12
    with pytest.raises(ValueError):
        sp.require_phi_class(gauss_field(), 1.0)


@pytest.mark.parametrize("variant", ["R", "T"])
def test_slice_identities(variant):
    assert sp.slice_check(Gaussian(2, 1.0), variant) <= 1e-8
    assert sp.slice_check(BandLimited(2, 1.0, 3.0, 7), variant) <= 1e-6


def test_slice_check_three_dimensions():
    assert sp.slice_check(Gaussian(3, 1.0), "R") <= 1e-8


def test_transversal_slice_at_origin_is_radon_slice():
    # x' = 0 is the direction e_n
    f = Gaussian(2, 1.0)
    en = np.array([0.0, 1.0])
    assert sp.slice_check(f, "T", probes=[np.zeros(1)]) <= 1e-8
    assert sp.slice_check(f, "R", probes=[en]) <= 1e-8
    with pytest.raises(ValueError):
        sp.slice_check(f, "P")


def test_workers_env(monkeypatch):
    monkeypatch.setenv("FRACRADON_THREADS", "3")
    assert sp.workers() == 3
    monkeypatch.setenv("FRACRADON_THREADS", "x")
    assert sp.workers() == 1
