import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracradon.functions import (
    BandLimited, Dilated, Gaussian, Grid1D, GridND, LogDecay, Mollifier, NthDerivative,
    default_grid, evaluate, gaussian_radon_oracle, parse_function, sample, sphere_area,
)
from fracradon.spectral import dft


def test_evaluate_examples():
    assert evaluate(Gaussian(2, 1.0), [0, 0]) == pytest.approx(1.0)
    assert evaluate(Mollifier(2, 1.0), [2, 0]) == 0
    # logdecay(p=2), n=2 at the origin: 2^{-1} / log 2
    assert evaluate(LogDecay(2, 2.0), [0, 0]).real == pytest.approx(1 / (2 * math.log(2)), rel=1e-14)
    assert 1 / (2 * math.log(2)) == pytest.approx(0.7213, abs=1e-4)


def test_evaluate_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        evaluate(Gaussian(2), [0, 0, 0])


def test_sample_centre_and_mollifier_mass_converges():
    f = sample(Gaussian(2, 1.0), GridND.cube(2, -1, 1, 3))
    assert f.values[1, 1] == pytest.approx(1.0)
    errs = []
    for count in (41, 81, 161):
        s = sample(Mollifier(2, 1.0), GridND.cube(2, -1.2, 1.2, count))
        errs.append(abs(s.integral() - 1.0))
    assert errs[-1] < 1e-6
    assert errs[1] <= errs[0] and errs[2] <= errs[1]


def test_sample_dimension_mismatch():
    with pytest.raises(ValueError):
        sample(Gaussian(3), GridND.cube(2, -1, 1, 5))


@pytest.mark.parametrize("n,eps", [(2, 1.0), (3, 0.5), (2, 0.05)])
def test_mollifier_unit_mass(n, eps):
    f = Mollifier(n, eps)
    from scipy import integrate
    val, _ = integrate.quad(lambda r: float(f.profile(r)) * r ** (n - 1), 0, eps, epsabs=1e-15, epsrel=1e-12)
    assert sphere_area(n - 1) * val == pytest.approx(1.0, abs=1e-10)


def test_gaussian_radon_oracle_values():
    assert gaussian_radon_oracle(2, 0.0) == pytest.approx(math.sqrt(math.pi))
    assert gaussian_radon_oracle(3, 0.0) == pytest.approx(math.pi)
    assert gaussian_radon_oracle(2, 40.0) == 0.0


@given(st.floats(-6, 6), st.integers(2, 5))
def test_gaussian_radon_oracle_even(t, n):
    assert gaussian_radon_oracle(n, t) == gaussian_radon_oracle(n, -t)


def test_gaussian_fourier_pair():
    # exp(-|x|^2) has transform pi^{n/2} exp(-|xi|^2/4) under exp(+i x.xi)
    f = Gaussian(2, 1.0)
    xi = np.array([[0.0, 0.0], [1.0, 0.5], [2.0, -1.0]])
    expect = math.pi * np.exp(-np.sum(xi ** 2, axis=1) / 4)
    assert np.allclose(f.fourier(xi), expect, rtol=1e-14)


@settings(max_examples=30, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2), st.integers(1, 4))
def test_gaussian_dn_matches_finite_difference(x1, x2, k):
    f = Gaussian(2, 1.3)
    h = 1e-3
    x = np.array([[x1, x2]])
    lo = f.dn(x - [0, h], k - 1)
    hi = f.dn(x + [0, h], k - 1)
    fd = (hi - lo) / (2 * h)
    assert np.allclose(f.dn(x, k), fd, rtol=1e-5, atol=1e-6)


def test_gaussian_laplacian_power():
    f = Gaussian(2, 1.0)
    x = np.array([[0.3, -0.4]])
    r2 = 0.25
    # Delta exp(-r^2) = (4 r^2 - 4) exp(-r^2) in two dimensions
    assert f.laplacian_power(x, 1)[0] == pytest.approx((4 * r2 - 4) * math.exp(-r2), rel=1e-12)


def test_bandlimited_spectrum_avoids_band():
    f = BandLimited(2, 1.0, 3.0, 7)
    assert np.all(np.abs(f.modes[:, -1]) >= f.r0)
    assert np.all(np.linalg.norm(f.modes, axis=1) <= f.r1 + 1e-12)
    s = dft(sample(f, GridND.cube(2, -60, 60, 600)))
    xi_n = s.freqs[1]
    e = np.abs(s.coeffs) ** 2
    assert e[:, np.abs(xi_n) < f.r0].sum() < 1e-12 * e.sum()


def test_bandlimited_real_and_seeded():
    a = BandLimited(2, 1.0, 3.0, 7)
    b = BandLimited(2, 1.0, 3.0, 7)
    c = BandLimited(2, 1.0, 3.0, 8)
    x = np.random.default_rng(0).normal(size=(20, 2)) * 3
    assert np.array_equal(a(x), b(x))
    assert not np.allclose(a(x), c(x))
    assert np.isrealobj(a(x))


def test_bandlimited_fourier_matches_sampled_dft():
    f = BandLimited(2, 1.0, 3.0, 7)
    s = dft(sample(f, GridND.cube(2, -60, 60, 601)))
    xi = np.stack(np.meshgrid(*s.freqs, indexing="ij"), axis=-1)
    exact = f.fourier(xi)
    peak = np.max(np.abs(exact))
    assert np.max(np.abs(s.coeffs - exact)) < 1e-9 * peak


def test_bandlimited_empty_band_rejected():
    with pytest.raises(ValueError):
        BandLimited(2, 2.9, 3.0, 1, width=6.0)
    with pytest.raises(ValueError):
        BandLimited(2, 3.0, 1.0)


@pytest.mark.parametrize("text,cls", [
    ("gaussian:a=1", Gaussian), ("mollifier:eps=0.5", Mollifier),
    ("logdecay:p=1.5,n=2", LogDecay), ("bandlimited:r0=1,r1=3,seed=7", BandLimited),
])
def test_parse_function_dsl(text, cls):
    f = parse_function(text)
    assert isinstance(f, cls)
    assert parse_function(f.dsl) == f


@pytest.mark.parametrize("text", ["", "sinc", "gaussian:a", "gaussian:b=1", "gaussian:a=x", "mollifier:eps=-1"])
def test_parse_function_errors(text):
    with pytest.raises(ValueError):
        parse_function(text)


def test_dilated_and_derivative_wrappers():
    f = Gaussian(2, 1.0)
    d = f.dilated(2.0, 0.5)
    x = np.array([[0.3, 0.7]])
    assert d(x)[0] == pytest.approx(f(x * [2.0, 0.5])[0])
    assert d.mass() == pytest.approx(math.pi / (2.0 * 0.5))
    assert d.fourier(np.array([[1.0, 1.0]]))[0] == pytest.approx(f.fourier(np.array([[0.5, 2.0]]))[0] / 1.0)
    g = NthDerivative(f, 2)
    assert g(x)[0] == pytest.approx(f.dn(x, 2)[0])
    with pytest.raises(ValueError):
        Dilated(f, -1.0, 1.0)


def test_grids():
    g = Grid1D(-1, 1, 5)
    assert g.h == 0.5 and np.allclose(g.nodes, [-1, -0.5, 0, 0.5, 1])
    w = Grid1D.with_step(0.0, 1.0, 0.3)
    assert w.h <= 0.3 and w.nodes[-1] == pytest.approx(1.0)
    with pytest.raises(ValueError):
        Grid1D(1, 0, 5)
    assert default_grid(2).shape == (512, 512)
    assert default_grid(3).shape == (96, 96, 96)
    uneven = GridND((Grid1D(0, 1, 5), Grid1D(0, 1, 9)))
    with pytest.raises(ValueError):
        uneven.require_uniform()


def test_sphere_area():
    assert sphere_area(1) == pytest.approx(2 * math.pi)
    assert sphere_area(2) == pytest.approx(4 * math.pi)
    assert sphere_area(0) == pytest.approx(2.0)
