import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from fracradon.frac1d import (
    FracOrder, Signal, fourier_symbol, kappa, lambda_kernel, lambda_kernel_mass, marchaud,
    marchaud_truncated, richardson, rl_continued, rl_integral, rl_integral_at, spectral_derivative,
)
from fracradon.functions import Grid1D
from fracradon.spectral import dft_1d

from oracles import rl_gauss

GRID = Grid1D(-8.0, 8.0, 2 ** 14)


def gauss_signal(grid=GRID, analytic=False):
    def d(t, k):
        # d^k/dt^k e^{-t^2} = (-1)^k H_k(t) e^{-t^2}
        c = np.zeros(k + 1)
        c[k] = 1
        return (-1) ** k * np.polynomial.hermite.hermval(t, c) * np.exp(-t * t)
    return Signal.from_function(lambda t: np.exp(-t * t), grid, d if analytic else None)


# -- constants and kernels


@pytest.mark.parametrize("ell,a,expect", [
    (1, 0.5, 2 * math.sqrt(math.pi)),
    (2, 1.0, 2 * math.log(2)),
    (2, 0.5, 2 * math.sqrt(math.pi) * (2 - math.sqrt(2))),
])
def test_kappa_examples(ell, a, expect):
    oracle = mp.quad(lambda v: (1 - mp.exp(-v)) ** ell * v ** (-a - 1), [0, 1, mp.inf])
    assert float(oracle) == pytest.approx(expect, rel=1e-12)
    assert kappa(ell, a) == pytest.approx(expect, rel=1e-12)


def test_kappa_domain():
    with pytest.raises(ValueError):
        kappa(1, 1.0)
    with pytest.raises(ValueError):
        kappa(0, 0.5)


def test_lambda_kernel_value():
    assert lambda_kernel(1, 0.5, 0.5) == pytest.approx(math.sqrt(2) / math.pi, rel=1e-14)
    assert math.sqrt(2) / math.pi == pytest.approx(0.45016, abs=1e-5)


@pytest.mark.parametrize("ell,a", [(1, 0.5), (2, 0.5), (2, 1.0), (3, 2.5), (1, 0.1)])
def test_lambda_kernel_unit_mass(ell, a):
    assert lambda_kernel_mass(ell, a) == pytest.approx(1.0, abs=1e-10)


def test_lambda_kernel_decay():
    # lambda ~ C eta^{a - ell - 1}; brute-force the constant on a long range
    eta = np.geomspace(10, 1e5, 200)
    scaled = lambda_kernel(1, 0.5, eta) * eta ** 1.5
    C = scaled.max()
    assert lambda_kernel(1, 0.5, 10.0) <= C * 10 ** -1.5
    assert np.ptp(scaled[-50:]) < 1e-3 * C


def test_fourier_symbol_examples():
    tau = np.array([-2.0, -0.5, 0.3, 4.0])
    assert np.allclose(fourier_symbol(0, tau), 1)
    assert fourier_symbol(1, 1.0) == pytest.approx(1j)
    assert fourier_symbol(1, 1.0, "-") == pytest.approx(-1j)
    with pytest.raises(ValueError):
        fourier_symbol(0.5, 0.0)


@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(0.01, 50), st.sampled_from([-1.0, 1.0]))
def test_fourier_symbol_modulus(ar, ai, mag, sgn):
    tau = sgn * mag
    m = abs(fourier_symbol(complex(ar, ai), tau))
    expect = mag ** (-ar) * math.exp(-ai * math.pi / 2 * sgn)
    assert m == pytest.approx(expect, rel=1e-12)


# -- Riemann-Liouville integrals


def test_rl_integral_of_step():
    g = Grid1D(-1.0, 2.0, 30001)
    sig = Signal.from_function(lambda t: (t >= 0).astype(float), g)
    out = rl_integral(sig, 0.5)
    k = np.argmin(np.abs(g.nodes - 1.0))
    assert out.values[k] == pytest.approx(2 / math.sqrt(math.pi), rel=1e-3)


def test_rl_integral_examples():
    out = rl_integral(gauss_signal(), 1.0)
    k = np.argmin(np.abs(GRID.nodes))
    t0 = GRID.nodes[k]
    assert out.values[k] == pytest.approx(math.sqrt(math.pi) / 2 * (1 + math.erf(t0)), rel=1e-7)
    zero = rl_integral(Signal(GRID, np.zeros(GRID.count)), 0.7)
    assert np.all(zero.values == 0)


@pytest.mark.parametrize("alpha", [0.5, 1.3, 0.4 + 0.6j])
def test_rl_integral_against_oracle(alpha):
    out = rl_integral(gauss_signal(), alpha).values
    for t in (-1.5, -0.2, 0.0, 0.9, 2.5):
        k = np.argmin(np.abs(GRID.nodes - t))
        ref = rl_gauss(alpha, GRID.nodes[k])
        assert abs(out[k] - ref) < 1e-6 * max(1, abs(ref))


def test_rl_integral_minus_side_reflects():
    plus = rl_integral(gauss_signal(), 0.6).values
    minus = rl_integral(gauss_signal(), 0.6, "-").values
    assert np.allclose(minus, plus[::-1], atol=1e-13)


def test_rl_integral_at_matches_grid():
    g = Grid1D(-8, 8, 4097)
    sig = gauss_signal(g)
    full = rl_integral(sig, 0.5).values
    idx = np.array([100, 2048, 3000])
    assert np.allclose(rl_integral_at(g.nodes, sig.values, 0.5, g.nodes[idx]), full[idx], rtol=1e-12)


def test_rl_integral_rejects():
    with pytest.raises(ValueError):
        rl_integral(gauss_signal(), -0.5)
    g = Grid1D(-1, 8, 400)
    with pytest.raises(ValueError):
        rl_integral(gauss_signal(g), 0.5)


@settings(max_examples=12, deadline=None)
@given(st.floats(0.1, 1.0), st.floats(0.1, 1.0))
def test_semigroup_property(a, b):
    g = Grid1D(-8.0, 8.0, 2 ** 12)
    s = gauss_signal(g)
    lhs = rl_integral(rl_integral(s, a), b).values
    rhs = rl_integral(s, a + b).values
    assert np.max(np.abs(lhs - rhs)) / np.max(np.abs(rhs)) <= 1e-4


def test_rl_continued_examples():
    s = gauss_signal(analytic=True)
    assert np.array_equal(rl_continued(s, 0).values, s.values)
    d = rl_continued(s, -1).values
    k = np.argmin(np.abs(GRID.nodes - 1.0))
    t = GRID.nodes[k]
    assert d[k] == pytest.approx(-2 * t * math.exp(-t * t), rel=1e-12)
    assert -2 * math.exp(-1) == pytest.approx(-0.73576, abs=1e-5)
    back = rl_integral(rl_continued(s, -0.5), 0.5).values
    assert np.max(np.abs(back - s.values)) / np.max(np.abs(s.values)) <= 1e-4


@pytest.mark.parametrize("alpha", [-0.5, -1.5 + 0.5j, 0.3j])
def test_rl_continued_against_oracle(alpha):
    out = rl_continued(gauss_signal(analytic=True), alpha).values
    for t in (-1.0, 0.0, 0.7, 2.0):
        k = np.argmin(np.abs(GRID.nodes - t))
        ref = rl_gauss(alpha, GRID.nodes[k])
        assert abs(out[k] - ref) < 1e-5 * max(1, abs(ref))


def test_rl_continued_grid_convergence():
    errs = []
    for count in (401, 801):
        g = Grid1D(-8, 8, count)
        out = rl_continued(gauss_signal(g, analytic=True), -0.5).values
        ref = np.array([rl_gauss(-0.5, t) for t in g.nodes[::40]]).real
        errs.append(np.max(np.abs(out[::40] - ref)))
    assert errs[0] / errs[1] >= 3


def test_spectral_derivative_inverts_integration():
    # an oscillating signal has no low-frequency content, so I^a of it decays on both sides
    g = Grid1D(-80, 80, 2 ** 13)
    w = Signal(g, np.cos(3 * g.nodes) * np.exp(-g.nodes ** 2 / 72))
    for a in (0.3, 0.8):
        hi = rl_integral(w, a + 1).values
        lo = rl_integral(w, a).values
        d = spectral_derivative(hi, g.h, 1)
        assert np.max(np.abs(d - lo)) / np.max(np.abs(lo)) <= 1e-4


def test_spectral_consistency_on_band_limited_signal():
    g = Grid1D(-80, 80, 2 ** 13)
    t = g.nodes
    w = np.cos(3 * t) * np.exp(-t * t / 72)
    alpha = 0.5
    # an oscillating signal has no DC content, so the integral decays on both sides
    out = rl_integral(Signal(g, w), alpha).values
    lhs = dft_1d(out, g)
    xi = 2 * np.pi * np.fft.fftfreq(g.count, g.h)
    c = dft_1d(w, g)
    keep = np.abs(xi) > 1.0
    rhs = fourier_symbol(alpha, xi[keep]) * c[keep]
    assert np.linalg.norm(lhs[keep] - rhs) / np.linalg.norm(rhs) <= 1e-3


# -- Marchaud derivative


def test_marchaud_truncated_zero_and_linear():
    g = Grid1D(-8, 8, 1025)
    zero = Signal(g, np.zeros(g.count))
    assert np.all(marchaud_truncated(zero, 0.5, 2 * g.h, 1).values == 0)
    u = gauss_signal(g)
    v = Signal(g, np.exp(-(g.nodes - 1) ** 2))
    both = Signal(g, 2 * u.values - 3 * v.values)
    lhs = marchaud_truncated(both, 0.5, 2 * g.h, 2).values
    rhs = 2 * marchaud_truncated(u, 0.5, 2 * g.h, 2).values - 3 * marchaud_truncated(v, 0.5, 2 * g.h, 2).values
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_marchaud_inverts_rl_integral():
    g = Grid1D(-8.0, 8.0, 2 ** 12 + 1)
    s = gauss_signal(g)
    d = marchaud(rl_integral(s, 0.5), 0.5)
    assert np.max(np.abs(d.values - s.values)) <= 1e-3


@pytest.mark.parametrize("ell", [1, 2])
def test_truncated_marchaud_is_an_approximate_identity(ell):
    a, eps = 0.5, 0.25
    g = Grid1D(-8.0, 8.0, 2 ** 13 + 1)
    s = gauss_signal(g)
    lhs = marchaud_truncated(rl_integral(s, a), a, eps, ell).values
    for x in (-0.8, 0.0, 0.6):
        k = np.argmin(np.abs(g.nodes - x))
        xk = g.nodes[k]
        f = lambda e: float(lambda_kernel(ell, a, np.array([e]))[0]) * math.exp(-(xk - eps * e) ** 2)
        rhs = sum(integrate.quad(f, lo, hi, limit=200)[0] for lo, hi in ((0, 1), (1, 2), (2, 60), (60, np.inf)))
        assert lhs[k] == pytest.approx(rhs, abs=1e-4)


def test_marchaud_rejects_small_eps():
    g = Grid1D(-8, 8, 101)
    with pytest.raises(ValueError):
        marchaud_truncated(gauss_signal(g), 0.5, g.h / 2, 1)
    with pytest.raises(ValueError):
        marchaud_truncated(gauss_signal(g), 1.5, g.h, 1)


def test_richardson_exact_on_model_expansion():
    eps = np.array([0.1, 0.2, 0.4])
    vals = 3.0 + 2 * eps ** 0.5 - eps ** 1.5
    assert richardson(vals, eps, [0.5, 1.5]) == pytest.approx(3.0, abs=1e-12)


def test_frac_order():
    assert FracOrder(-1.5).level == 2
    assert FracOrder(0.5).level == 0
    assert FracOrder(-2).nonpositive_integer
    with pytest.raises(ValueError):
        FracOrder(-1.5, level=1)
