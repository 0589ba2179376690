import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracradon.gamma import gamma, loggamma, rgamma


@settings(max_examples=60, deadline=None)
@given(st.floats(-8.5, 12), st.floats(-15, 15))
def test_gamma_matches_mpmath(x, y):
    z = complex(x, y)
    if y == 0 and x <= 0 and x == round(x):
        return
    ref = complex(mp.gamma(mp.mpc(x, y)))
    if not np.isfinite(ref):
        # out of double range next to a pole
        assert math.isinf(abs(gamma(z)))
        return
    assert abs(gamma(z) - ref) <= 1e-12 * abs(ref) + 1e-300


def test_gamma_overflow_next_to_pole():
    for z in (5e-324j, -3 + 5e-324j, complex(-1e-320, 0)):
        assert math.isinf(abs(gamma(z)))
    assert gamma(1e-300j) == pytest.approx(-1e300j, rel=1e-12)


@pytest.mark.parametrize("z", [-3 + 1e-10, -2 + 1e-9j, -7.5 + 2j])
def test_gamma_accurate_near_negative_integers(z):
    ref = complex(mp.gamma(mp.mpc(z)))
    assert abs(gamma(complex(z)) - ref) <= 1e-13 * abs(ref)
    assert abs(rgamma(complex(z)) * ref - 1) <= 1e-13


@pytest.mark.parametrize("g", [0.5, 1.0, 2.0])
def test_modulus_identity(g):
    # |Gamma(1+ig)|^2 = pi g / sinh(pi g)
    assert abs(gamma(1 + 1j * g)) ** 2 == pytest.approx(math.pi * g / math.sinh(math.pi * g), rel=1e-12)


def test_modulus_at_one():
    assert abs(gamma(1 + 1j)) ** 2 == pytest.approx(0.272029, abs=1e-6)


def test_poles_and_reciprocal():
    for k in range(0, 5):
        assert rgamma(-k) == 0
        assert math.isinf(abs(gamma(-k)))
    assert rgamma(0.5) == pytest.approx(1 / math.sqrt(math.pi))


@given(st.floats(0.1, 20))
def test_loggamma_real(x):
    assert loggamma(x).real == pytest.approx(math.lgamma(x), rel=1e-12, abs=1e-12)


def test_vectorized():
    z = np.array([0.5, 1.5 + 1j, -2.5])
    out = gamma(z)
    assert out.shape == (3,)
    assert out[0] == pytest.approx(math.sqrt(math.pi))
