"""Fourier machinery: the scaled DFT, multipliers, Riesz potentials and the slice theorem."""

import math

import numpy as np

from fracradon import spectral as sp
from fracradon.frac1d import Signal, fourier_symbol, rl_integral
from fracradon.functions import BandLimited, Gaussian, Grid1D, GridND, sample

# the DFT approximates the continuous transform with exp(+i x.xi)
g = sample(Gaussian(2, 1.0), GridND.cube(2, -8, 8, 128))
s = sp.dft(g)
exact = math.pi * np.exp(-np.sum(s.mesh() ** 2, axis=-1) / 4)
print("gaussian transform error:", np.max(np.abs(s.coeffs - exact)))

# the multiplier (-i xi)^{-a} is the Riemann-Liouville integral on inputs without low frequencies
axis = Grid1D(-80, 80, 2 ** 13)
w = np.cos(3 * axis.nodes) * np.exp(-axis.nodes ** 2 / 72)
spec = sp.apply_multiplier(w, axis, lambda xi: fourier_symbol(0.5, xi), tol=1e-10)
rl = rl_integral(Signal(axis, w), 0.5).values
print("multiplier vs RL:", np.max(np.abs(spec - rl)) / np.max(np.abs(rl)))

# Riesz potentials compose additively
b = sample(BandLimited(2, 1.0, 3.0, 7), GridND.cube(2, -40, 40, 320))
two = sp.riesz_nd(sp.riesz_nd(b, 0.3, tol=1e-8), 0.5, tol=1e-8).values
one = sp.riesz_nd(b, 0.8, tol=1e-8).values
print("I^0.3 I^0.5 vs I^0.8:", np.max(np.abs(two - one)) / np.max(np.abs(one)))

# Fourier slice theorem for R and for T
for variant in ("R", "T"):
    print(f"slice theorem for {variant}:", sp.slice_check(Gaussian(2, 1.0), variant))
