"""One-dimensional fractional integrals and derivatives."""

import math

import numpy as np

from fracradon.frac1d import Signal, kappa, lambda_kernel_mass, marchaud, rl_continued, rl_integral
from fracradon.functions import Grid1D

grid = Grid1D(-8.0, 8.0, 2 ** 12 + 1)
g = Signal.from_function(lambda t: np.exp(-t * t), grid)
i0 = np.argmin(np.abs(grid.nodes))

# I^1 is the running integral, so at t = 0 it is half the gaussian mass
print("I^1 g(0)      =", rl_integral(g, 1.0).values[i0], " sqrt(pi)/2 =", math.sqrt(math.pi) / 2)

# semigroup: I^0.3 I^0.4 = I^0.7
a = rl_integral(rl_integral(g, 0.4), 0.3).values
b = rl_integral(g, 0.7).values
print("semigroup defect:", np.max(np.abs(a - b)) / np.max(np.abs(b)))

# complex orders work too
print("I^(0.4+0.6i) g(0) =", rl_integral(g, 0.4 + 0.6j).values[i0])

# the Marchaud derivative undoes I^1/2
d = marchaud(rl_integral(g, 0.5), 0.5)
print("Marchaud inversion sup error:", np.max(np.abs(d.values - g.values)))

# its kernel normalisation and the unit mass of the approximate identity
print("kappa(1, 1/2) =", kappa(1, 0.5), " 2 sqrt(pi) =", 2 * math.sqrt(math.pi))
for ell, alpha in ((1, 0.5), (2, 0.5), (2, 1.0)):
    print(f"mass of lambda_({ell},{alpha}) - 1 =", lambda_kernel_mass(ell, alpha) - 1)

# analytic continuation to negative order uses exact derivatives
def deriv(t, k):
    c = np.zeros(k + 1)
    c[k] = 1
    return (-1) ** k * np.polynomial.hermite.hermval(t, c) * np.exp(-t * t)

ga = Signal.from_function(lambda t: np.exp(-t * t), grid, deriv)
k = np.argmin(np.abs(grid.nodes - 1.0))
print("I^-1 g(1) =", rl_continued(ga, -1).values[k], " g'(1) =", -2 * math.exp(-1))
