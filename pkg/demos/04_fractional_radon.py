"""Fractional integrals along Radon slices, for complex order, and the identities tying them together."""

import math
import warnings

import numpy as np

from fracradon import fracradon as fr
from fracradon.functions import BandLimited, Gaussian

warnings.simplefilter("ignore")
f = Gaussian(2, 1.0)
theta = np.array([0.0, 1.0])

print("R_+^1 f(e_2, 0) =", fr.r_plus(f, 1.0, theta, 0.0), " pi/2 =", math.pi / 2)
for alpha in (0.5, 0.5 + 0.5j, -0.5, -1.3 + 0.2j):
    print(f"R_+^({alpha}) f(e_2, 0.3) =", fr.r_plus(f, alpha, theta, 0.3))

# the transversal version agrees with R_+^a after the Lambda change of variables,
# on both hemispheres of directions
th = np.array([[0.6, 0.8], [0.6, -0.8]])
print("R_+^1/2 vs Lambda T_+^1/2:", fr.r_plus(f, 0.5, th, 0.3), fr.lambda_conjugate(f, 0.5, th, np.array([0.3, 0.3])))

# four ways to reach order -1/2 on a band-limited input
b = BandLimited(2, 1.0, 3.0, 7)
x = np.array([[0.2, -0.5], [0.2, 0.0], [0.2, 0.7]])
print("hypersingular:", fr.t_plus_hypersingular(b, 0.5, x))
print("spectral     :", fr.t_plus(b, -0.5, x, method="spectral"))

# and the order is holomorphic: a small contour average reproduces the centre
print("Cauchy circle defect:", np.max(np.abs(fr.cauchy_circle(lambda a: fr.t_plus(f, a, x), 0.5))))

# the inversion formula for T on band-limited inputs
rec, err = fr.invert(b)
print("relative l2 error of (2 pi)^-1 T_+^-1/2 T*_+^-1/2 f:", err)
