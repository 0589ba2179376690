"""Hyperplane, transversal and parabolic Radon transforms, the dual transform and the coordinate maps."""

import math

import numpy as np

from fracradon import transforms as tr
from fracradon.functions import Gaussian, Grid1D, LogDecay, Mollifier

f = Gaussian(2, 1.0)
theta = np.array([0.6, 0.8])
t = np.array([0.0, 0.5, 1.0])
print("Rf(theta, t)      :", tr.radon(f, theta, t))
print("sqrt(pi) e^{-t^2} :", math.sqrt(math.pi) * np.exp(-t * t))

# a radial function reduces to a single radial quadrature
print("radial Rf(0), n=3 :", tr.radon_radial(lambda r: math.exp(-r * r), 3, 0.0), " pi =", math.pi)

# slow decay makes the hyperplane integrals diverge; this is flagged, not hidden
w = LogDecay(2, 2.0)
print("logdecay p=2      :", tr.radon_radial(lambda r: float(w.profile(r)), 2, 0.0))

# the transversal transform is the Radon transform read in the coordinates x = x(theta, t)
x = np.array([0.4, -0.3])
th, tt = tr.theta_from_x(x)
print("Rf = sqrt(1+|x'|^2) Tf :", tr.radon(f, th, tt), math.sqrt(1 + 0.16) * tr.transversal(f, x[None])[0])

# the parabolic transform is a sheared transversal transform: P = B2 T B1
print("Pf, B2 T B1 f          :", tr.parabolic(f, x), tr.b2(lambda y: tr.transversal(tr.b1(f), y))(x))

# the dual transform integrates over directions
D = tr.DirectionSet.equispaced(64)
off = Grid1D(-6, 6, 241)
phi = tr.CylinderField(D, off, np.tile(np.exp(-off.nodes ** 2), (len(D), 1)))
print("R* e^{-t^2} at 0       :", tr.radon_dual(phi, np.zeros(2)), " 2 pi =", 2 * math.pi)

# every Radon slice of a unit-mass function integrates to one
cf = tr.radon_field(Mollifier(2, 1.0), tr.DirectionSet.equispaced(16), Grid1D(-1.2, 1.2, 481))
print("slice masses           :", cf.mass().min(), cf.mass().max())
