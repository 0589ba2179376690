"""The input corpus: gaussians, mollifiers, slowly decaying witnesses and band-limited functions."""

import numpy as np

from fracradon.functions import BandLimited, GridND, parse_function, sample
from fracradon.spectral import band_mass_fraction

# Functions are described by short strings, which is also what the CLI accepts.
for text in ["gaussian:a=1", "mollifier:eps=0.5", "logdecay:p=1.5,n=2", "bandlimited:r0=1,r1=3,seed=7"]:
    f = parse_function(text)
    print(f"{text:32s} -> {f.dsl:45s} f(0) = {complex(f(np.zeros((1, 2)))[0]).real:.6f}")

# A mollifier has unit mass; sampling on finer grids converges to it.
m = parse_function("mollifier:eps=1")
for count in (41, 81, 161):
    print("mollifier mass on", count, "points:", sample(m, GridND.cube(2, -1.2, 1.2, count)).integral())

# Band-limited inputs keep their spectrum away from the hyperplane xi_n = 0,
# which is what the fractional operators of negative order need.
b = BandLimited(2, 1.0, 3.0, 7)
field = sample(b, GridND.cube(2, -60, 60, 600))
print("spectral energy inside |xi_n| < 1:", band_mass_fraction(field, 1.0))
