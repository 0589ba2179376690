"""Weighted norm estimates, their sharp constants, and the witnesses for sharpness."""

import math
import warnings

from fracradon import estimates as es
from fracradon.functions import BandLimited, Gaussian, Mollifier

warnings.simplefilter("ignore")

print("A(1, 2) =", es.constant_A(1.0, 2), " 2 pi =", 2 * math.pi)
for a0 in (-0.5, 0.0, 0.5, 1.0):
    e = es.exponents(a0, 2)
    print(f"alpha0={a0:5}: p={e.p:.4f} q={e.q:.4f} nu={e.nu:.4f} mu={e.mu:.4f}")

for r in (es.radon_norm_audit(Mollifier(2, 1.0), 1.0), es.radon_norm_audit(Gaussian(2, 1.0), 1.2),
          es.transversal_norm_audit(Gaussian(2, 1.0), 1.2)):
    print(f"{r.operator} {r.input} p={r.params['p']}: {r.measured:.6f} {r.kind} {r.theory:.6f}")

# weak type at alpha = 1/2: lambda^2 times the superlevel measure is stable
w = es.weak_type_audit(0.5, cells=1000)
print("weak type ratios:", w.meta["ratios"])

# divergence at the endpoint exponent, convergence below it
for p in (2.0, 1.2):
    d = es.divergence_witness(p, 0.0)
    print(f"p={p}: partial integrals", [round(v, 4) for v in d.meta["partials"]])

# Gamma on vertical lines
print(es.gamma_modulus_check().measured, es.gamma_asymptotic_check().measured)

# transfer identities between the cylinder and R^n
for name in es.TRANSFER_NAMES:
    r = es.transfer_identity(name, Gaussian(2, 1.0), p=1.5, alpha=0.5)
    print(f"{name:6s} {r.measured:.10f} {r.theory:.10f}")

# the L2 identity with the constant that Plancherel gives
for r in es.l2_identity_check(BandLimited(2, 1.0, 3.0, 7), (0.0, 0.5), constant="plancherel"):
    print(r.operator, r.params.get("gamma"), r.measured, r.theory)
