"""Follow the Yukawa ground state as the screening vanishes.

The sequence settles on the vector-coupled Klein-Gordon Coulomb level,
not on the scalar-plus-vector closed form.
"""

import math
import warnings

from kgyukawa.bound import coulomb_energy, energy_root_found
from kgyukawa.model import PhysicalParams, QuantumNumbers, TrustRegionWarning, coulomb_limit_map

warnings.simplefilter("ignore", TrustRegionWarning)

q = QuantumNumbers(0, 0)
eta = 0.1
s = 0.5 + math.sqrt(0.25 - eta**2)
vector = 1 / math.sqrt(1 + (eta / 2) ** 2 / s**2)
for alpha in (1e-2, 1e-3, 1e-4):
    p = PhysicalParams(eta=eta, alpha=alpha)
    e = energy_root_found(p, q).energy_plus
    print(f"alpha={alpha:.0e}  Yukawa E+ = {e:.9f}")
p = PhysicalParams(eta=eta, alpha=1e-4)
print(f"vector Coulomb level     = {vector:.9f}")
print(f"scalar+vector closed form = {coulomb_energy(coulomb_limit_map(p), q).energy:.9f}")
