"""Compare the two coupling weights of the E V cross term against a Numerov solve.

The tabulated energies follow from weight 1; the wave equation with the full
(E - V)^2 carries weight 2. The shooting solver settles the question.
"""

import warnings

from kgyukawa.bound import energy_closed_form
from kgyukawa.model import Coupling, PhysicalParams, QuantumNumbers, TrustRegionWarning
from kgyukawa.oracle import shoot_eigenvalue

warnings.simplefilter("ignore", TrustRegionWarning)

p = PhysicalParams(eta=0.1, alpha=0.01)
for n, l in ((0, 0), (1, 0)):
    q = QuantumNumbers(n, l)
    for coupling in Coupling:
        closed = energy_closed_form(p, q, coupling).energy_plus
        shot = shoot_eigenvalue(p, q, coupling=coupling, energy_hint=closed).eigenvalue
        print(f"n={n} l={l} {coupling.name:9s} closed {closed:.12f}  numerov {shot:.12f}  diff {abs(closed - shot):.1e}")
