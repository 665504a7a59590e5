"""Analytic partial-wave phase shifts next to the Numerov asymptotic fit."""

import math
import warnings

from kgyukawa.model import Coupling, PhysicalParams, TrustRegionWarning
from kgyukawa.scatter import phase_shift
from kgyukawa.verify import oracle_phase

warnings.simplefilter("ignore", TrustRegionWarning)

print(f"{'eta':>5} {'alpha':>5} {'l':>2} {'E':>5} {'coupling':>9} {'analytic':>10} {'numerov':>10} {'|diff| mod pi':>13}")
for eta, alpha, l, E in ((0.0, 0.1, 1, 1.5), (0.1, 0.05, 0, 1.2), (0.25, 0.3, 2, 1.4)):
    p = PhysicalParams(eta=eta, alpha=alpha)
    for coupling in Coupling:
        a = phase_shift(p, l, E, coupling).phase_total
        o = oracle_phase(p, l, E, coupling)
        d = abs(math.remainder(a - o, math.pi))
        print(f"{eta:5.2f} {alpha:5.2f} {l:2d} {E:5.2f} {coupling.name:>9} {a:10.6f} {o:10.6f} {d:13.2e}")
