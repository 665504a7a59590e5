"""Scattering states above threshold, E^2 > m0^2 c^4.

With s = 1 - e^{-2 alpha r} the regular solution is

    phi = s^{k1} (1 - s)^{i k2'} 2F1(k1 + i k2' + A, k1 + i k2' - A; 2 k1; s),

where A^2 is the continuation of lambda_1^2 above threshold. For large r it
tends to 2 |C| Gamma(2 k1) sin(2 alpha k2' r + pi/2 + arg C) with

    C = Gamma(2 i k2') / (Gamma(k1 + i k2' - A) Gamma(k1 + i k2' + A)),

which defines the phase shift delta_l = (l + 1) pi/2 + arg C.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .bound import Branch, big_l, lambda_squares
from .errors import ClosedChannel
from .model import Coupling, PhysicalParams, QuantumNumbers
from .specfun import gamma_arg, gauss_2f1, gauss_2f1_complement, ln_gamma

__all__ = [
    "ScatterSolution",
    "scatter_exponents",
    "a_param",
    "phase_gamma",
    "phase_shift",
    "reduce_phase",
    "scatter_wavefunction",
    "asymptotic_wavefunction",
    "continued_pole_argument",
]


@dataclass(frozen=True)
class ScatterSolution:
    """Phase shift of one partial wave.

    ``phase_total`` is (l + 1) pi/2 + ``phase_gamma`` before any reduction;
    ``phase_reduced`` is the same angle brought into (-pi, pi].
    """

    k1: float
    k2_prime: float
    A_param: complex
    phase_total: float
    phase_gamma: float
    amplitude: float
    phase_reduced: float


def reduce_phase(x: float) -> float:
    """Angle x mod 2 pi, in (-pi, pi]."""
    y = math.remainder(x, 2.0 * math.pi)
    return math.pi if y <= -math.pi else y


def scatter_exponents(p: PhysicalParams, l: int, E: float) -> tuple[float, float]:
    """(k1, k2') = ((1 + L(l))/2, beta sqrt(E^2 - m0^2 c^4) / (2 alpha))."""
    if E**2 <= p.rest_energy**2:
        raise ClosedChannel(f"E^2 = {E**2} does not exceed (m0 c^2)^2 = {p.rest_energy**2}")
    k1 = 0.5 * (1.0 + big_l(p, l))
    k2 = p.beta * math.sqrt(E**2 - p.rest_energy**2) / (2.0 * p.alpha)
    return k1, k2


def a_param(p: PhysicalParams, E: float, coupling: Coupling = Coupling.PUBLISHED) -> complex:
    """Principal square root of the lambda_1^2 expression at energy E.

    Negative radicands give a positive imaginary value.
    """
    rad = lambda_squares(p, E, coupling)[0]
    return complex(math.sqrt(rad), 0.0) if rad >= 0 else complex(0.0, math.sqrt(-rad))


def _coefficient_log(k1: float, k2: float, A: complex) -> complex:
    # ln C, C = Gamma(2 i k2) / (Gamma(k1 + i k2 - A) Gamma(k1 + i k2 + A))
    z = k1 + 1j * k2
    return ln_gamma(2j * k2) - ln_gamma(z - A) - ln_gamma(z + A)


def phase_gamma(k1: float, k2: float, A: complex) -> float:
    """arg Gamma(2 i k2) - arg Gamma(k1 + i k2 - A) - arg Gamma(k1 + i k2 + A)."""
    z = k1 + 1j * k2
    return gamma_arg(2j * k2) - gamma_arg(z - A) - gamma_arg(z + A)


def phase_shift(
    p: PhysicalParams, l: int, E: float, coupling: Coupling = Coupling.PUBLISHED
) -> ScatterSolution:
    k1, k2 = scatter_exponents(p, l, E)
    A = a_param(p, E, coupling)
    delta = phase_gamma(k1, k2, A)
    total = (l + 1) * 0.5 * math.pi + delta
    amp = 2.0 * math.exp(ln_gamma(2.0 * k1).real + _coefficient_log(k1, k2, A).real)
    return ScatterSolution(
        k1=k1,
        k2_prime=k2,
        A_param=A,
        phase_total=total,
        phase_gamma=delta,
        amplitude=amp,
        phase_reduced=reduce_phase(total),
    )


def scatter_wavefunction(
    p: PhysicalParams, l: int, E: float, r, coupling: Coupling = Coupling.PUBLISHED
):
    """Regular scattering solution at radius r (complex; imaginary part ~ 0).

    2F1 is summed directly for s <= 0.5 and through the 1 - s connection
    formula beyond, where the plain series stalls.
    """
    k1, k2 = scatter_exponents(p, l, E)
    A = a_param(p, E, coupling)
    a = k1 + 1j * k2 + A
    b = k1 + 1j * k2 - A
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r_arr <= 0):
        raise ValueError("r must be positive")
    out = np.empty(r_arr.shape, dtype=complex)
    for i, rv in enumerate(r_arr.flat):
        x = 2.0 * p.alpha * rv
        s = -math.expm1(-x)
        # s^k1 (1 - s)^{i k2} = s^k1 e^{-2 i k2 alpha r}
        pref = math.exp(k1 * math.log(s)) * cmath.exp(-1j * k2 * x)
        if s <= 0.5:
            f = gauss_2f1(a, b, 2.0 * k1, s)
        else:
            f = gauss_2f1_complement(a, b, 2.0 * k1, math.exp(-x))
        out.flat[i] = pref * f
    return complex(out[0]) if np.ndim(r) == 0 else out


def asymptotic_wavefunction(
    p: PhysicalParams,
    l: int,
    E: float,
    r,
    form: str = "explicit",
    coupling: Coupling = Coupling.PUBLISHED,
):
    """Large-r limit written as a sum of e^{-i k r} and e^{+i k r}.

    ``form="explicit"`` builds both coefficients from their own gamma
    functions; ``form="conjugate"`` writes the first as the complex
    conjugate of the second. The two agree identically.
    """
    k1, k2 = scatter_exponents(p, l, E)
    A = a_param(p, E, coupling)
    r = np.asarray(r, dtype=float)
    x = 2.0 * p.alpha * r
    g2k = math.exp(ln_gamma(2.0 * k1).real)
    c_plus = cmath.exp(_coefficient_log(k1, k2, A))
    if form == "explicit":
        z = k1 - 1j * k2
        c_minus = cmath.exp(ln_gamma(-2j * k2) - ln_gamma(z - A) - ln_gamma(z + A))
    elif form == "conjugate":
        c_minus = c_plus.conjugate()
    else:
        raise ValueError(f"unknown form {form!r}")
    env = (-np.expm1(-x)) ** k1 * g2k
    return env * (c_minus * np.exp(-1j * k2 * x) + c_plus * np.exp(1j * k2 * x))


def continued_pole_argument(p: PhysicalParams, q: QuantumNumbers, branch: Branch) -> float:
    """k1 + i k2' + A continued below threshold (i k2' -> lambda_2, A -> lambda_1).

    Equals -n at an eigenvalue of the quantization condition.
    """
    return 0.5 * (1.0 + big_l(p, q.l)) + branch.lambda2 + branch.lambda1
