"""Physical model: potential, mass profile, centrifugal approximation.

Units are explicit. ``hbar`` and ``c`` default to 1 (natural units, the
convention of the published tables); ``beta = 1/(hbar c)``.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "Coupling",
    "PhysicalParams",
    "QuantumNumbers",
    "CoulombParams",
    "TrustRegionWarning",
    "yukawa_potential",
    "approx_potential",
    "centrifugal_exact",
    "centrifugal_approx",
    "mass_function",
    "coulomb_limit_map",
]

#: Couplings beyond which the centrifugal approximation is not trusted.
TRUST_ETA = 0.25
TRUST_ALPHA = 0.30


class TrustRegionWarning(UserWarning):
    """Parameters outside eta <= 0.25, alpha <= 0.30 (natural units)."""


class Coupling(enum.Enum):
    """Weight of the energy-potential cross term ``E V`` in the radial equation.

    The radial equation carries ``E^2 - 2 E V + V^2``. Substituting the
    exponential potential into it gives an ``E beta^2 eta / alpha`` term in the
    small-z exponent. The published closed forms (and hence the tables) carry
    ``E beta^2 eta / (2 alpha)`` instead, i.e. they solve the equation with
    ``E^2 - E V + V^2``.

    ``PUBLISHED`` (weight 1) reproduces the tables and is the default for the
    analytic formulas. ``STRICT`` (weight 2) is the radial equation as
    written and is the default for the numerical oracle.
    """

    PUBLISHED = 1.0
    STRICT = 2.0

    @property
    def weight(self) -> float:
        return self.value


@dataclass(frozen=True)
class PhysicalParams:
    """Parameters of the effective-mass Klein-Gordon-Yukawa problem.

    Attributes
    ----------
    m0 : rest mass
    m1 : strength of the position-dependent mass deformation
    eta : coupling strength, energy x length
    alpha : screening parameter, 1/length
    hbar, c : unit constants
    """

    m0: float = 1.0
    m1: float = 0.0
    eta: float = 0.1
    alpha: float = 0.01
    hbar: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        for name in ("m0", "alpha", "hbar", "c"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)}")
        for name in ("m1", "eta"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.outside_trust_region:
            warnings.warn(
                f"eta = {self.eta}, alpha = {self.alpha} lie outside the region "
                f"(eta <= {TRUST_ETA}, alpha <= {TRUST_ALPHA}) where the centrifugal "
                "approximation is trusted",
                TrustRegionWarning,
                stacklevel=3,
            )

    @property
    def beta(self) -> float:
        return 1.0 / (self.hbar * self.c)

    @property
    def rest_energy(self) -> float:
        """m0 c^2."""
        return self.m0 * self.c**2

    @property
    def outside_trust_region(self) -> bool:
        # thresholds are quoted in natural units
        return abs(self.eta * self.beta) > TRUST_ETA or self.alpha > TRUST_ALPHA

    def replace(self, **changes) -> "PhysicalParams":
        data = {k: getattr(self, k) for k in ("m0", "m1", "eta", "alpha", "hbar", "c")}
        data.update(changes)
        return PhysicalParams(**data)


@dataclass(frozen=True)
class QuantumNumbers:
    n: int = 0
    l: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a non-negative integer, got {self.n}")
        if int(self.l) != self.l or self.l < 0:
            raise DomainError(f"l must be a non-negative integer, got {self.l}")


@dataclass(frozen=True)
class CoulombParams:
    """Mass function M0 + M1/r of the Coulomb limit, with coupling eta."""

    M0: float
    M1: float
    eta: float


def _check_r(r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("r must be positive")
    return r


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def yukawa_potential(p: PhysicalParams, r):
    """-eta e^{-alpha r} / r."""
    r = _check_r(r)
    return _scalar(-p.eta * np.exp(-p.alpha * r) / r)


def approx_potential(p: PhysicalParams, r):
    """Exponential form -2 alpha eta e^{-2 alpha r} / (1 - e^{-2 alpha r})."""
    r = _check_r(r)
    # e^{-x}/(1 - e^{-x}) = 1/expm1(x)
    with np.errstate(over="ignore"):
        em = np.expm1(2.0 * p.alpha * r)
    return _scalar(-2.0 * p.alpha * p.eta / em)


def centrifugal_exact(l: int, r):
    r = _check_r(r)
    return _scalar(l * (l + 1) / r**2)


def centrifugal_approx(l: int, alpha: float, r):
    """l(l+1) 4 alpha^2 e^{-2 alpha r} / (1 - e^{-2 alpha r})^2."""
    r = _check_r(r)
    # e^{-2ar}/(1-e^{-2ar})^2 = 1/(4 sinh^2(ar)); stays finite for large r
    with np.errstate(over="ignore"):
        s = np.sinh(alpha * r)
    return _scalar(l * (l + 1) * alpha**2 / s**2)


def mass_function(p: PhysicalParams, r):
    """m0 + m1 / (e^{2 alpha r} - 1)."""
    r = _check_r(r)
    with np.errstate(over="ignore"):
        em = np.expm1(2.0 * p.alpha * r)
    return _scalar(p.m0 + p.m1 / em)


def coulomb_limit_map(p: PhysicalParams) -> CoulombParams:
    """Small-alpha expansion m(r) -> (m0 - m1/2) + m1/(2 alpha r)."""
    return CoulombParams(M0=p.m0 - 0.5 * p.m1, M1=p.m1 / (2.0 * p.alpha), eta=p.eta)
