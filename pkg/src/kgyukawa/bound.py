"""Bound states: exponents, quantization condition, energies, wave functions.

The closed-form spectrum used here is the algebraic solution of the
quantization condition

    s1 |lambda_1| + s2 |lambda_2| + (1 + L)/2 + n = 0,

obtained by eliminating lambda_1, which leaves a quadratic in E. Squaring
erases the branch signs (s1, s2); every energy returned is therefore tagged
with the sign pair that actually annihilates the residual. Only s2 = +1
gives a wave function that decays as r -> infinity.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from itertools import product

import numpy as np
from scipy import integrate, optimize

from .errors import (
    ComplexEnergy,
    ComplexExponent,
    DomainError,
    NoRootInBracket,
    PoleError,
    QuadratureFailure,
    SupercriticalCoupling,
    UnboundEnergy,
)
from .model import Coupling, CoulombParams, PhysicalParams, QuantumNumbers
from .specfun import gauss_2f1, hyp2f1_terminating

__all__ = [
    "Method",
    "Branch",
    "BoundSolution",
    "HypergeomParams",
    "NormalizationResult",
    "CoulombSolution",
    "big_l",
    "lambda_big",
    "lambda_squares",
    "lambda_exponents",
    "quantization_residual",
    "resolve_branch",
    "energy_closed_form",
    "energy_root_found",
    "hypergeom_params",
    "bound_wavefunction",
    "normalization_constant",
    "coulomb_condition",
    "coulomb_energy",
    "coulomb_energy_as_printed",
]

SIGN_PAIRS = tuple(product((1, -1), repeat=2))
RESIDUAL_TOL = 1e-8
ROOT_TOL = 1e-12
SCAN_STEPS = 2000
EDGE_EPS = 1e-9


class Method(enum.Enum):
    CLOSED_FORM = "ClosedForm"
    ROOT_FOUND = "RootFound"


@dataclass(frozen=True)
class Branch:
    """One energy of the spectrum with its resolved exponent signs.

    ``lambda1`` and ``lambda2`` are signed: they equal s1 |lambda_1| and
    s2 |lambda_2| for the sign pair that satisfies the quantization condition.
    """

    energy: float
    lambda1: float
    lambda2: float
    signs: tuple[int, int]
    residual: float

    @property
    def valid(self) -> bool:
        return abs(self.residual) < RESIDUAL_TOL

    @property
    def normalizable(self) -> bool:
        return self.valid and self.lambda2 > 0


@dataclass(frozen=True)
class BoundSolution:
    plus: Branch | None
    minus: Branch | None
    L_ell: float
    Lambda_beta: float
    method: Method
    warnings: tuple[str, ...] = ()
    closed_form_deviation: float | None = None

    @property
    def energy_plus(self) -> float | None:
        return None if self.plus is None else self.plus.energy

    @property
    def energy_minus(self) -> float | None:
        return None if self.minus is None else self.minus.energy

    def branch(self, which: str) -> Branch:
        b = {"plus": self.plus, "minus": self.minus}[which]
        if b is None:
            raise DomainError(f"no {which} branch in this solution")
        return b


@dataclass(frozen=True)
class HypergeomParams:
    xi1: float
    xi2: float
    xi3: float


@dataclass(frozen=True)
class NormalizationResult:
    """Closed-form normalization diagnostic next to the quadrature norm.

    ``numeric_norm`` is the integral of the squared unnormalized wave function
    over r; dividing the wave function by its square root normalizes it.
    ``ratio`` is |N|^2 * numeric_norm with |N|^2 = |N'|^2 2^{2(lambda1+lambda2)}
    recovered from the closed form; it would be 1 if the closed form held.
    """

    constant_sq: float
    sigma: float
    numeric_norm: float
    ratio: float
    abs_error: float
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class CoulombSolution:
    energy: float
    kappa: float
    A1: float
    A2: float
    A3: float
    N_big: int
    eta_prime: float
    residual: float


# ---------------------------------------------------------------- exponents


def big_l(p: PhysicalParams, l: int) -> float:
    """sqrt(1 + 4 l(l+1) + beta^2 m1^2 c^4 / alpha^2 - 4 beta^2 eta^2)."""
    b = p.beta
    rad = 1.0 + 4.0 * l * (l + 1) + (b * p.m1 * p.c**2 / p.alpha) ** 2 - 4.0 * (b * p.eta) ** 2
    if rad < 0:
        raise SupercriticalCoupling(f"radicand of L(l) is {rad:.6g} < 0")
    return math.sqrt(rad)


def lambda_big(p: PhysicalParams) -> float:
    """Energy-independent part of lambda_1^2."""
    b = p.beta
    mc2 = p.m1 * p.c**2
    return (
        -(b**2) * p.m0 * p.m1 * p.c**4 / (2.0 * p.alpha**2)
        + (b * mc2) ** 2 / (4.0 * p.alpha**2)
        - (b * p.eta) ** 2
    )


def lambda_squares(p: PhysicalParams, E: float, coupling: Coupling = Coupling.PUBLISHED) -> tuple[float, float]:
    """(lambda_1^2, lambda_2^2) at energy E, without taking roots."""
    b = p.beta
    l2sq = b**2 * (p.rest_energy**2 - E**2) / (4.0 * p.alpha**2)
    l1sq = l2sq + coupling.weight * E * b**2 * p.eta / (2.0 * p.alpha) + lambda_big(p)
    return l1sq, l2sq


def lambda_exponents(
    p: PhysicalParams, l: int, E: float, coupling: Coupling = Coupling.PUBLISHED
) -> tuple[float, float]:
    """Non-negative roots (lambda_1, lambda_2).

    ``l`` is accepted for signature symmetry; neither exponent depends on it.
    """
    if abs(E) > p.rest_energy:
        raise UnboundEnergy(f"|E| = {abs(E)} exceeds m0 c^2 = {p.rest_energy}")
    l1sq, l2sq = lambda_squares(p, E, coupling)
    if l1sq < 0:
        raise ComplexExponent(f"lambda_1^2 = {l1sq:.6g} < 0 at E = {E}")
    return math.sqrt(l1sq), math.sqrt(max(l2sq, 0.0))


def quantization_residual(
    p: PhysicalParams,
    q: QuantumNumbers,
    E: float,
    s1: int,
    s2: int,
    coupling: Coupling = Coupling.PUBLISHED,
) -> float:
    """s1 lambda_1 + s2 lambda_2 + 1/2 + L(l)/2 + n."""
    lam1, lam2 = lambda_exponents(p, q.l, E, coupling)
    return s1 * lam1 + s2 * lam2 + 0.5 + 0.5 * big_l(p, q.l) + q.n


def resolve_branch(
    p: PhysicalParams, q: QuantumNumbers, E: float, coupling: Coupling = Coupling.PUBLISHED
) -> Branch:
    """Tag energy E with the sign pair that minimizes |residual|."""
    lam1, lam2 = lambda_exponents(p, q.l, E, coupling)
    half = 0.5 + 0.5 * big_l(p, q.l) + q.n
    best = min(SIGN_PAIRS, key=lambda s: abs(s[0] * lam1 + s[1] * lam2 + half))
    res = best[0] * lam1 + best[1] * lam2 + half
    return Branch(float(E), best[0] * lam1, best[1] * lam2, best, float(res))


# ---------------------------------------------------------------- energies


def _closed_form_energies(p: PhysicalParams, q: QuantumNumbers, coupling: Coupling) -> tuple[float, float]:
    b = p.beta
    M = p.rest_energy
    L = big_l(p, q.l)
    K = L + 2 * q.n + 1
    g = coupling.weight * b**2 * p.eta / (2.0 * p.alpha)
    bb = b**2 / (4.0 * p.alpha**2)
    D = 0.25 * K**2 - lambda_big(p)
    inner = g**2 * M**2 + K**2 * bb * M**2 - D**2
    if inner < 0:
        raise ComplexEnergy(f"inner radicand of the closed-form energy is {inner:.6g} < 0")
    den = g**2 + K**2 * bb
    root = K * math.sqrt(bb) * math.sqrt(inner)
    return (g * D + root) / den, (g * D - root) / den


def _tag(p, q, E, coupling, notes):
    try:
        br = resolve_branch(p, q, E, coupling)
    except (UnboundEnergy, ComplexExponent) as exc:
        notes.append(f"E = {E:.9g}: {exc}")
        return None
    if not br.valid:
        notes.append(f"E = {E:.9g}: no sign pair annihilates the residual ({br.residual:.3g})")
    elif not br.normalizable:
        notes.append(f"E = {E:.9g}: lambda_2 < 0, wave function grows as r -> infinity")
    return br


def energy_closed_form(
    p: PhysicalParams, q: QuantumNumbers, coupling: Coupling = Coupling.PUBLISHED
) -> BoundSolution:
    """Both energy branches E^+ and E^- in closed form."""
    e_plus, e_minus = _closed_form_energies(p, q, coupling)
    notes: list[str] = []
    if p.outside_trust_region:
        notes.append("parameters outside the trusted region of the centrifugal approximation")
    plus = _tag(p, q, e_plus, coupling, notes)
    minus = _tag(p, q, e_minus, coupling, notes)
    return BoundSolution(
        plus=plus,
        minus=minus,
        L_ell=big_l(p, q.l),
        Lambda_beta=lambda_big(p),
        method=Method.CLOSED_FORM,
        warnings=tuple(notes),
    )


def _residual_or_nan(p, q, E, s1, s2, coupling):
    try:
        return quantization_residual(p, q, E, s1, s2, coupling)
    except (ComplexExponent, UnboundEnergy):
        return math.nan


def _clip_to_domain(p, q, s1, s2, coupling, a, b, fa, fb):
    good, bad = (a, b) if np.isfinite(fa) else (b, a)
    for _ in range(80):
        mid = 0.5 * (good + bad)
        if math.isnan(_residual_or_nan(p, q, mid, s1, s2, coupling)):
            bad = mid
        else:
            good = mid
    edge_val = _residual_or_nan(p, q, good, s1, s2, coupling)
    if np.isfinite(fa):
        return a, good, fa, edge_val
    return good, b, edge_val, fb


def _root_tol(p, q, E, s1, s2, coupling):
    # near lambda_1 = 0 the residual is steep; one ulp in E can move it past ROOT_TOL
    h = 1e-7 * p.rest_energy
    lo = _residual_or_nan(p, q, E - h, s1, s2, coupling)
    hi = _residual_or_nan(p, q, E + h, s1, s2, coupling)
    slope = abs(hi - lo) / (2 * h) if math.isfinite(lo) and math.isfinite(hi) else 0.0
    return max(ROOT_TOL, 4.0 * np.spacing(abs(E)) * slope)


def energy_root_found(
    p: PhysicalParams,
    q: QuantumNumbers,
    bracket: tuple[float, float] | None = None,
    coupling: Coupling = Coupling.PUBLISHED,
    steps: int = SCAN_STEPS,
) -> BoundSolution:
    """Roots of the quantization condition inside ``bracket``.

    The bracket is clipped to (-m0 c^2 + eps, m0 c^2 - eps) with
    eps = 1e-9 m0 c^2, scanned in ``steps`` uniform steps for every sign
    pair, and each sign change is refined with Brent's method.
    """
    M = p.rest_energy
    eps = EDGE_EPS * M
    lo, hi = (-M + eps, M - eps) if bracket is None else bracket
    lo, hi = max(lo, -M + eps), min(hi, M - eps)
    if not lo < hi:
        raise DomainError(f"empty bracket ({lo}, {hi}) inside (-m0 c^2, m0 c^2)")

    grid = np.linspace(lo, hi, steps + 1)
    roots: list[float] = []
    for s1, s2 in SIGN_PAIRS:
        vals = np.array([_residual_or_nan(p, q, e, s1, s2, coupling) for e in grid])
        for i in range(steps):
            a, b = grid[i], grid[i + 1]
            fa, fb = vals[i], vals[i + 1]
            if np.isfinite(fa) != np.isfinite(fb):
                # the cell straddles lambda_1^2 = 0; shrink it to the real part
                a, b, fa, fb = _clip_to_domain(p, q, s1, s2, coupling, a, b, fa, fb)
            if not (np.isfinite(fa) and np.isfinite(fb)):
                continue
            if fa == 0.0:
                root = a
            elif fa * fb < 0:
                root = optimize.brentq(
                    lambda e: quantization_residual(p, q, e, s1, s2, coupling),
                    a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200,
                )
            else:
                continue
            if abs(quantization_residual(p, q, root, s1, s2, coupling)) <= _root_tol(p, q, root, s1, s2, coupling):
                roots.append(float(root))
    if not roots:
        raise NoRootInBracket(f"quantization condition has no root in ({lo:.9g}, {hi:.9g})")

    notes: list[str] = []
    try:
        ref = energy_closed_form(p, q, coupling)
        targets = {"plus": ref.energy_plus, "minus": ref.energy_minus}
    except ComplexEnergy:
        ref = None
        targets = {"plus": max(roots), "minus": min(roots)}
    picked: dict[str, Branch | None] = {"plus": None, "minus": None}
    dev = 0.0
    for root in sorted(set(roots)):
        which = min(targets, key=lambda k: abs(root - targets[k]))
        if picked[which] is None or abs(root - targets[which]) < abs(picked[which].energy - targets[which]):
            picked[which] = resolve_branch(p, q, root, coupling)
        if ref is not None:
            dev = max(dev, abs(root - targets[which]))
    if ref is None:
        notes.append("closed form unavailable for cross-check")
    for br in picked.values():
        if br is not None and not br.normalizable:
            notes.append(f"E = {br.energy:.9g}: lambda_2 < 0, wave function grows as r -> infinity")
    return BoundSolution(
        plus=picked["plus"],
        minus=picked["minus"],
        L_ell=big_l(p, q.l),
        Lambda_beta=lambda_big(p),
        method=Method.ROOT_FOUND,
        warnings=tuple(notes),
        closed_form_deviation=None if ref is None else dev,
    )


# ---------------------------------------------------------------- wave functions


def hypergeom_params(p: PhysicalParams, q: QuantumNumbers, branch: Branch) -> HypergeomParams:
    L = big_l(p, q.l)
    s = branch.lambda1 + branch.lambda2
    return HypergeomParams(xi1=s + 0.5 * (1 + L), xi2=s + 0.5 * (1 - L), xi3=1 + 2 * branch.lambda1)


def bound_wavefunction(p: PhysicalParams, q: QuantumNumbers, branch: Branch, r):
    """Unnormalized z^lambda1 |1 - z|^lambda2 2F1(-n, xi2; xi3; z), z = 1/(1 - e^{-2 alpha r}).

    Since z > 1, the factor (1 - z)^lambda2 is evaluated as |1 - z|^lambda2;
    the constant phase (-1)^lambda2 belongs to the normalization. The
    polynomial is evaluated directly, so z outside the unit disk is fine.
    """
    if not branch.valid:
        raise DomainError(f"branch at E = {branch.energy} does not satisfy the quantization condition")
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("r must be positive")
    x = 2.0 * p.alpha * r
    ln_z = -np.log(-np.expm1(-x))
    # ln(z - 1) = -ln(expm1(x)) = -x - log1p(-e^{-x})
    ln_zm1 = -x - np.log1p(-np.exp(-x))
    hp = hypergeom_params(p, q, branch)
    z = np.exp(ln_z)
    poly = hyp2f1_terminating(q.n, hp.xi2, hp.xi3, z)
    with np.errstate(divide="ignore", under="ignore"):
        mag = np.exp(branch.lambda1 * ln_z + branch.lambda2 * ln_zm1 + np.log(np.abs(poly)))
    out = np.sign(poly) * mag
    return float(out) if out.ndim == 0 else out


def _relevant_radius(p: PhysicalParams, branch: Branch) -> float:
    kappa = 2.0 * p.alpha * branch.lambda2
    return 40.0 / min(p.alpha, kappa)


def _appendix_constant(branch: Branch, n: int) -> tuple[float, float, list[str]]:
    # sum form of the k-series, then |N'|^2 at k = 0
    l1, l2 = branch.lambda1, branch.lambda2
    notes: list[str] = []
    sigma = hyp2f1_terminating(n, 2 * l1 + 2 * l2 + n + 1, 1 + 2 * l1, 0.5)
    c = 2 * l1 + 2
    try:
        # Pfaff: 2F1(-2 l2, 1; c; -1) = (1/2) 2F1(c + 2 l2, 1; c; 1/2)
        f = 0.5 * gauss_2f1(c + 2 * l2, 1.0, c, 0.5).real
        n_sq = (2 * l1 + 1) / (sigma**2 * f)
    except (PoleError, ZeroDivisionError) as exc:
        notes.append(f"closed-form normalization not evaluable: {exc}")
        n_sq = math.nan
    return n_sq, sigma, notes


def normalization_constant(
    p: PhysicalParams, q: QuantumNumbers, branch: Branch, abs_tol: float = 1e-9
) -> NormalizationResult:
    """Adaptive-quadrature norm of the wave function and the closed-form constant.

    The numerical integral runs over (0, R], R = 40 / min(alpha, 2 alpha lambda2),
    with the integrand scaled to unit peak; ``abs_tol`` applies to the scaled
    integrand.
    """
    if not branch.normalizable:
        raise DomainError(f"branch at E = {branch.energy} is not normalizable")
    R = _relevant_radius(p, branch)
    probe = np.linspace(R * 1e-6, R, 4001)
    peak = float(np.max(np.abs(bound_wavefunction(p, q, branch, probe))))
    if peak == 0.0 or not math.isfinite(peak):
        raise QuadratureFailure("wave function has no finite peak")

    def integrand(r):
        if r <= 0.0:
            return 0.0
        return (bound_wavefunction(p, q, branch, r) / peak) ** 2

    edges = np.linspace(0.0, R, 81)
    total = 0.0
    err = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        val, e = integrate.quad(integrand, a, b, epsabs=abs_tol / 80, epsrel=1e-13, limit=200)
        total += val
        err += e
    if err > abs_tol:
        raise QuadratureFailure(f"quadrature error estimate {err:.3g} exceeds {abs_tol:.3g}")
    numeric = total * peak**2

    n_sq, sigma, notes = _appendix_constant(branch, q.n)
    ratio = n_sq * 2.0 ** (2 * (branch.lambda1 + branch.lambda2)) * numeric
    return NormalizationResult(
        constant_sq=float(n_sq),
        sigma=float(sigma),
        numeric_norm=float(numeric),
        ratio=float(ratio),
        abs_error=float(err * peak**2),
        warnings=tuple(notes),
    )


# ---------------------------------------------------------------- Coulomb limit


def _coulomb_pieces(cp: CoulombParams, l: int, hbar: float, c: float):
    beta = 1.0 / (hbar * c)
    u = cp.M0 * c**2
    pe = beta * cp.eta
    qm = beta * cp.M1 * c**2
    A3 = qm**2 - 2.0 * qm * pe + l * (l + 1)
    if 1.0 + 4.0 * A3 < 0:
        raise SupercriticalCoupling(f"1 + 4 A3 = {1 + 4 * A3:.6g} < 0")
    return beta, u, pe, qm, A3


def coulomb_condition(cp: CoulombParams, q: QuantumNumbers, E: float, hbar: float = 1.0, c: float = 1.0) -> float:
    """kappa + A2 / (2 A1) + n; zero at a Coulomb-limit eigenvalue."""
    beta, u, pe, qm, A3 = _coulomb_pieces(cp, q.l, hbar, c)
    if abs(E) >= u:
        raise UnboundEnergy(f"|E| = {abs(E)} is not below M0 c^2 = {u}")
    kappa = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * A3))
    A1 = beta * math.sqrt(u**2 - E**2)
    A2 = 2.0 * beta * (u * qm - u * pe - E * pe)
    return kappa + A2 / (2.0 * A1) + q.n


def coulomb_energy(cp: CoulombParams, q: QuantumNumbers, hbar: float = 1.0, c: float = 1.0) -> CoulombSolution:
    """Coulomb-limit energy for equal scalar and vector 1/r couplings.

    With X = 2n + 1 + sqrt(1 + 4 A3) and eta' = 4 beta^2 M1 c^2 (M1 c^2 - 2 eta),

        E = M0 c^2 [4 beta^2 eta (M1 c^2 - eta) + X sqrt(X^2 - eta')] / (4 beta^2 eta^2 + X^2).

    The root is checked against the unsquared quantization condition to 1e-10.
    """
    beta, u, pe, qm, A3 = _coulomb_pieces(cp, q.l, hbar, c)
    root3 = math.sqrt(1.0 + 4.0 * A3)
    N = 2 * q.n + 1
    X = N + root3
    eta_prime = 4.0 * qm * (qm - 2.0 * pe)
    rad = X**2 - eta_prime
    if rad < 0:
        raise ComplexEnergy(f"X^2 - eta' = {rad:.6g} < 0")
    den = 4.0 * pe**2 + X**2
    for sign in (1.0, -1.0):
        E = u * (4.0 * pe * (qm - pe) + sign * X * math.sqrt(rad)) / den
        if abs(E) >= u:
            continue
        res = coulomb_condition(cp, q, E, hbar, c)
        if abs(res) < 1e-10:
            return CoulombSolution(
                energy=E,
                kappa=0.5 * (1.0 + root3),
                A1=beta * math.sqrt(u**2 - E**2),
                A2=2.0 * beta * (u * qm - u * pe - E * pe),
                A3=A3,
                N_big=N,
                eta_prime=eta_prime,
                residual=res,
            )
    raise UnboundEnergy("neither root of the squared Coulomb condition satisfies the unsquared one")


def coulomb_energy_as_printed(cp: CoulombParams, q: QuantumNumbers, hbar: float = 1.0, c: float = 1.0) -> float:
    """The published Coulomb formula, typeset factors kept verbatim.

    Differs from :func:`coulomb_energy` through the extra (M1 c^2 - 2 eta)
    under the last root and single powers of beta in eta' and next to
    l(l+1); identical when M1 = 0 in natural units.
    """
    beta = 1.0 / (hbar * c)
    M1c2 = cp.M1 * c**2
    eta_p = 4.0 * beta * M1c2 * (M1c2 - 2.0 * cp.eta)
    X = 2 * q.n + 1 + math.sqrt(1.0 + eta_p + 4.0 * beta**2 * q.l * (q.l + 1))
    rad = X**2 - eta_p * (M1c2 - 2.0 * cp.eta)
    if rad < 0:
        raise ComplexEnergy(f"radicand {rad:.6g} < 0")
    return (
        cp.M0 * c**2 / (4.0 * beta**2 * cp.eta**2 + X**2)
        * (4.0 * beta**2 * cp.eta * (M1c2 - cp.eta) + X * math.sqrt(rad))
    )
