"""Numerov shooting solver for the radial effective-mass equation.

This is the numerical reference against which the analytic results are
judged. It integrates

    phi'' = f(r; E) phi,
    f = l(l+1)-term + beta^2 [m(r)^2 c^4 - (E^2 - w E V(r) + V(r)^2)],

on a uniform grid. In ``Mode.APPROXIMATED`` the centrifugal term and the
potential take their exponential forms; ``Mode.EXACT`` keeps 1/r^2 and the
true Yukawa potential. The weight w of the E V cross term is taken from
:class:`~kgyukawa.model.Coupling` and defaults to the value that follows from
expanding (E - V)^2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numba
import numpy as np
from scipy import integrate, optimize

from .errors import (
    DomainError,
    FitFailure,
    NoRootInBracket,
    NodeCountMismatch,
    QuadratureFailure,
    TailNotDecayed,
)
from .model import (
    Coupling,
    PhysicalParams,
    QuantumNumbers,
    approx_potential,
    centrifugal_approx,
    centrifugal_exact,
    mass_function,
    yukawa_potential,
)

__all__ = [
    "Mode",
    "RadialGrid",
    "RadialSolution",
    "effective_term",
    "numerov_integrate",
    "node_count",
    "shoot_eigenvalue",
    "extract_phase",
    "quadrature_norm",
]

OVERFLOW_LIMIT = 1e200
MAX_POINTS = 20_000_000
# bracket width (x m0 c^2) at which the matching point is chosen
MATCH_WIDTH = 1e-4
# analytic start is integrated up to this many screening lengths (x 1/alpha)
HANDOFF = 0.05


class Mode(enum.Enum):
    APPROXIMATED = "Approximated"
    EXACT = "Exact"


@dataclass(frozen=True)
class RadialGrid:
    r_min: float
    r_max: float
    step: float
    points: int

    def __post_init__(self):
        if not 0 < self.r_min < self.r_max:
            raise DomainError(f"need 0 < r_min < r_max, got {self.r_min}, {self.r_max}")
        if self.step <= 0:
            raise DomainError("step must be positive")
        if self.points > MAX_POINTS:
            raise DomainError(f"grid has {self.points} points, more than {MAX_POINTS}")
        if self.points < 100:
            raise DomainError(f"grid has {self.points} points, at least 100 required")

    @classmethod
    def uniform(cls, r_min: float, r_max: float, step: float) -> "RadialGrid":
        """Grid whose last point is the nearest multiple of ``step`` to r_max."""
        points = int(round((r_max - r_min) / step)) + 1
        return cls(r_min, r_min + (points - 1) * step, step, points)

    @classmethod
    def default(cls, p: PhysicalParams, energy: float | None = None, step_factor: float = 1.0) -> "RadialGrid":
        """Bound-state grid: step 1e-3/alpha, r_max = max(40/alpha, 40/kappa).

        ``kappa`` is the asymptotic decay rate beta sqrt(m0^2 c^4 - E^2) at the
        supplied energy; without one only the screening scale is used.
        """
        r_max = 40.0 / p.alpha
        if energy is not None and abs(energy) < p.rest_energy:
            kappa = p.beta * math.sqrt(p.rest_energy**2 - energy**2)
            r_max = max(r_max, 40.0 / kappa)
        return cls.uniform(1e-6 / p.alpha, r_max, step_factor * 1e-3 / p.alpha)

    @classmethod
    def for_scattering(cls, p: PhysicalParams, energy: float, step_factor: float = 1.0) -> "RadialGrid":
        """Open-channel grid: r_max = 50/alpha, at least 100 points per wavelength."""
        k = _wavenumber(p, energy)
        step = step_factor * min(1e-3 / p.alpha, 0.01 / k)
        r_min = 1e-6 / p.alpha
        points = int(math.ceil((50.0 / p.alpha - r_min) / step)) + 1
        return cls(r_min, r_min + (points - 1) * step, step, points)

    @property
    def r(self) -> np.ndarray:
        return self.r_min + self.step * np.arange(self.points)


@dataclass(frozen=True)
class RadialSolution:
    """Sampled solution on a grid.

    ``values`` carry an arbitrary overall scale; ``log_scale`` is the natural
    log of the factor removed by overflow protection (outward solutions only).
    """

    grid: RadialGrid
    values: np.ndarray
    nodes: int
    energy: float
    eigenvalue: float | None = None
    log_derivative_mismatch: float = math.nan
    log_scale: float = 0.0
    renormalized: bool = False
    matching_index: int | None = None

    @property
    def r(self) -> np.ndarray:
        return self.grid.r


def _wavenumber(p: PhysicalParams, E: float) -> float:
    if abs(E) <= p.rest_energy:
        raise DomainError(f"channel closed at E = {E}")
    return p.beta * math.sqrt(E**2 - p.rest_energy**2)


def effective_term(
    p: PhysicalParams,
    l: int,
    E: float,
    r,
    mode: Mode = Mode.APPROXIMATED,
    coupling: Coupling = Coupling.STRICT,
):
    """Coefficient f(r) in phi'' = f phi."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("r must be positive")
    if mode is Mode.APPROXIMATED:
        cen = centrifugal_approx(l, p.alpha, r)
        V = approx_potential(p, r)
    else:
        cen = centrifugal_exact(l, r)
        V = yukawa_potential(p, r)
    m = mass_function(p, r)
    c = p.c
    out = cen + p.beta**2 * ((m * c**2) ** 2 - (E**2 - coupling.weight * E * V + V**2))
    return float(out) if np.ndim(out) == 0 else out


@numba.njit(cache=True)
def _numerov_sweep(f, h, phi, start, stop, direction, limit):
    """Advance a Numerov recurrence from phi[start-d], phi[start] to phi[stop].

    Returns (sign changes, natural log of the total rescaling).
    """
    h12 = h * h / 12.0
    log_scale = 0.0
    nodes = 0
    i = start
    g_prev = 1.0 - h12 * f[i - direction]
    g_cur = 1.0 - h12 * f[i]
    while i != stop:
        j = i + direction
        g_next = 1.0 - h12 * f[j]
        phi[j] = ((12.0 - 10.0 * g_cur) * phi[i] - g_prev * phi[i - direction]) / g_next
        if (phi[j] < 0.0) != (phi[i] < 0.0) and phi[j] != 0.0 and phi[i] != 0.0:
            nodes += 1
        big = abs(phi[j])
        if big > limit:
            # rescale everything computed so far; magnitude kept in log space
            k = j
            while True:
                phi[k] /= big
                if k == start - direction:
                    break
                k -= direction
            log_scale += math.log(big)
        g_prev = g_cur
        g_cur = g_next
        i = j
    return nodes, log_scale


def node_count(values: np.ndarray) -> int:
    """Strict sign changes, ignoring exact zeros."""
    v = np.asarray(values)
    v = v[v != 0.0]
    return int(np.count_nonzero(np.signbit(v[1:]) != np.signbit(v[:-1])))


def _start_exponent(p: PhysicalParams, l: int) -> float:
    # phi ~ r^k near the origin; both modes share the 1/r^2 coefficient
    a = l * (l + 1) + p.beta**2 * ((p.m1 * p.c**2 / (2 * p.alpha)) ** 2 - p.eta**2)
    return 0.5 * (1.0 + math.sqrt(max(1.0 + 4.0 * a, 0.0)))


def _scalar_term(p, l, E, mode, coupling):
    # same expression as effective_term, for the per-point calls of solve_ivp
    a, eta, b2, w, ll = p.alpha, p.eta, p.beta**2, coupling.weight, l * (l + 1)
    m0c2, m1c2 = p.m0 * p.c**2, p.m1 * p.c**2
    approx = mode is Mode.APPROXIMATED

    def term(r):
        inv = 1.0 / math.expm1(2.0 * a * r)
        m = m0c2 + m1c2 * inv
        if approx:
            cen = ll * a * a / math.sinh(a * r) ** 2
            V = -2.0 * a * eta * inv
        else:
            cen = ll / (r * r)
            V = -eta * math.exp(-a * r) / r
        return cen + b2 * (m * m - (E * E - w * E * V + V * V))

    return term


def _outward(p, l, E, grid, mode, coupling):
    r = grid.r
    f = effective_term(p, l, E, r, mode, coupling)
    phi = np.zeros(grid.points)
    k = _start_exponent(p, l)
    # regular small-r behaviour, followed by a high-order ODE solve until
    # r h^-1 is large enough for the Numerov truncation to be harmless
    i0 = max(2, min(grid.points - 2, int(math.ceil((HANDOFF / p.alpha - grid.r_min) / grid.step))))
    phi[0] = 1.0

    term = _scalar_term(p, l, E, mode, coupling)

    def rhs(t, y):
        return [y[1], term(t) * y[0]]

    # integrate phi / r_min^k to keep the start at unit scale
    r0 = grid.r_min
    sol = integrate.solve_ivp(
        rhs, (r0, r[i0]), [1.0, k / r0], method="DOP853",
        rtol=1e-12, atol=1e-14, t_eval=r[1 : i0 + 1],
    )
    phi[1 : i0 + 1] = sol.y[0]
    head_nodes = node_count(phi[: i0 + 1])
    nodes, log_scale = _numerov_sweep(f, grid.step, phi, i0, grid.points - 1, 1, OVERFLOW_LIMIT)
    return phi, f, head_nodes + nodes, log_scale + k * math.log(r0), log_scale != 0.0


def numerov_integrate(
    p: PhysicalParams,
    l: int,
    E: float,
    grid: RadialGrid,
    mode: Mode = Mode.APPROXIMATED,
    coupling: Coupling = Coupling.STRICT,
) -> RadialSolution:
    """Outward regular solution phi ~ r^k, k = (1 + L)/2, fourth order in the step.

    The first 0.05/alpha of the grid is filled by an 8th-order Runge-Kutta
    solve, since the 1/r^2 singularity spoils Numerov's accuracy when r is
    only a few steps from the origin.
    """
    phi, _, nodes, log_scale, rescaled = _outward(p, l, E, grid, mode, coupling)
    return RadialSolution(
        grid=grid,
        values=phi,
        nodes=nodes,
        energy=float(E),
        log_scale=log_scale,
        renormalized=rescaled,
    )


def _inward(f, grid):
    phi = np.zeros(grid.points)
    phi[-2] = 1e-200
    _numerov_sweep(f, grid.step, phi, grid.points - 2, 0, -1, OVERFLOW_LIMIT)
    return phi


def _matching_index(f: np.ndarray, i_min: int) -> int:
    neg = np.flatnonzero(f[i_min:] < 0)
    if neg.size:
        return int(min(i_min + neg[-1] + 1, f.size - 3))
    return f.size // 2


def _casorati(f, h, a, b, m):
    g = 1.0 - h * h * f / 12.0
    ya0, ya1 = g[m] * a[m], g[m + 1] * a[m + 1]
    yb0, yb1 = g[m] * b[m], g[m + 1] * b[m + 1]
    w = ya0 * yb1 - ya1 * yb0
    return w / (math.hypot(ya0, ya1) * math.hypot(yb0, yb1))


def shoot_eigenvalue(
    p: PhysicalParams,
    q: QuantumNumbers,
    bracket: tuple[float, float] | None = None,
    grid: RadialGrid | None = None,
    mode: Mode = Mode.APPROXIMATED,
    coupling: Coupling = Coupling.STRICT,
    energy_hint: float | None = None,
) -> RadialSolution:
    """Eigenvalue with exactly n nodes inside ``bracket``.

    Outward node counting brackets the state. The energy is then refined with
    Brent's method on the normalized discrete Wronskian of the outward
    solution and a solution started from phi(r_max) = 0, matched at the
    outermost classical turning point (midpoint when there is none), to
    |dE| < 1e-10 m0 c^2.

    The default bracket is (0, m0 c^2); the default grid is
    :meth:`RadialGrid.default` at ``energy_hint``. Without a hint only the
    screening length sets r_max, which is too short for states bound more
    weakly than kappa ~ alpha.
    """
    M = p.rest_energy
    lo, hi = (0.0, M * (1 - 1e-12)) if bracket is None else bracket
    if not -M < lo < hi < M:
        raise DomainError(f"bracket ({lo}, {hi}) must lie inside (-m0 c^2, m0 c^2)")
    if grid is None:
        grid = RadialGrid.default(p, energy_hint)

    def count(E):
        return _outward(p, q.l, E, grid, mode, coupling)[2]

    n_lo, n_hi = count(lo), count(hi)
    if n_lo == n_hi:
        raise NoRootInBracket(f"no eigenvalue in ({lo:.9g}, {hi:.9g}): node count {n_lo} at both ends")
    if not n_lo <= q.n < n_hi:
        raise NodeCountMismatch(
            f"bracket holds the states {n_lo}..{n_hi - 1}, not n = {q.n}"
        )
    tol = 1e-10 * M
    # shrink until the bracket holds the n-th state alone and is narrow
    # enough for the turning point at its midpoint to be the eigenstate's
    while not (n_lo == q.n and n_hi == q.n + 1) or hi - lo > MATCH_WIDTH * M:
        mid = 0.5 * (lo + hi)
        n_mid = count(mid)
        if n_mid > q.n:
            hi, n_hi = mid, n_mid
        else:
            lo, n_lo = mid, n_mid
        if hi - lo < tol:
            break

    i_min = int(math.ceil((HANDOFF / p.alpha - grid.r_min) / grid.step))
    f_mid = effective_term(p, q.l, 0.5 * (lo + hi), grid.r, mode, coupling)
    m = _matching_index(f_mid, i_min)

    def wronskian(E):
        out, f, *_ = _outward(p, q.l, E, grid, mode, coupling)
        return _casorati(f, grid.step, out, _inward(f, grid), m)

    w_lo, w_hi = wronskian(lo), wronskian(hi)
    if w_lo * w_hi < 0:
        E = optimize.brentq(wronskian, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps)
    else:
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if count(mid) > q.n:
                hi = mid
            else:
                lo = mid
        E = 0.5 * (lo + hi)

    out, f, _, log_scale, rescaled = _outward(p, q.l, E, grid, mode, coupling)
    inn = _inward(f, grid)
    j = m if inn[m] != 0 else m + 1
    phi = out.copy()
    phi[j:] = inn[j:] * (out[j] / inn[j])
    # log-derivative mismatch from one-sided differences at the matching point
    d_out = (out[m + 1] - out[m]) / (grid.step * out[m])
    d_in = (inn[m + 1] - inn[m]) / (grid.step * inn[m])
    nodes = node_count(phi)
    if nodes != q.n:
        raise NodeCountMismatch(f"stitched solution at E = {E:.12g} has {nodes} nodes, expected {q.n}")
    return RadialSolution(
        grid=grid,
        values=phi,
        nodes=nodes,
        energy=float(E),
        eigenvalue=float(E),
        log_derivative_mismatch=float(abs(d_out - d_in)),
        log_scale=log_scale,
        renormalized=rescaled,
        matching_index=m,
    )


def extract_phase(sol: RadialSolution, p: PhysicalParams, E: float, rel_tol: float = 1e-3) -> float:
    """Phase Phi of the fit phi ~ A sin(k r + Phi) over the last quarter of the grid.

    k = beta sqrt(E^2 - m0^2 c^4). Returns Phi in (-pi, pi].
    """
    k = _wavenumber(p, E)
    if sol.grid.r_max < 50.0 / p.alpha * (1 - 1e-12):
        raise FitFailure(f"grid ends at {sol.grid.r_max:.6g}, need at least 50/alpha")
    r = sol.r
    tail = slice(3 * r.size // 4, None)
    x, y = r[tail], sol.values[tail]
    design = np.column_stack([np.sin(k * x), np.cos(k * x)])
    (a, b), *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = np.linalg.norm(design @ np.array([a, b]) - y) / np.linalg.norm(y)
    if not resid < rel_tol:
        raise FitFailure(f"sinusoid fit residual {resid:.3g} exceeds {rel_tol:.3g}")
    phase = math.atan2(b, a)
    return math.pi if phase <= -math.pi else phase


def quadrature_norm(sol: RadialSolution, tail_tol: float = 1e-8, err_tol: float = 1e-9) -> float:
    """Composite Simpson integral of phi^2 on the grid.

    The error estimate is the difference from the same rule on every other
    point, divided by 15; it must stay below ``err_tol`` relative to the
    result.
    """
    v = np.asarray(sol.values, dtype=float)
    peak = np.max(np.abs(v)) if v.size else 0.0
    if peak == 0.0:
        return 0.0
    if abs(v[-1]) >= tail_tol * peak:
        raise TailNotDecayed(f"|phi(r_max)| / max|phi| = {abs(v[-1]) / peak:.3g}")
    r = sol.r
    y = (v / peak) ** 2
    fine = integrate.simpson(y, x=r)
    coarse = integrate.simpson(y[::2], x=r[::2])
    err = abs(fine - coarse) / 15.0
    if err > err_tol * abs(fine):
        raise QuadratureFailure(f"Simpson error estimate {err:.3g} exceeds {err_tol:.3g} relative")
    return float(fine * peak**2)
