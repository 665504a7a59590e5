"""End-to-end checks against the golden tables and the numerical oracle.

Every check returns a :class:`CheckResult`; failures are recorded, never
raised. :func:`run_verify` collects them into a :class:`VerifyReport` whose
JSON serialization is deterministic.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .bound import (
    coulomb_condition,
    coulomb_energy,
    energy_closed_form,
    energy_root_found,
    normalization_constant,
    bound_wavefunction,
)
from .errors import KGError
from .model import Coupling, CoulombParams, PhysicalParams, QuantumNumbers, TrustRegionWarning, coulomb_limit_map
from .oracle import RadialGrid, RadialSolution, extract_phase, numerov_integrate, quadrature_norm, shoot_eigenvalue
from .scatter import phase_shift
from .tables import TABLE_I, TABLE_II

__all__ = [
    "CheckResult",
    "VerifyReport",
    "THRESHOLDS",
    "PHASE_SAMPLES",
    "check_table1",
    "check_table2",
    "check_residuals",
    "check_oracle",
    "check_nodes",
    "check_normalization",
    "check_phases",
    "check_phase_baseline",
    "check_coulomb_limit",
    "check_coulomb_exact",
    "run_verify",
]

THRESHOLDS = {
    "table1": 1e-5,
    "table2": 1e-5,
    "residual": 1e-8,
    "oracle": 1e-4,
    "nodes": 0.0,
    "normalization": 1e-6,
    "phase": 1e-3,
    "phase_baseline": 1e-6,
    "coulomb_limit": 1e-3,
    "coulomb_exact": 1e-10,
}

# (eta, alpha, l, E) inside eta <= 0.25, alpha <= 0.30, 1.01 < E <= 2
PHASE_SAMPLES = (
    (0.1, 0.01, 0, 1.1),
    (0.1, 0.01, 2, 1.5),
    (0.1, 0.1, 0, 1.05),
    (0.1, 0.1, 1, 2.0),
    (0.1, 0.3, 3, 1.3),
    (0.25, 0.01, 1, 1.2),
    (0.25, 0.05, 0, 1.8),
    (0.25, 0.1, 2, 1.02),
    (0.25, 0.2, 0, 1.6),
    (0.25, 0.3, 1, 1.4),
    (0.05, 0.15, 4, 1.9),
    (0.2, 0.25, 0, 1.15),
)
BASELINE_SAMPLES = ((0.01, 0, 1.1), (0.1, 1, 1.5), (0.3, 2, 2.0))
COULOMB_ALPHAS = (1e-2, 1e-3, 1e-4)
COULOMB_CASE = dict(m0=1.0, m1=0.0, eta=0.1)
COULOMB_EXACT_CASES = ((0, 0), (1, 0), (1, 1), (3, 2))
ORACLE_REFINEMENTS = (1.0, 0.5, 0.25)


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    threshold: float
    passed: bool
    details: tuple = ()

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": _json_float(self.value),
            "threshold": self.threshold,
            "pass": self.passed,
            "details": [_json_clean(d) for d in self.details],
        }


@dataclass(frozen=True)
class VerifyReport:
    table1_max_abs_err: float
    table2_max_abs_err: float
    oracle_max_abs_err: float
    phase_max_err: float
    normalization_max_dev: float
    coulomb_limit_dev: float
    passed: bool
    checks: tuple[CheckResult, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "table1_max_abs_err": _json_float(self.table1_max_abs_err),
            "table2_max_abs_err": _json_float(self.table2_max_abs_err),
            "oracle_max_abs_err": _json_float(self.oracle_max_abs_err),
            "phase_max_err": _json_float(self.phase_max_err),
            "normalization_max_dev": _json_float(self.normalization_max_dev),
            "coulomb_limit_dev": _json_float(self.coulomb_limit_dev),
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "VerifyReport":
        def num(x):
            return math.inf if x is None else float(x)

        checks = tuple(
            CheckResult(c["name"], num(c["value"]), c["threshold"], c["pass"], tuple(c["details"]))
            for c in d["checks"]
        )
        return cls(
            table1_max_abs_err=num(d["table1_max_abs_err"]),
            table2_max_abs_err=num(d["table2_max_abs_err"]),
            oracle_max_abs_err=num(d["oracle_max_abs_err"]),
            phase_max_err=num(d["phase_max_err"]),
            normalization_max_dev=num(d["normalization_max_dev"]),
            coulomb_limit_dev=num(d["coulomb_limit_dev"]),
            passed=d["pass"],
            checks=checks,
        )


def _json_float(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def _json_clean(obj):
    if isinstance(obj, dict):
        return {k: _json_clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_clean(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        return _json_float(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _result(name, errors, details, key=None) -> CheckResult:
    key = key or name
    worst = max(errors) if errors else math.inf
    ok = bool(errors) and all(math.isfinite(e) and e <= THRESHOLDS[key] for e in errors)
    return CheckResult(name, float(worst), THRESHOLDS[key], ok, tuple(details))


def _quiet(fn, *args, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TrustRegionWarning)
        return fn(*args, **kw)


def _params(**kw) -> PhysicalParams:
    return _quiet(PhysicalParams, **kw)


# ---------------------------------------------------------------- tables


def check_table1(eta_shift: float = 0.0) -> CheckResult:
    errs, det = [], []
    for row in TABLE_I:
        p = _params(eta=row.eta + eta_shift, alpha=row.alpha)
        e = energy_closed_form(p, QuantumNumbers(0, 0)).energy_plus
        errs.append(abs(e - row.energy))
        det.append({"eta": row.eta, "alpha": row.alpha, "golden": row.energy, "computed": e, "abs_err": errs[-1]})
    return _result("table1", errs, det)


def _table2_energy(row, branch, m1, eta_shift=0.0):
    p = _params(eta=row.eta + eta_shift, alpha=row.alpha, m1=m1)
    sol = energy_closed_form(p, QuantumNumbers(row.n, row.l))
    return sol.energy_plus if branch == "plus" else -sol.energy_minus


def check_table2(eta_shift: float = 0.0) -> CheckResult:
    errs, det = [], []
    for row in TABLE_II:
        for branch, m1, golden in row.columns():
            e = _table2_energy(row, branch, m1, eta_shift)
            errs.append(abs(e - golden))
            det.append({"n": row.n, "l": row.l, "eta": row.eta, "alpha": row.alpha, "m1": m1,
                        "branch": branch, "golden": golden, "computed": e, "abs_err": errs[-1]})
    return _result("table2", errs, det)


def check_residuals() -> CheckResult:
    errs, det = [], []
    cases = [(_params(eta=r.eta, alpha=r.alpha), QuantumNumbers(0, 0)) for r in TABLE_I]
    cases += [(_params(eta=r.eta, alpha=r.alpha, m1=m1), QuantumNumbers(r.n, r.l))
              for r in TABLE_II for m1 in (0.0, 0.1)]
    for p, q in cases:
        sol = energy_closed_form(p, q)
        for which in ("plus", "minus"):
            br = getattr(sol, which)
            res = math.inf if br is None else abs(br.residual)
            errs.append(res)
            det.append({"n": q.n, "l": q.l, "eta": p.eta, "alpha": p.alpha, "m1": p.m1, "branch": which,
                        "signs": None if br is None else list(br.signs), "residual": res})
    return _result("residual", errs, det)


# ---------------------------------------------------------------- oracle


def _table2_cases():
    for row in TABLE_II:
        for m1 in (0.0, 0.1):
            yield row, m1


def check_oracle(coupling: Coupling = Coupling.STRICT) -> CheckResult:
    """Numerov eigenvalue vs closed-form E+ at step 1e-3/alpha and two halvings."""
    errs, det = [], []
    for row, m1 in _table2_cases():
        p = _params(eta=row.eta, alpha=row.alpha, m1=m1)
        q = QuantumNumbers(row.n, row.l)
        e_closed = energy_closed_form(p, q).energy_plus
        seq, reason = [], None
        for sf in ORACLE_REFINEMENTS:
            try:
                grid = RadialGrid.default(p, e_closed, sf)
                seq.append(abs(shoot_eigenvalue(p, q, grid=grid, coupling=coupling).eigenvalue - e_closed))
            except KGError as exc:
                reason = f"{type(exc).__name__}: {exc}"
                break
        decreasing = len(seq) == 3 and seq[0] > seq[1] > seq[2]
        err = seq[0] if len(seq) == 3 and decreasing else math.inf
        errs.append(err)
        det.append({"n": row.n, "l": row.l, "eta": row.eta, "alpha": row.alpha, "m1": m1,
                    "closed": e_closed, "abs_err_by_step": seq, "decreasing": decreasing, "failure": reason})
    return _result("oracle", errs, det)


def check_nodes(coupling: Coupling = Coupling.STRICT) -> CheckResult:
    errs, det = [], []
    for row, m1 in _table2_cases():
        p = _params(eta=row.eta, alpha=row.alpha, m1=m1)
        q = QuantumNumbers(row.n, row.l)
        hint = energy_closed_form(p, q).energy_plus
        try:
            sol = shoot_eigenvalue(p, q, coupling=coupling, energy_hint=hint)
            nodes, reason = sol.nodes, None
        except KGError as exc:
            nodes, reason = None, f"{type(exc).__name__}: {exc}"
        errs.append(math.inf if nodes is None else float(abs(nodes - q.n)))
        det.append({"n": row.n, "l": row.l, "eta": row.eta, "alpha": row.alpha, "m1": m1,
                    "nodes": nodes, "failure": reason})
    return _result("nodes", errs, det)


def check_normalization() -> CheckResult:
    """Analytic states divided by their quadrature norm, re-integrated with Simpson."""
    errs, det = [], []
    for row, m1 in _table2_cases():
        p = _params(eta=row.eta, alpha=row.alpha, m1=m1)
        q = QuantumNumbers(row.n, row.l)
        br = energy_closed_form(p, q).plus
        if br is None or not br.normalizable:
            continue
        norm = normalization_constant(p, q, br)
        grid = RadialGrid.uniform(1e-6 / p.alpha, 40.0 / min(p.alpha, 2 * p.alpha * br.lambda2), 0.25e-3 / p.alpha)
        phi = bound_wavefunction(p, q, br, grid.r) / math.sqrt(norm.numeric_norm)
        total = quadrature_norm(RadialSolution(grid, phi, 0, br.energy))
        errs.append(abs(total - 1.0))
        det.append({"n": q.n, "l": q.l, "eta": p.eta, "alpha": p.alpha, "m1": m1, "energy": br.energy,
                    "simpson_norm": total, "closed_form_ratio": norm.ratio})
    return _result("normalization", errs, det)


# ---------------------------------------------------------------- phases


def oracle_phase(p: PhysicalParams, l: int, E: float, coupling: Coupling = Coupling.STRICT) -> float:
    """delta_l from the Numerov solution: fitted phase plus l pi / 2."""
    grid = RadialGrid.for_scattering(p, E)
    sol = numerov_integrate(p, l, E, grid, coupling=coupling)
    return extract_phase(sol, p, E) + 0.5 * l * math.pi


def _mod_pi(x: float) -> float:
    return abs(math.remainder(x, math.pi))


def check_phases(coupling: Coupling = Coupling.PUBLISHED, oracle_coupling: Coupling = Coupling.STRICT) -> CheckResult:
    errs, det = [], []
    for eta, alpha, l, E in PHASE_SAMPLES:
        p = _params(eta=eta, alpha=alpha)
        try:
            d_an = phase_shift(p, l, E, coupling).phase_total
            d_or = oracle_phase(p, l, E, oracle_coupling)
            err = _mod_pi(d_an - d_or)
            reason = None
        except KGError as exc:
            d_an = d_or = None
            err, reason = math.inf, f"{type(exc).__name__}: {exc}"
        errs.append(err)
        det.append({"eta": eta, "alpha": alpha, "l": l, "E": E, "analytic": d_an, "oracle": d_or,
                    "err_mod_pi": err, "failure": reason})
    return _result("phase", errs, det)


def check_phase_baseline() -> CheckResult:
    errs, det = [], []
    for alpha, l, E in BASELINE_SAMPLES:
        p = _params(eta=0.0, alpha=alpha)
        d_an = phase_shift(p, l, E).phase_total
        d_or = oracle_phase(p, l, E)
        errs.append(_mod_pi(d_an - d_or))
        det.append({"alpha": alpha, "l": l, "E": E, "analytic": d_an, "oracle": d_or, "err_mod_pi": errs[-1]})
    return _result("phase_baseline", errs, det)


# ---------------------------------------------------------------- Coulomb


def check_coulomb_limit() -> CheckResult:
    q = QuantumNumbers(0, 0)
    ref = None
    seq = []
    for alpha in COULOMB_ALPHAS:
        p = _params(alpha=alpha, **COULOMB_CASE)
        if ref is None:
            ref = coulomb_energy(coulomb_limit_map(p), q, p.hbar, p.c).energy
        e = energy_root_found(p, q).energy_plus
        seq.append({"alpha": alpha, "root_found": e, "rel_dev": abs(e - ref) / abs(ref)})
    final = seq[-1]["rel_dev"]
    det = [{"coulomb": ref, **COULOMB_CASE}] + seq
    return _result("coulomb_limit", [final], det)


def check_coulomb_exact() -> CheckResult:
    errs, det = [], []
    cp = CoulombParams(M0=1.0, M1=0.0, eta=0.1)
    for n, l in COULOMB_EXACT_CASES:
        q = QuantumNumbers(n, l)
        e = coulomb_energy(cp, q).energy
        eps = 1e-12
        root = optimize.brentq(lambda E: coulomb_condition(cp, q, E), -1 + eps, 1 - eps, xtol=1e-15, rtol=1e-15)
        errs.append(abs(e - root))
        det.append({"n": n, "l": l, "closed": e, "numerical": root, "abs_err": errs[-1]})
    return _result("coulomb_exact", errs, det)


# ---------------------------------------------------------------- report


def run_verify(eta_shift: float = 0.0) -> VerifyReport:
    """Run every check; ``eta_shift`` perturbs eta in the golden-table comparisons."""
    checks = (
        check_table1(eta_shift),
        check_table2(eta_shift),
        check_residuals(),
        check_oracle(),
        check_nodes(),
        check_normalization(),
        check_phases(),
        check_phase_baseline(),
        check_coulomb_limit(),
        check_coulomb_exact(),
    )
    by = {c.name: c for c in checks}
    return VerifyReport(
        table1_max_abs_err=by["table1"].value,
        table2_max_abs_err=by["table2"].value,
        oracle_max_abs_err=by["oracle"].value,
        phase_max_err=max(by["phase"].value, by["phase_baseline"].value),
        normalization_max_dev=by["normalization"].value,
        coulomb_limit_dev=by["coulomb_limit"].value,
        passed=all(c.passed for c in checks),
        checks=checks,
    )
