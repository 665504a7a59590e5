"""Command-line front end.

Exit status: 0 success, 2 bad arguments, 3 domain error (closed channel,
supercritical coupling, ...), 4 convergence failure, 5 verification failed.
"""

from __future__ import annotations

import enum
import itertools
import json
import math
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import click
import numpy as np

from . import __version__
from .bound import (
    bound_wavefunction,
    coulomb_energy,
    energy_closed_form,
    energy_root_found,
    normalization_constant,
)
from .errors import ConvergenceError, DomainError, KGError
from .model import Coupling, PhysicalParams, QuantumNumbers, TrustRegionWarning, coulomb_limit_map
from .oracle import shoot_eigenvalue
from .output import to_csv, to_json
from .scatter import phase_shift
from .tables import TABLE_I, TABLE_II
from .verify import run_verify

__all__ = ["Command", "RunConfig", "run_table", "run_fig1", "run_scan", "load_config", "main"]

EXIT_ARGUMENT = 2
EXIT_DOMAIN = 3
EXIT_CONVERGENCE = 4
EXIT_VERIFY = 5

DEFAULTS = dict(m0=1.0, m1=0.0, eta=0.1, alpha=0.01, hbar=1.0, c=1.0, n=0, l=0)
PARAM_KEYS = ("m0", "m1", "eta", "alpha", "hbar", "c")


class Command(enum.Enum):
    BOUND = "bound"
    COULOMB = "coulomb"
    SCATTER = "scatter"
    WAVEFUNCTION = "wavefunction"
    TABLE = "table"
    FIG1 = "fig1"
    VERIFY = "verify"


@dataclass(frozen=True)
class RunConfig:
    """One command invocation, possibly over a grid of parameter values.

    ``scan`` maps parameter names (m0, m1, eta, alpha, n, l, energy) to
    value lists and is expanded as a Cartesian product in key order, last key
    fastest. ``points`` lists explicit parameter dictionaries instead.
    """

    command: Command
    params: PhysicalParams = field(default_factory=PhysicalParams)
    quantum: QuantumNumbers = field(default_factory=QuantumNumbers)
    method: str = "closed"
    branch: str = "both"
    energy: float | None = None
    coupling: Coupling | None = None
    scan: dict = field(default_factory=dict)
    points: tuple = ()
    output_format: str = "csv"
    output_path: str | None = None

    def __post_init__(self):
        for key, values in self.scan.items():
            if len(values) == 0:
                raise DomainError(f"scan range for {key!r} is empty")
            if any(isinstance(v, float) and not math.isfinite(v) for v in values):
                raise DomainError(f"scan range for {key!r} has non-finite values")

    def expand(self) -> list[dict]:
        if self.points:
            return [dict(pt) for pt in self.points]
        if not self.scan:
            return [{}]
        keys = list(self.scan)
        return [dict(zip(keys, combo)) for combo in itertools.product(*(self.scan[k] for k in keys))]


# ---------------------------------------------------------------- row builders


def _quiet_params(**kw) -> PhysicalParams:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TrustRegionWarning)
        return PhysicalParams(**kw)


def _point_params(cfg: RunConfig, point: dict):
    base = {k: getattr(cfg.params, k) for k in PARAM_KEYS}
    base.update({k: v for k, v in point.items() if k in PARAM_KEYS})
    n = int(point.get("n", cfg.quantum.n))
    l = int(point.get("l", cfg.quantum.l))
    return _quiet_params(**base), QuantumNumbers(n, l), point.get("energy", cfg.energy)


BOUND_COLUMNS = ["m0", "m1", "eta", "alpha", "n", "l", "method", "branch", "energy",
                 "lambda1", "lambda2", "s1", "s2", "residual", "normalizable", "error"]
SCATTER_COLUMNS = ["m0", "m1", "eta", "alpha", "l", "energy", "k1", "k2_prime", "A_re", "A_im",
                   "phase_total", "phase_reduced", "phase_gamma", "amplitude", "error"]


def _head(p, q):
    return {"m0": p.m0, "m1": p.m1, "eta": p.eta, "alpha": p.alpha, "n": q.n, "l": q.l}


def _branch_row(head, method, which, br):
    return {**head, "method": method, "branch": which, "energy": br.energy, "lambda1": br.lambda1,
            "lambda2": br.lambda2, "s1": br.signs[0], "s2": br.signs[1], "residual": br.residual,
            "normalizable": br.normalizable}


def _bound_rows(cfg: RunConfig, point: dict, strict: bool = False) -> list[dict]:
    p, q, _ = _point_params(cfg, point)
    head = _head(p, q)
    wanted = ("plus", "minus") if cfg.branch == "both" else (cfg.branch,)
    methods = ("closed", "root", "oracle") if cfg.method == "all" else (cfg.method,)
    rows = []
    for method in methods:
        try:
            if method == "oracle":
                hint = None
                try:
                    hint = energy_closed_form(p, q).energy_plus
                except KGError:
                    pass
                kw = {} if cfg.coupling is None else {"coupling": cfg.coupling}
                sol = shoot_eigenvalue(p, q, energy_hint=hint, **kw)
                rows.append({**head, "method": method, "branch": "plus", "energy": sol.eigenvalue})
                continue
            kw = {} if cfg.coupling is None else {"coupling": cfg.coupling}
            sol = energy_closed_form(p, q, **kw) if method == "closed" else energy_root_found(p, q, **kw)
            for which in wanted:
                br = getattr(sol, which)
                if br is None:
                    rows.append({**head, "method": method, "branch": which, "error": "no root"})
                else:
                    rows.append(_branch_row(head, method, which, br))
        except KGError as exc:
            if strict:
                raise
            rows.append({**head, "method": method, "error": type(exc).__name__})
    return rows


def _scatter_rows(cfg: RunConfig, point: dict, strict: bool = False) -> list[dict]:
    p, q, E = _point_params(cfg, point)
    head = {"m0": p.m0, "m1": p.m1, "eta": p.eta, "alpha": p.alpha, "l": q.l, "energy": E}
    try:
        if E is None:
            raise DomainError("scatter needs an energy")
        kw = {} if cfg.coupling is None else {"coupling": cfg.coupling}
        s = phase_shift(p, q.l, float(E), **kw)
    except KGError as exc:
        if strict:
            raise
        return [{**head, "error": type(exc).__name__}]
    return [{**head, "k1": s.k1, "k2_prime": s.k2_prime, "A_re": s.A_param.real, "A_im": s.A_param.imag,
             "phase_total": s.phase_total, "phase_reduced": s.phase_reduced, "phase_gamma": s.phase_gamma,
             "amplitude": s.amplitude}]


def _scan_worker(args):
    cfg, point, strict = args
    if cfg.command is Command.BOUND:
        return _bound_rows(cfg, point, strict)
    if cfg.command is Command.SCATTER:
        return _scatter_rows(cfg, point, strict)
    raise DomainError(f"{cfg.command.value} cannot be scanned")


def run_scan(cfg: RunConfig, workers: int = 1, strict: bool = False) -> tuple[list[str], list[dict]]:
    """Evaluate ``cfg`` at every expanded point; rows keep the declared order.

    Per-point failures are written to the ``error`` column and the scan
    continues, unless ``strict`` is set, in which case the first one is
    raised. ``workers > 1`` distributes points over processes.
    """
    points = cfg.expand()
    jobs = [(cfg, pt, strict) for pt in points]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_scan_worker, jobs))
    else:
        chunks = [_scan_worker(j) for j in jobs]
    rows = [row for chunk in chunks for row in chunk]
    columns = BOUND_COLUMNS if cfg.command is Command.BOUND else SCATTER_COLUMNS
    return columns, rows


def run_table(which: str) -> tuple[list[str], list[dict]]:
    """Golden table next to the closed-form values."""
    if which == "I":
        cols = ["eta", "alpha", "eta_exact", "reference", "golden", "computed", "abs_diff"]
        rows = []
        for r in TABLE_I:
            e = energy_closed_form(_quiet_params(eta=r.eta, alpha=r.alpha), QuantumNumbers(0, 0)).energy_plus
            rows.append({"eta": r.eta, "alpha": r.alpha, "eta_exact": r.eta_exact, "reference": r.reference,
                         "golden": r.energy, "computed": e, "abs_diff": abs(e - r.energy)})
        return cols, rows
    if which == "II":
        cols = ["n", "l", "eta", "alpha", "m1", "column", "golden", "computed", "abs_diff"]
        rows = []
        for r in TABLE_II:
            for branch, m1, golden in r.columns():
                sol = energy_closed_form(_quiet_params(eta=r.eta, alpha=r.alpha, m1=m1), QuantumNumbers(r.n, r.l))
                e = sol.energy_plus if branch == "plus" else -sol.energy_minus
                rows.append({"n": r.n, "l": r.l, "eta": r.eta, "alpha": r.alpha, "m1": m1,
                             "column": "E+" if branch == "plus" else "-E-",
                             "golden": golden, "computed": e, "abs_diff": abs(e - golden)})
        return cols, rows
    raise DomainError(f"unknown table {which!r}")


def run_fig1(alphas=(0.25, 0.30), r_max: float = 10.0, points: int = 200) -> tuple[list[str], list[dict]]:
    """1/r next to three exponential stand-ins, per alpha.

    ``screened`` is 2 a e^{-a r} / (1 - e^{-2 a r}), the square root of the
    centrifugal replacement and the only one that tends to 1/r; the other two
    columns are 2 a e^{-a r} / (1 - e^{-a r}) and 2 a e^{-a r} (1 - e^{-a r}).
    """
    if points < 2:
        raise DomainError("points must be at least 2")
    cols = ["alpha", "r", "inv_r", "screened", "single_exponent", "product_form"]
    rows = []
    r = np.linspace(r_max / points, r_max, points)
    for a in alphas:
        e = np.exp(-a * r)
        screened = 2 * a * e / -np.expm1(-2 * a * r)
        single = 2 * a * e / -np.expm1(-a * r)
        product = 2 * a * e * -np.expm1(-a * r)
        for i in range(points):
            rows.append({"alpha": float(a), "r": float(r[i]), "inv_r": float(1 / r[i]),
                         "screened": float(screened[i]), "single_exponent": float(single[i]),
                         "product_form": float(product[i])})
    return cols, rows


# ---------------------------------------------------------------- click plumbing


def load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise click.BadParameter(f"cannot read config {path}: {exc}", param_hint="--config")
    if not isinstance(data, dict):
        raise click.BadParameter("config must be a JSON object", param_hint="--config")
    return data


def _merged(ctx_opts: dict, config: dict) -> dict:
    """Flags over config file over built-in defaults."""
    out = dict(DEFAULTS)
    out.update({k: v for k, v in config.items() if k in DEFAULTS})
    out.update({k: v for k, v in ctx_opts.items() if k in DEFAULTS and v is not None})
    return out


def _build(opts: dict, command: Command, **extra) -> RunConfig:
    config = load_config(opts.get("config"))
    merged = _merged(opts, config)
    params = PhysicalParams(**{k: float(merged[k]) for k in PARAM_KEYS})
    quantum = QuantumNumbers(int(merged["n"]), int(merged["l"]))
    coupling = opts.get("coupling")
    return RunConfig(
        command=command,
        params=params,
        quantum=quantum,
        coupling=None if coupling is None else Coupling[coupling.upper()],
        scan={k: list(v) for k, v in config.get("scan", {}).items()},
        points=tuple(config.get("points", ())),
        output_format=opts.get("format") or "csv",
        output_path=opts.get("output"),
        **extra,
    )


def _meta(command: str, cfg: RunConfig | None = None, **more) -> dict:
    meta = {"command": command, "version": __version__, "units": {"hbar": 1.0, "c": 1.0}, "parameters": {}}
    if cfg is not None:
        p = cfg.params
        meta["units"] = {"hbar": p.hbar, "c": p.c}
        meta["parameters"] = {"m0": p.m0, "m1": p.m1, "eta": p.eta, "alpha": p.alpha,
                              "n": cfg.quantum.n, "l": cfg.quantum.l}
    meta["parameters"].update(more)
    return meta


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _write(columns, rows, fmt, path, meta):
    _emit(to_json(columns, rows, meta) if fmt == "json" else to_csv(columns, rows), path)


def _common(f):
    opts = [
        click.option("--m0", type=float, default=None, help="Rest mass m0 (default 1)."),
        click.option("--m1", type=float, default=None, help="Mass-profile strength m1 (default 0)."),
        click.option("--eta", type=float, default=None, help="Coupling strength eta (default 0.1)."),
        click.option("--alpha", type=float, default=None, help="Screening parameter alpha (default 0.01)."),
        click.option("--hbar", type=float, default=None, help="Reduced Planck constant (default 1)."),
        click.option("--c", "c", type=float, default=None, help="Speed of light (default 1)."),
        click.option("--n", type=int, default=None, help="Radial quantum number."),
        click.option("--l", "l", type=int, default=None, help="Orbital quantum number."),
        click.option("--coupling", type=click.Choice(["published", "strict"]), default=None,
                     help="Weight of the E V cross term: 'published' (1) or 'strict' (2). "
                          "Defaults: published for formulas, strict for the oracle."),
        click.option("--format", "format", type=click.Choice(["csv", "json"]), default=None),
        click.option("--output", type=click.Path(dir_okay=False), default=None, help="Write to PATH."),
        click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None,
                     help="JSON file with defaults; flags take precedence."),
    ]
    for o in reversed(opts):
        f = o(f)
    return f


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except DomainError as exc:
            click.echo(f"domain error: {exc}", err=True)
            ctx.exit(EXIT_DOMAIN)
        except ConvergenceError as exc:
            click.echo(f"convergence failure: {exc}", err=True)
            ctx.exit(EXIT_CONVERGENCE)


@click.group(cls=_Group, epilog="Exit status: 0 ok, 2 argument error, 3 domain error, "
                                 "4 convergence failure, 5 verification failed.")
@click.version_option(__version__)
def main():
    """Klein-Gordon particle with position-dependent mass in a Yukawa potential."""


@main.command()
@_common
@click.option("--branch", type=click.Choice(["plus", "minus", "both"]), default="both")
@click.option("--method", type=click.Choice(["closed", "root", "oracle", "all"]), default="closed")
@click.option("--workers", type=int, default=1, show_default=True)
def bound(branch, method, workers, **opts):
    """Bound-state energies and exponents."""
    cfg = _build(opts, Command.BOUND, method=method, branch=branch)
    cols, rows = run_scan(cfg, workers, strict=len(cfg.expand()) == 1)
    _write(cols, rows, cfg.output_format, cfg.output_path, _meta("bound", cfg, method=method, branch=branch))


@main.command()
@_common
def coulomb(**opts):
    """Coulomb-limit energy from the small-alpha mass expansion."""
    cfg = _build(opts, Command.COULOMB)
    p = cfg.params
    cp = coulomb_limit_map(p)
    sol = coulomb_energy(cp, cfg.quantum, p.hbar, p.c)
    row = {"M0": cp.M0, "M1": cp.M1, "eta": cp.eta, "n": cfg.quantum.n, "l": cfg.quantum.l,
           "energy": sol.energy, "kappa": sol.kappa, "residual": sol.residual}
    _write(list(row), [row], cfg.output_format, cfg.output_path, _meta("coulomb", cfg))


@main.command()
@_common
@click.option("--energy", type=float, default=None, help="Single energy above threshold.")
@click.option("--e-min", type=float, default=None)
@click.option("--e-max", type=float, default=None)
@click.option("--e-points", type=click.IntRange(min=1), default=None)
@click.option("--workers", type=int, default=1, show_default=True)
def scatter(energy, e_min, e_max, e_points, workers, **opts):
    """Phase shifts at one energy or over an energy range."""
    cfg = _build(opts, Command.SCATTER, energy=energy)
    ranged = (e_min, e_max, e_points)
    if any(v is not None for v in ranged):
        if any(v is None for v in ranged):
            raise click.UsageError("--e-min, --e-max and --e-points go together")
        if not e_min <= e_max:
            raise click.UsageError("--e-min must not exceed --e-max")
        grid = np.linspace(e_min, e_max, e_points).tolist()
        cfg = replace(cfg, scan={**cfg.scan, "energy": grid})
    elif energy is None and "energy" not in cfg.scan and not cfg.points:
        raise click.UsageError("give --energy or an --e-min/--e-max/--e-points range")
    cols, rows = run_scan(cfg, workers, strict=len(cfg.expand()) == 1)
    _write(cols, rows, cfg.output_format, cfg.output_path, _meta("scatter", cfg))


@main.command()
@_common
@click.option("--branch", type=click.Choice(["plus", "minus"]), default="plus")
@click.option("--r-max", type=float, default=None, help="Outer radius (default: 40 decay lengths).")
@click.option("--points", type=click.IntRange(min=2), default=200, show_default=True)
def wavefunction(branch, r_max, points, **opts):
    """Normalized bound-state wave function on a uniform grid."""
    cfg = _build(opts, Command.WAVEFUNCTION)
    p, q = cfg.params, cfg.quantum
    br = energy_closed_form(p, q).branch(branch)
    norm = normalization_constant(p, q, br)
    if r_max is None:
        r_max = 40.0 / min(p.alpha, 2 * p.alpha * br.lambda2)
    r = np.linspace(r_max / points, r_max, points)
    phi = bound_wavefunction(p, q, br, r) / math.sqrt(norm.numeric_norm)
    rows = [{"r": float(a), "phi": float(b)} for a, b in zip(r, phi)]
    _write(["r", "phi"], rows, cfg.output_format, cfg.output_path,
           _meta("wavefunction", cfg, energy=br.energy, closed_form_ratio=norm.ratio))


@main.command()
@click.argument("which", type=click.Choice(["I", "II"]))
@click.option("--format", "format", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def table(which, format, output):
    """Reproduce a golden energy table."""
    cols, rows = run_table(which)
    _write(cols, rows, format, output, _meta("table", table=which))


@main.command()
@click.option("--alpha", "alphas", type=float, multiple=True, default=(0.25, 0.30), show_default=True)
@click.option("--r-max", type=float, default=10.0, show_default=True)
@click.option("--points", type=click.IntRange(min=2), default=200, show_default=True)
@click.option("--format", "format", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def fig1(alphas, r_max, points, format, output):
    """Curves comparing 1/r with its exponential stand-ins."""
    cols, rows = run_fig1(alphas, r_max, points)
    _write(cols, rows, format, output, _meta("fig1", alphas=list(alphas), r_max=r_max, points=points))


@main.command()
@click.option("--output", type=click.Path(dir_okay=False), default=None)
@click.option("--eta-shift", type=float, default=0.0, hidden=True)
def verify(output, eta_shift):
    """Run the verification suite and print a JSON report."""
    report = run_verify(eta_shift=eta_shift)
    _emit(report.to_json(), output)
    if not report.passed:
        sys.exit(EXIT_VERIFY)


if __name__ == "__main__":  # pragma: no cover
    main()
