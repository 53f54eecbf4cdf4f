"""Command-line front end.

One subcommand per operation family:

    charges      charge quadratic roots and source totals
    potential    curve sampling (CSV plot-ready)
    regions      radial region decomposition
    energy-min   minimum-energy radius per region
    single-quark minimum equation root n and the energy scales there
    table1       unstable-solution table, computed vs reference
    shm          small-oscillation frequency record
    symmetry     q-pair compositions and proton configurations
    mass         free-particle mass quadrature
    verify       full acceptance suite (exit 1 on any failing criterion)

A JSON config supplies defaults; command-line flags override config keys.
Numeric CSV cells use the shortest round-trip decimal representation and
every CSV starts with a versioned header comment, so identical inputs give
byte-identical output.  Exit codes: 0 ok, 1 criterion failure, 2 bad usage.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import charges as charges_mod
from . import dynamics, energy, symmetry, verify
from .numerics import Tolerance, DEFAULT_TOL
from .potentials import (
    BUILTIN_SHAPES,
    ConfiningCoefficients,
    GridSpec,
    ModelParams,
    RationalShape,
    closed_form_coefficients,
    decompose_regions,
    sample_at,
)

CSV_VERSION = "v1"


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    """Flat bag of every tunable; JSON keys mirror the field names
    ('lambda' and 'abs' in JSON map to lam / abs_tol)."""

    s: float = 1.0
    alpha: float = 1.0
    lam: float = 0.0
    k: float = 1.0
    t: float = 0.0
    b: float = 1.0
    q: float = 1.0 / 3.0
    gamma: float = -2.0
    gamma_sq: float | None = None
    shape: str = "single-quark"
    poly: list[float] | None = None
    m: int | None = None
    K: float = 0.0
    P: float = 0.0
    C: float | None = None
    D: float | None = None
    U: float = 1.0
    N: float | None = None
    T: float = 0.0
    grid_kind: str = "log"
    grid_lo: float = 1e-2
    grid_hi: float = 1e2
    grid_count: int = 200
    rel: float = DEFAULT_TOL.rel
    abs_tol: float = DEFAULT_TOL.abs
    max_evals: int = DEFAULT_TOL.max_evals
    format: str = "csv"
    out: str | None = None
    jobs: int = 1
    rhs: float | None = None
    n: float | None = None
    s_meters: float = 1e-19
    size: int | None = None
    neutral_only: bool = False

    _JSON_KEYS = {
        "s", "alpha", "lambda", "k", "t", "b", "q", "gamma", "gamma_sq",
        "shape", "poly", "m", "K", "P", "C", "D", "U", "N", "T",
        "grid", "tolerance", "format", "out", "jobs", "rhs", "n",
        "s_meters", "size", "neutral_only",
    }

    @classmethod
    def from_json(cls, path: str) -> "RunConfig":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(raw) - cls._JSON_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls()
        for key, value in raw.items():
            if key == "lambda":
                cfg.lam = float(value)
            elif key == "grid":
                extra = set(value) - {"kind", "lo", "hi", "count"}
                if extra:
                    raise ConfigError(f"unknown grid keys: {sorted(extra)}")
                cfg.grid_kind = value.get("kind", cfg.grid_kind)
                cfg.grid_lo = float(value.get("lo", cfg.grid_lo))
                cfg.grid_hi = float(value.get("hi", cfg.grid_hi))
                cfg.grid_count = int(value.get("count", cfg.grid_count))
            elif key == "tolerance":
                extra = set(value) - {"rel", "abs", "max_evals"}
                if extra:
                    raise ConfigError(f"unknown tolerance keys: {sorted(extra)}")
                cfg.rel = float(value.get("rel", cfg.rel))
                cfg.abs_tol = float(value.get("abs", cfg.abs_tol))
                cfg.max_evals = int(value.get("max_evals", cfg.max_evals))
            elif key == "poly":
                cfg.poly = [float(v) for v in value]
            else:
                setattr(cfg, key, value)
        return cfg

    def apply_flags(self, args: argparse.Namespace) -> None:
        for field in dataclasses.fields(self):
            flag = getattr(args, field.name, None)
            if flag is not None:
                setattr(self, field.name, flag)

    # -- derived objects -------------------------------------------------

    def tolerance(self) -> Tolerance:
        return Tolerance(rel=self.rel, abs=self.abs_tol, max_evals=self.max_evals)

    def params(self) -> ModelParams:
        gamma = self.gamma
        if self.gamma_sq is not None:
            gamma = -math.sqrt(self.gamma_sq)
        return ModelParams(s=self.s, alpha=self.alpha, lam=self.lam, k=self.k,
                           t=self.t, b=self.b, q=self.q, gamma=gamma)

    def shape_obj(self):
        if self.shape == "custom":
            if not self.poly or self.m is None:
                raise ConfigError("custom shape needs poly coefficients and m")
            return RationalShape(tuple(self.poly), int(self.m), "custom")
        try:
            return BUILTIN_SHAPES[self.shape]
        except KeyError:
            raise ConfigError(
                f"unknown shape {self.shape!r}; choose from {sorted(BUILTIN_SHAPES)} or 'custom'"
            ) from None

    def coefficients(self) -> ConfiningCoefficients:
        if self.C is None:
            return closed_form_coefficients(self.shape_obj(), self.params())
        return ConfiningCoefficients(K=self.K, P=self.P, C=self.C)

    def grid(self) -> GridSpec:
        return GridSpec(kind=self.grid_kind, lo=self.grid_lo, hi=self.grid_hi,
                        count=self.grid_count)


def _num(text: str) -> float:
    """Accept plain decimals and fractions like '1/3'."""
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad number {text!r}") from exc


def _cell(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _json_safe(v):
    """Valid strict JSON: non-finite floats become their sentinel strings."""
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    if isinstance(v, dict):
        return {k: _json_safe(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_safe(x) for x in v]
    return v


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_table(command: str, columns: list[str], rows: list[tuple], fmt: str) -> str:
    if fmt == "json":
        payload = [_json_safe(dict(zip(columns, row))) for row in rows]
        return json.dumps(payload, indent=2, allow_nan=False) + "\n"
    lines = [f"# dualquark {command} {CSV_VERSION}: " + ",".join(columns)]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def _pmap(fn, items, jobs: int) -> list:
    if jobs <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# -- subcommands ---------------------------------------------------------


def cmd_charges(cfg: RunConfig) -> int:
    gamma_sq = cfg.gamma_sq if cfg.gamma_sq is not None else cfg.gamma**2
    gamma = cfg.gamma if cfg.gamma_sq is None else -math.sqrt(cfg.gamma_sq)
    rows = []
    for row in charges_mod.enumerate_fractional_charges(gamma_sq, [cfg.q]):
        b_hi, b_lo = row.roots
        rows.append((
            row.q, row.branch, b_hi, b_lo,
            charges_mod.external_charge_total(b_hi, gamma),
            charges_mod.external_charge_total(b_lo, gamma),
            charges_mod.external_current_total(row.q, gamma),
        ))
    cols = ["q", "branch", "b_plus", "b_minus", "ext_charge_plus", "ext_charge_minus", "current_total"]
    _emit(_render_table("charges", cols, rows, cfg.format), cfg.out)
    return 0


def cmd_potential(cfg: RunConfig) -> int:
    shape, params, coeffs = cfg.shape_obj(), cfg.params(), cfg.coefficients()

    def row(r: float):
        c = sample_at(r, shape, params, coeffs)
        return (c.r, c.psi, c.psi_prime, c.astar, c.phi_k, c.phi_p,
                "singular" if c.singular else "ok")

    rows = _pmap(row, cfg.grid().radii(), cfg.jobs)
    cols = ["r", "psi", "psi_prime", "astar", "phi_k", "phi_p", "flag"]
    _emit(_render_table("potential", cols, rows, cfg.format), cfg.out)
    return 0


def cmd_regions(cfg: RunConfig) -> int:
    decomp = decompose_regions(cfg.shape_obj(), cfg.params(), tol=cfg.tolerance())
    rows = [
        (i, reg.r_lo, reg.r_hi, reg.x_lo, reg.x_hi, reg.psi_prime_sign)
        for i, reg in enumerate(decomp.regions)
    ]
    cols = ["region", "r_lo", "r_hi", "x_lo", "x_hi", "psi_prime_sign"]
    _emit(_render_table("regions", cols, rows, cfg.format), cfg.out)
    return 0


def cmd_energy_min(cfg: RunConfig) -> int:
    shape, params, coeffs = cfg.shape_obj(), cfg.params(), cfg.coefficients()
    decomp = decompose_regions(shape, params, tol=cfg.tolerance())
    rows = []
    for i, region in enumerate(decomp.regions):
        try:
            found = energy.find_energy_minimum(region, shape, params, coeffs, tol=cfg.tolerance())
            rows.append((i, found.x, found.r, found.xi, "ok"))
        except energy.NoInteriorMinimum:
            rows.append((i, math.nan, math.nan, math.nan, "partial-confinement"))
    cols = ["region", "x_min", "r_min", "xi", "status"]
    _emit(_render_table("energy-min", cols, rows, cfg.format), cfg.out)
    return 0


def cmd_single_quark(cfg: RunConfig) -> int:
    params = cfg.params()
    rhs = cfg.rhs if cfg.rhs is not None else params.lam / (params.k * params.alpha**3)
    n = energy.solve_single_quark_n(rhs, cfg.tolerance())
    report = dynamics.energy_scale_report(params, n, s_meters=cfg.s_meters)
    rows = [(rhs, n, report.r_m, report.xi_k, report.xi_lam, report.xi_coul,
             report.ratio_lam_k, report.xi_k_mev)]
    cols = ["rhs", "n", "r_m", "xi_k", "xi_lam", "xi_coul", "ratio_lam_k", "xi_k_mev"]
    _emit(_render_table("single-quark", cols, rows, cfg.format), cfg.out)
    return 0


def cmd_table1(cfg: RunConfig) -> int:
    def build(row: energy.ReferenceRow):
        n_computed = energy.solve_N_for_extremum(row.D, row.seed_x)
        analyzed = energy.analyze_unstable(energy.UnstableParams(D=row.D, U=1.0, N=row.N))
        rel_err = abs(n_computed - row.N) / abs(row.N)
        return (row.D, n_computed, row.N, analyzed.x_min, analyzed.x_max,
                analyzed.E_min, analyzed.E_max, analyzed.depth, rel_err)

    rows = _pmap(build, energy.TABLE1_ROWS, cfg.jobs)
    cols = ["D", "N_computed", "N_paper", "x_min", "x_max", "E_min", "E_max", "depth", "rel_err_N"]
    _emit(_render_table("table1", cols, rows, cfg.format), cfg.out)
    return 0


def cmd_shm(cfg: RunConfig) -> int:
    params = cfg.params()
    if cfg.n is not None:
        n = cfg.n
    else:
        rhs = cfg.rhs if cfg.rhs is not None else params.lam / (params.k * params.alpha**3)
        n = energy.solve_single_quark_n(rhs, cfg.tolerance())
    lam_over_k = params.lam / params.k if params.lam else 1e-3
    osc = dynamics.shm_single_quark_closed_form(
        n, params.alpha, lam_over_k, s=params.s, b=params.b, k=params.k,
        s_meters=cfg.s_meters,
    )
    record = {
        "n": n,
        "r_m": osc.r_m,
        "xi": osc.mass,
        "xi_second": osc.curvature,
        "omega_per_s": osc.omega_per_s,
        "photon_energy_GeV": osc.photon_energy_gev,
    }
    _emit(json.dumps(_json_safe(record), indent=2, allow_nan=False) + "\n", cfg.out)
    return 0


def cmd_symmetry(cfg: RunConfig) -> int:
    sizes = [cfg.size] if cfg.size else [1, 2, 3, 4]
    comps = []
    for size in sizes:
        for c in symmetry.enumerate_compositions(size, neutral_only=cfg.neutral_only):
            comps.append({
                "size": size,
                "pairs": [p.render() for p in c.pairs],
                "kind": c.kind,
                "neutral": symmetry.is_q_neutral(c),
                "q_total": str(c.q_total),
            })
    payload = {
        "qpairs": [p.render() for p in symmetry.QPAIRS],
        "compositions": comps,
        "proton_configurations": [
            [ql.render() for ql in config] for config in symmetry.proton_configurations()
        ],
    }
    _emit(json.dumps(payload, indent=2) + "\n", cfg.out)
    return 0


def cmd_mass(cfg: RunConfig) -> int:
    params = cfg.params()
    m = energy.free_particle_mass(params, cfg.shape_obj(), cfg.tolerance())
    rows = [(params.b, params.lam, params.alpha, params.s, m)]
    _emit(_render_table("mass", ["b", "lambda", "alpha", "s", "mass"], rows, cfg.format), cfg.out)
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    text, ok = verify.full_report()
    _emit(text, cfg.out)
    if cfg.out:
        sys.stdout.write(text)
    return 0 if ok else 1


# -- argument wiring -----------------------------------------------------


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", help="JSON config file; flags override its keys")
    sp.add_argument("--out", help="output path (default stdout)")
    sp.add_argument("--format", choices=["csv", "json"], dest="format")
    sp.add_argument("--jobs", type=int, help="parallel row evaluation, order preserved")


def _add_params(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--s", type=_num)
    sp.add_argument("--alpha", type=_num)
    sp.add_argument("--lam", type=_num, help="weak-potential amplitude")
    sp.add_argument("--k", type=_num, help="confining amplitude")
    sp.add_argument("--t", type=_num, help="flat offset of the weak potential")
    sp.add_argument("--b", type=_num, help="quark charge")
    sp.add_argument("--q", type=_num, help="seed charge; fractions like 1/3 accepted")
    sp.add_argument("--gamma", type=_num)


def _add_shape(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--shape", choices=sorted(BUILTIN_SHAPES) + ["custom"])
    sp.add_argument("--poly", type=_num, nargs="+", help="ascending polynomial coefficients (custom shape)")
    sp.add_argument("--m", type=int, help="denominator power (custom shape)")
    sp.add_argument("--K", type=_num)
    sp.add_argument("--P", type=_num)
    sp.add_argument("--C", type=_num)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dualquark",
        description="Classical dual-field quark model: charges, potentials, energy minima, SHM.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("charges", help="roots of the charge quadratic and source totals")
    _add_common(sp)
    sp.add_argument("--q", type=_num, help="seed charge; fractions like 1/3 accepted")
    sp.add_argument("--gamma", type=_num)
    sp.add_argument("--gamma-sq", type=_num, dest="gamma_sq")
    sp.set_defaults(fn=cmd_charges)

    sp = sub.add_parser("potential", help="sample all potentials on a radial grid")
    _add_common(sp)
    _add_params(sp)
    _add_shape(sp)
    sp.add_argument("--grid-kind", choices=["lin", "log"], dest="grid_kind")
    sp.add_argument("--grid-lo", type=_num, dest="grid_lo")
    sp.add_argument("--grid-hi", type=_num, dest="grid_hi")
    sp.add_argument("--grid-count", type=int, dest="grid_count")
    sp.set_defaults(fn=cmd_potential)

    sp = sub.add_parser("regions", help="radial regions cut at the extrema of the weak profile")
    _add_common(sp)
    _add_params(sp)
    _add_shape(sp)
    sp.set_defaults(fn=cmd_regions)

    sp = sub.add_parser("energy-min", help="minimum-energy radius in each region")
    _add_common(sp)
    _add_params(sp)
    _add_shape(sp)
    sp.set_defaults(fn=cmd_energy_min)

    sp = sub.add_parser("single-quark", help="minimum equation root n and the energy scales there")
    _add_common(sp)
    _add_params(sp)
    sp.add_argument("--rhs", type=_num, help="right-hand side lam/(k alpha^3); derived from params if omitted")
    sp.add_argument("--s-meters", type=_num, dest="s_meters", help="physical size of s in meters")
    sp.set_defaults(fn=cmd_single_quark)

    sp = sub.add_parser("table1", help="unstable-solution table, computed against the reference rows")
    _add_common(sp)
    sp.set_defaults(fn=cmd_table1)

    sp = sub.add_parser("shm", help="small-oscillation frequency at the single-quark minimum")
    _add_common(sp)
    _add_params(sp)
    sp.add_argument("--n", type=_num, help="minimum location in units of s/alpha")
    sp.add_argument("--rhs", type=_num)
    sp.add_argument("--s-meters", type=_num, dest="s_meters")
    sp.set_defaults(fn=cmd_shm)

    sp = sub.add_parser("symmetry", help="q-pair compositions and proton configurations")
    _add_common(sp)
    sp.add_argument("--size", type=int, choices=[1, 2, 3, 4])
    sp.add_argument("--neutral-only", action="store_true", dest="neutral_only", default=None)
    sp.set_defaults(fn=cmd_symmetry)

    sp = sub.add_parser("mass", help="free-particle mass from the field quadrature")
    _add_common(sp)
    _add_params(sp)
    _add_shape(sp)
    sp.set_defaults(fn=cmd_mass)

    sp = sub.add_parser("verify", help="run every acceptance criterion; exit 1 on failure")
    _add_common(sp)
    sp.set_defaults(fn=cmd_verify)

    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = RunConfig.from_json(args.config) if args.config else RunConfig()
        cfg.apply_flags(args)
        return args.fn(cfg)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
