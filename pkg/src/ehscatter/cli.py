"""Command-line entry point: ``ehscatter <command> [--flags]``.

Commands write CSV (or TSV) with a leading ``# key=value`` block so each file
records how it was made. Exit codes: 0 success, 2 bad input, 3 eigenvalue
search exhausted its range, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import io
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import __version__
from ._numerics import reduce_mod_pi
from .cfrac import CERT_K, CF_TOL, InsufficientRangeError, certify_eigenvalue, find_eigenvalues
from .frobenius import series_u_reg
from .model import CaseTag, ModeParams, classify_case
from .monodromy import compute_P, exact_phase_at_eigenvalue
from .oracle import FIT_TOL, ODE_TOL, far_field_phase, integrate_regular
from .wkb import eigenfunction_wkb, liouville_map, phase_wkb

__all__ = ["RunConfig", "main", "build_parser", "worker_count"]

EXIT_OK, EXIT_INPUT, EXIT_SEARCH, EXIT_NUMERIC = 0, 2, 3, 4
SWEEP_BETA_MAX = "120"


@dataclass(frozen=True)
class RunConfig:
    command: str
    j: int | None = None
    q: int | None = None
    beta: str | None = None
    beta_min: str = "0.5"
    beta_max: str | None = None
    steps: int = 240
    count: int = 5
    method: str = "wkb"
    z_min: float = 1.001
    z_max: float = 20.0
    out: str | None = None
    fmt: str = "csv"
    cf_tol: float = CF_TOL
    beta_tol: float = 1e-10
    ode_tol: float = ODE_TOL
    fit_tol: float = FIT_TOL
    skip_oracle: bool = False
    keys: tuple = ()

    def __post_init__(self):
        for name in ("cf_tol", "beta_tol", "ode_tol", "fit_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.fmt not in ("csv", "tsv"):
            raise ValueError("format must be csv or tsv")
        if self.out is not None:
            parent = os.path.dirname(os.path.abspath(self.out))
            if not os.access(parent, os.W_OK):
                raise ValueError(f"output directory {parent} is not writable")


def worker_count() -> int:
    """``HEUN_THREADS`` if set, else the CPU count."""
    env = os.environ.get("HEUN_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _pmap(fun, items):
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fun(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fun, items))


def _fmt(v) -> str:
    if isinstance(v, float):
        return "nan" if math.isnan(v) else repr(v)
    return str(v)


def _emit(cfg: RunConfig, header: list[str], rows: list[list], extra_meta: dict | None = None) -> str:
    sep = "," if cfg.fmt == "csv" else "\t"
    buf = io.StringIO()
    fields = asdict(cfg)
    shown = cfg.keys or tuple(fields)
    meta = {k: fields[k] for k in shown if fields.get(k) is not None and k not in ("out", "keys")}
    meta["version"] = __version__
    meta.update(extra_meta or {})
    for k, v in meta.items():
        buf.write(f"# {k}={v}\n")
    buf.write(sep.join(header) + "\n")
    for row in rows:
        buf.write(sep.join(_fmt(v) for v in row) + "\n")
    text = buf.getvalue()
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


def _say(cfg: RunConfig, line: str):
    print(line, file=sys.stdout if cfg.out else sys.stderr)


def _params(cfg: RunConfig, beta=None) -> ModeParams:
    if cfg.j is None or cfg.q is None:
        raise ValueError("--j and --q are required")
    return ModeParams(cfg.j, cfg.q, Fraction(cfg.beta if beta is None else beta))


# -- classify ---------------------------------------------------------------

def classify_line(p: ModeParams) -> str:
    case = classify_case(p)
    parts = [case.tag.value, f"a={p.a:.12g}"]
    if p.q:
        parts.append(f"b={p.b:.12g}")
    if case.tag == CaseTag.I:
        parts.append(f"z0={case.z0:.12g}")
    elif case.tag == CaseTag.II:
        parts.append(f"alpha={case.alpha:.12g}")
    return " ".join(parts)


def cmd_classify(cfg: RunConfig) -> int:
    line = classify_line(_params(cfg))
    print(line)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(line + "\n")
    return EXIT_OK


# -- wkb-sweep --------------------------------------------------------------

def beta_grid(beta_min: str, beta_max: str, steps: int) -> list[Fraction]:
    """``steps`` equally spaced exact values from ``beta_min`` to ``beta_max`` inclusive."""
    lo, hi = Fraction(beta_min), Fraction(beta_max)
    if not 0 < lo <= hi:
        raise ValueError("need 0 < beta_min <= beta_max")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if steps == 1:
        return [lo]
    return [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]


def _sweep_row(args):
    j, q, beta = args
    p = ModeParams(j, q, beta)
    try:
        est = phase_wkb(p)
        return [p.beta, est.delta_jq, est.err_bound, est.case.value, "ok"]
    except ArithmeticError as exc:
        return [p.beta, math.nan, math.nan, classify_case(p).tag.value, type(exc).__name__]


def cmd_wkb_sweep(cfg: RunConfig) -> int:
    _params(cfg, 1)
    grid = beta_grid(cfg.beta_min, cfg.beta_max or SWEEP_BETA_MAX, cfg.steps)
    rows = _pmap(_sweep_row, [(cfg.j, cfg.q, b) for b in grid])
    _emit(cfg, ["beta", "delta_wkb", "err_bound", "case", "status"], rows)
    failed = sum(r[4] != "ok" for r in rows)
    _say(cfg, f"rows={len(rows)} failed={failed}")
    return EXIT_OK


# -- eigenvalues ------------------------------------------------------------

def _search_limit(cfg: RunConfig) -> float | None:
    return None if cfg.beta_max is None else float(Fraction(cfg.beta_max))


def _P_row(args):
    j, q, beta, beta_hp = args
    return compute_P(ModeParams(j, q, beta), beta=beta_hp).P


def cmd_eigenvalues(cfg: RunConfig) -> int:
    _params(cfg, 1)
    ev = find_eigenvalues((cfg.j, cfg.q), cfg.count, _search_limit(cfg))
    Ps = _pmap(_P_row, [(cfg.j, cfg.q, b, h) for b, h in zip(ev.betas, ev.betas_hp)])
    rows = []
    for n, (b, res, tail, P) in enumerate(zip(ev.betas, ev.residuals, ev.ratio_tails, Ps), start=1):
        exact = exact_phase_at_eigenvalue(ModeParams(cfg.j, cfg.q, b), n).delta_jq
        rows.append([n, b, res, tail, P, reduce_mod_pi(exact)])
    _emit(cfg, ["n", "beta_n", "residual_M", "minimal_ratio", "P_est", "delta_exact_mod_pi"], rows)
    _say(cfg, f"eigenvalues={len(rows)} all_minimal={all(ev.minimal_flags)}")
    return EXIT_OK


# -- compare ----------------------------------------------------------------

def _compare_row(args):
    j, q, n, beta, ode_tol, fit_tol, skip_oracle = args
    p = ModeParams(j, q, beta)
    est = phase_wkb(p)
    exact = exact_phase_at_eigenvalue(p, n).delta_jq
    diff = reduce_mod_pi(est.delta_jq - exact)
    if skip_oracle:
        o_delta = o_diff = math.nan
    else:
        o_delta = far_field_phase(p, ode_tol, fit_tol=fit_tol).Delta
        o_diff = reduce_mod_pi(o_delta - exact)
    return [n, beta, est.case.value, est.delta_jq, exact, diff, est.err_bound, o_delta, o_diff]


def cmd_compare(cfg: RunConfig) -> int:
    _params(cfg, 1)
    ev = find_eigenvalues((cfg.j, cfg.q), cfg.count, _search_limit(cfg), certify=False)
    jobs = [(cfg.j, cfg.q, n, b, cfg.ode_tol, cfg.fit_tol, cfg.skip_oracle)
            for n, b in enumerate(ev.betas, start=1)]
    rows = _pmap(_compare_row, jobs)
    header = ["n", "beta_n", "case", "delta_wkb", "delta_exact", "diff_mod_pi", "err_bound",
              "oracle_delta", "oracle_diff"]
    _emit(cfg, header, rows)
    max_diff = max(abs(r[5]) for r in rows)
    violations = sum(1 for r in rows if r[2] != CaseTag.II.value and abs(r[5]) > r[6])
    _say(cfg, f"max|diff_mod_pi|={max_diff:.6g} bound_violations={violations}")
    return EXIT_OK


# -- eigenfunction ----------------------------------------------------------

def _z_grid(cfg: RunConfig) -> list[float]:
    if not 1.0 < cfg.z_min <= cfg.z_max:
        raise ValueError("need 1 < z_min <= z_max")
    if cfg.steps < 2:
        return [cfg.z_min]
    h = (cfg.z_max - cfg.z_min) / (cfg.steps - 1)
    return [cfg.z_min + i * h for i in range(cfg.steps)]


def eigenfunction_rows(cfg: RunConfig) -> tuple[list[str], list[list]]:
    p = _params(cfg)
    zs = _z_grid(cfg)
    pref = [(z * z - 1.0) ** (0.5 * p.q) for z in zs]
    if cfg.method == "wkb":
        lmap = liouville_map(p)
        return ["z", "zeta", "A"], [[z, lmap.zeta(z), eigenfunction_wkb(p, z, lmap)] for z in zs]
    if cfg.method == "frobenius":
        solution = None
        if 0.5 * (zs[-1] - 1.0) >= 1.0:
            try:
                _, solution = certify_eigenvalue((p.j, p.q), p.beta, CERT_K)
            except ArithmeticError:
                solution = None
            if solution is None or not solution.minimal_flag:
                raise ValueError("frobenius beyond z = 3 needs beta at an eigenvalue")
        vals = [series_u_reg(p, 0.5 * (z - 1.0), solution=solution).value for z in zs]
        return ["z", "A"], [[z, c * v] for z, c, v in zip(zs, pref, vals)]
    if cfg.method == "oracle":
        traj = integrate_regular(p, max(0.5 * (zs[-1] - 1.0), 2e-3), cfg.ode_tol)
        rows = []
        for z, c in zip(zs, pref):
            zeta = 0.5 * (z - 1.0)
            u = series_u_reg(p, zeta).value if zeta < traj.zeta_seed else float(traj.u_at(zeta))
            rows.append([z, c * u])
        return ["z", "A"], rows
    raise ValueError(f"unknown method {cfg.method!r}")


def cmd_eigenfunction(cfg: RunConfig) -> int:
    header, rows = eigenfunction_rows(cfg)
    _emit(cfg, header, rows)
    _say(cfg, f"points={len(rows)} method={cfg.method}")
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "wkb-sweep": cmd_wkb_sweep,
    "eigenvalues": cmd_eigenvalues,
    "compare": cmd_compare,
    "eigenfunction": cmd_eigenfunction,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ehscatter", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, beta=False):
        sp.add_argument("--j", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)
        if beta:
            sp.add_argument("--beta", type=str, required=True)
        sp.add_argument("--out", type=str, default=None)
        sp.add_argument("--format", dest="fmt", choices=("csv", "tsv"), default="csv")
        sp.add_argument("--tol-cf", dest="cf_tol", type=float, default=CF_TOL)
        sp.add_argument("--tol-beta", dest="beta_tol", type=float, default=1e-10)
        sp.add_argument("--tol-ode", dest="ode_tol", type=float, default=ODE_TOL)
        sp.add_argument("--tol-fit", dest="fit_tol", type=float, default=FIT_TOL)

    common(sub.add_parser("classify", help="print the WKB case and its data"), beta=True)
    sp = sub.add_parser("wkb-sweep", help="WKB phase and error bound on a beta grid")
    common(sp)
    sp.add_argument("--beta-min", type=str, default="0.5")
    sp.add_argument("--beta-max", type=str, default=SWEEP_BETA_MAX)
    sp.add_argument("--steps", type=int, default=240)
    sp = sub.add_parser("eigenvalues", help="certified eigenvalues with P and the exact phase")
    common(sp)
    sp.add_argument("--count", type=int, default=5)
    sp.add_argument("--beta-max", type=str, default=None, help="search limit (exit 3 if reached)")
    sp = sub.add_parser("compare", help="WKB, exact and integrated phases at eigenvalues")
    common(sp)
    sp.add_argument("--count", type=int, default=5)
    sp.add_argument("--beta-max", type=str, default=None, help="search limit (exit 3 if reached)")
    sp.add_argument("--skip-oracle", action="store_true")
    sp = sub.add_parser("eigenfunction", help="tabulate A(z)")
    common(sp, beta=True)
    sp.add_argument("--method", choices=("wkb", "frobenius", "oracle"), default="wkb")
    sp.add_argument("--z-min", type=float, default=1.001)
    sp.add_argument("--z-max", type=float, default=20.0)
    sp.add_argument("--steps", type=int, default=200)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        given = {k: v for k, v in vars(args).items() if v is not None or k == "out"}
        cfg = RunConfig(**given, keys=tuple(given))
        return COMMANDS[cfg.command](cfg)
    except InsufficientRangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEARCH
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ArithmeticError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
