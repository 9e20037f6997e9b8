"""Command-line front end.

Subcommands
-----------
eval FUNCTION
    Evaluate one function or representation and print value, error estimate
    and evaluation count.
verify IDENTITY|all
    Sweep a registered identity over a grid and print a per-point report.
figure-data {j0,i0}
    Emit the integrand curves as CSV (columns z, phi, g).
list
    Print the registered functions and identities.

Value lists accept ``v1,v2,...`` or ranges ``lo..hi`` / ``lo..hi:step``
(default step 1).  Floats are printed with ``repr``, the shortest string
that round-trips, so output is byte-stable.

Exit codes: 0 success, 1 identity failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
import warnings

from . import figures, kbessel, laplace, reps, special, verify
from .config import load_config, resolve
from .errors import DomainError, SlowTailWarning

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

GRID_PARAMS = ("alpha", "x", "z", "a", "b", "m", "beta2", "p", "R", "t", "phi")


class UsageError(Exception):
    pass


def parse_values(text: str) -> list[float]:
    """Parse ``1,2,3`` or ``lo..hi[:step]`` into a list of floats."""
    text = text.strip()
    if ".." in text:
        rng, _, step_s = text.partition(":")
        lo_s, _, hi_s = rng.partition("..")
        try:
            lo, hi = float(lo_s), float(hi_s)
            step = float(step_s) if step_s else 1.0
        except ValueError:
            raise UsageError(f"bad range {text!r}") from None
        if not (step > 0 and lo <= hi and math.isfinite(lo) and math.isfinite(hi)):
            raise UsageError(f"bad range {text!r}: need lo <= hi and step > 0")
        n = int(math.floor((hi - lo) / step + 1e-9))
        return [lo + i * step for i in range(n + 1)]
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad value list {text!r}") from None


def _fmt(v) -> str:
    return repr(float(v))


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

def _closed(value: float):
    return value, 0.0, 0


def _quad(res):
    return res.value, res.error_estimate, res.evals


def _series(res):
    return res.value, res.truncation_bound, res.terms_used


def _arg(ns, name):
    v = getattr(ns, name)
    if v is None:
        raise UsageError(f"--{name} is required for {ns.function}")
    return v


def _argument(ns):
    # --x and --z name the same argument for every function
    v = ns.x if ns.x is not None else ns.z
    if v is None:
        raise UsageError(f"--x (or --z) is required for {ns.function}")
    return v


EVAL_FUNCTIONS = {
    "j-series": lambda ns, spec: _series(special.bessel_j_series(_arg(ns, "alpha"), _argument(ns))),
    "i-series": lambda ns, spec: _series(special.bessel_i_series(_arg(ns, "alpha"), _argument(ns))),
    "j0-rep": lambda ns, spec: _quad(reps.j0_rep(_argument(ns), spec)),
    "i0-rep": lambda ns, spec: _quad(reps.i0_rep(_argument(ns), ns.scaled, spec)),
    "j-reduction": lambda ns, spec: _quad(reps.j_alpha_reduction(_arg(ns, "alpha"), _argument(ns), spec)),
    "i-reduction": lambda ns, spec: _quad(reps.i_alpha_reduction(_arg(ns, "alpha"), _argument(ns), spec)),
    "j-double": lambda ns, spec: _quad(reps.j_alpha_double(_arg(ns, "alpha"), _argument(ns), spec)),
    "i-double": lambda ns, spec: _quad(reps.i_alpha_double(_arg(ns, "alpha"), _argument(ns), spec)),
    "k-basset": lambda ns, spec: _quad(kbessel.k_alpha_basset(_arg(ns, "alpha"), _argument(ns), spec)),
    "k-exp": lambda ns, spec: _quad(kbessel.k_alpha_exp(_arg(ns, "alpha"), _argument(ns), spec)),
    "k-half": lambda ns, spec: _closed(kbessel.k_half_closed(_argument(ns))),
    "laplace-closed": lambda ns, spec: _closed(
        laplace.laplace_j_alpha_closed(_arg(ns, "alpha"), _arg(ns, "a"), _arg(ns, "b"))),
    "laplace-special": lambda ns, spec: _closed(
        laplace.laplace_special_case(_arg(ns, "alpha"), _arg(ns, "a"), _arg(ns, "b"))),
}


def cmd_eval(ns, settings, out) -> int:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SlowTailWarning)
        value, err, evals = EVAL_FUNCTIONS[ns.function](ns, settings.spec)
    print(f"value = {_fmt(value)}", file=out)
    print(f"error_estimate = {_fmt(err)}", file=out)
    print(f"evals = {int(evals)}", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _grid_for(name: str, ns) -> verify.SweepGrid:
    ident = verify.get_identity(name)
    grid = verify.default_grid(name)
    for p in GRID_PARAMS:
        raw = getattr(ns, f"grid_{p}")
        if raw is None:
            continue
        if p not in ident.params:
            raise UsageError(f"{name} has no parameter {p!r}; parameters: {list(ident.params)}")
        grid.values[p] = parse_values(raw)
    return grid


def _print_report(report: verify.IdentityReport, out) -> None:
    print(f"# {report.identity}", file=out)
    for r in report.records:
        params = " ".join(f"{k}={_fmt(v)}" for k, v in r.params.items())
        print(f"{params} [{r.label}] lhs={_fmt(r.lhs)} rhs={_fmt(r.rhs)} "
              f"abs_err={r.abs_err:.3e} rel_err={r.rel_err:.3e} est={r.error_estimate:.3e} "
              f"{'PASS' if r.passed else 'FAIL'}", file=out)
    print(f"{report.identity}: {report.pass_count}/{report.total} pass, "
          f"max rel err {report.max_rel_err:.3e}, max abs err {report.max_abs_err:.3e}", file=out)


def _write_report_csv(reports, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["identity", "params", "label", "lhs", "rhs", "abs_err", "rel_err",
                    "error_estimate", "threshold", "pass"])
        for rep in reports:
            for r in rep.records:
                params = ";".join(f"{k}={_fmt(v)}" for k, v in r.params.items())
                w.writerow([rep.identity, params, r.label, _fmt(r.lhs), _fmt(r.rhs),
                            _fmt(r.abs_err), _fmt(r.rel_err), _fmt(r.error_estimate),
                            _fmt(r.threshold), int(r.passed)])


def cmd_verify(ns, settings, out) -> int:
    names = list(verify.REGISTRY) if ns.identity == "all" else [ns.identity]
    if ns.identity == "all" and any(getattr(ns, f"grid_{p}") is not None for p in GRID_PARAMS):
        raise UsageError("grid flags cannot be combined with 'verify all'")
    grids = [_grid_for(n, ns) for n in names]
    for g in grids:
        g.validate()
    reports = []
    for g in grids:
        rep = verify.run_identity(g, settings.spec, tol_mult=settings.tol_mult,
                                  abs_floor=settings.abs_floor)
        _print_report(rep, out)
        reports.append(rep)
    if ns.csv:
        _write_report_csv(reports, ns.csv)
    return EXIT_OK if all(r.all_passed for r in reports) else EXIT_FAIL


# ---------------------------------------------------------------------------
# figure-data
# ---------------------------------------------------------------------------

def cmd_figure_data(ns, settings, out) -> int:
    zs = parse_values(ns.z)
    if not zs:
        raise UsageError("--z is empty")
    lo, hi = (0.0, math.inf) if ns.wide else (1.0, 10.0)
    if not all(lo <= z <= hi and z > 0 for z in zs):
        raise UsageError(f"z values must lie in [{lo}, {hi}] (use --wide to extend)")
    if ns.samples < figures.MIN_SAMPLES:
        raise UsageError(f"--samples must be >= {figures.MIN_SAMPLES}")
    rows = list(figures.figure_rows(ns.function, zs, ns.samples))
    if ns.output:
        with open(ns.output, "w", newline="", encoding="utf-8") as fh:
            figures.write_csv(rows, fh)
    else:
        figures.write_csv(rows, out)
    if not ns.check:
        return EXIT_OK
    ok = True
    for z, area in figures.trapezoid_check(rows).items():
        ref = figures.reference(ns.function, z)
        tol = figures.check_tolerance(ns.function, ref)
        good = abs(area - ref) <= tol
        ok &= good
        print(f"check z={_fmt(z)} trapezoid={_fmt(area)} series={_fmt(ref)} "
              f"abs_err={abs(area - ref):.3e} {'PASS' if good else 'FAIL'}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# list
# ---------------------------------------------------------------------------

def cmd_list(ns, settings, out) -> int:
    print("functions:", file=out)
    for name in EVAL_FUNCTIONS:
        print(f"  {name}", file=out)
    print("identities:", file=out)
    for ident in verify.REGISTRY.values():
        print(f"  {ident.name}  ({', '.join(ident.params)})  {ident.description}", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="besselreps",
        description="Evaluate and verify integral representations of Bessel functions.",
        epilog="examples:\n"
               "  besselreps eval j0-rep --x 1\n"
               "  besselreps verify lipschitz --a 0.5,1,2,5 --b 0.5,1,2,5\n"
               "  besselreps figure-data j0 --z 1..10 --samples 512 --check",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        # --m (duplication grid) must not be read as an abbreviation of --max-depth
        allow_abbrev=False,
    )
    parser.add_argument("--config", help="key = value config file (default: $BESSELREPS_CONFIG)")
    parser.add_argument("--rel-tol", type=float, dest="rel_tol")
    parser.add_argument("--abs-tol", type=float, dest="abs_tol")
    parser.add_argument("--max-depth", type=int, dest="max_depth")
    parser.add_argument("--max-evals", type=int, dest="max_evals")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one function", allow_abbrev=False)
    p.add_argument("function", choices=list(EVAL_FUNCTIONS))
    for name in ("alpha", "x", "z", "a", "b"):
        p.add_argument(f"--{name}", type=float)
    p.add_argument("--scaled", action="store_true", help="i0-rep: return exp(-x) I0(x)")

    p = sub.add_parser("verify", help="sweep an identity over a grid", allow_abbrev=False)
    p.add_argument("identity", choices=list(verify.REGISTRY) + ["all"])
    for name in GRID_PARAMS:
        p.add_argument(f"--{name}", dest=f"grid_{name}", metavar="VALUES")
    p.add_argument("--csv", help="also write the per-point report as CSV")
    p.add_argument("--tol-mult", type=float, dest="tol_mult")
    p.add_argument("--abs-floor", type=float, dest="abs_floor")

    p = sub.add_parser("figure-data", help="emit integrand curves as CSV",
                       allow_abbrev=False)
    p.add_argument("function", choices=list(figures.FUNCTIONS))
    p.add_argument("--z", default="1..10", help="z values (default 1..10)")
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--output", "-o", help="write CSV here instead of stdout")
    p.add_argument("--wide", action="store_true", help="allow z outside [1, 10]")
    p.add_argument("--check", action="store_true",
                   help="report the trapezoid area of each curve on stderr")

    sub.add_parser("list", help="list functions and identities")
    return parser


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "figure-data": cmd_figure_data,
            "list": cmd_list}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        overrides = {k: getattr(ns, k, None) for k in
                     ("rel_tol", "abs_tol", "max_depth", "max_evals", "tol_mult", "abs_floor")}
        settings = resolve(load_config(ns.config), overrides)
        return COMMANDS[ns.command](ns, settings, out)
    except (DomainError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
