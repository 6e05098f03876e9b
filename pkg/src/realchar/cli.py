"""Command-line front end.

Every subcommand prints one JSON object on stdout that echoes all of its
options after defaulting; ``plot`` also writes a CSV file.  Errors go to
stderr as {"error": {"code": ..., "message": ...}}.

Exit codes: 0 ok, 1 usage or validation error, 2 a verification report
failed, 3 a series or quadrature did not converge.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import gauss, transition, verify
from .arith import factorize
from .charsum import SumJob, default_threads, double_sum
from .quadrature import ConvergenceError
from .transition import EvalConfig

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_CONVERGENCE = 0, 1, 2, 3

PLOT_QUANTITIES = ("c", "cprime", "f")
MAX_PLOT_POINTS = 10**6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    """Exact value of a decimal or p/q string."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="realchar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_tol(p):
        p.add_argument("--tol", type=_positive_float, default=1e-8, help="absolute error target")
        return p

    p = sub.add_parser("sum", help="exact double sum S_ell(X, Y)")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--algo", choices=("direct", "periodic", "auto"), default="auto")
    p.add_argument("--threads", type=int, default=default_threads())

    p = with_tol(sub.add_parser("cfunc", help="transition function C(alpha)"))
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--expr", choices=("1", "2", "both", "auto"), default="auto")

    p = with_tol(sub.add_parser("cprime", help="derivative C'(alpha)"))
    p.add_argument("--alpha", type=_rational, required=True)

    p = with_tol(sub.add_parser("riemann", help="Riemann's function f(x)"))
    p.add_argument("--x", type=_rational, required=True)

    p = sub.add_parser("gauss", help="exact G_k(n)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("gqr", help="quadratic Gauss sum G(p/q)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)

    p = sub.add_parser("classify", help="differentiability of f at p/q or of C' at p/q")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--what", choices=("f", "cprime"), default="f")

    p = with_tol(sub.add_parser("plot", help="CSV of C, C' and f over an alpha grid"))
    p.add_argument("--what", default="c,cprime", help="comma list drawn from c, cprime, f")
    p.add_argument("--from", dest="start", type=_rational, default=Fraction("0.02"))
    p.add_argument("--to", dest="end", type=_rational, default=Fraction(5))
    p.add_argument("--step", type=_rational, default=Fraction("0.02"))
    p.add_argument("--out", required=True)

    p = with_tol(sub.add_parser("verify", help="run a verification report"))
    p.add_argument("name", choices=sorted(verify.CHECKS) + ["all"])
    p.add_argument("--slow", action="store_true")
    p.add_argument("--threads", type=int, default=default_threads())
    return parser


# ---------------------------------------------------------------------------
# subcommands; each returns (payload, exit code)


def _cmd_sum(a, cfg):
    if a.threads < 1:
        raise ValueError("--threads must be positive")
    result = double_sum(SumJob(a.x, a.y, a.ell, a.algo, a.threads))
    return {
        "value": result.value,
        "pairs_evaluated": result.pairs_evaluated,
        "algorithm_used": result.algorithm_used,
        "elapsed_seconds": result.elapsed_seconds,
    }, EXIT_OK


def _cmd_cfunc(a, cfg):
    if a.expr == "both":
        one, two = transition.c_expr1(a.alpha, cfg), transition.c_expr2(a.alpha, cfg)
        return {"c_expr1": one, "c_expr2": two, "difference": one - two}, EXIT_OK
    fn = {"1": transition.c_expr1, "2": transition.c_expr2, "auto": transition.c_value}[a.expr]
    return {"value": fn(a.alpha, cfg)}, EXIT_OK


def _cmd_cprime(a, cfg):
    return {"value": transition.c_prime(a.alpha, cfg)}, EXIT_OK


def _cmd_riemann(a, cfg):
    return {"value": transition.riemann_f(a.x, cfg)}, EXIT_OK


def _cmd_gauss(a, cfg):
    g = gauss.gauss_g(a.k, a.n)
    return {
        "factors": [list(pe) for pe in factorize(a.n)],
        "r": g.r,
        "d": g.d,
        "exact": str(g),
        "value": float(g),
    }, EXIT_OK


def _cmd_gqr(a, cfg):
    direct = gauss.gauss_quadratic_direct(a.p, a.q)
    entry = gauss.gauss_quadratic_closed(a.p, a.q)
    return {
        "re": direct.re,
        "im": direct.im,
        "normalized": entry.normalized.value,
        "case_label": entry.case_label,
        "table_value": entry.table_value.value,
        "agrees_with_table": entry.agrees_with_table,
    }, EXIT_OK


def _cmd_classify(a, cfg):
    if a.q < 1:
        raise ValueError("--q must be positive")
    center = Fraction(a.p, a.q)
    verdict = transition.classify_f(center) if a.what == "f" else transition.classify_c_prime(center)
    return {"kind": verdict.kind, "witness": verdict.witness}, EXIT_OK


@dataclass(frozen=True)
class PlotSpec:
    quantities: tuple[str, ...]
    range_start: Fraction
    range_end: Fraction
    step: Fraction
    output_path: str

    def __post_init__(self):
        if not self.quantities or any(q not in PLOT_QUANTITIES for q in self.quantities):
            raise ValueError(f"quantities must be drawn from {PLOT_QUANTITIES}")
        if len(set(self.quantities)) != len(self.quantities):
            raise ValueError("quantities repeat")
        if self.step <= 0:
            raise ValueError("step must be positive")
        if not self.range_start < self.range_end:
            raise ValueError("range start must be below range end")
        if self.step > self.range_end - self.range_start:
            raise ValueError("step exceeds the range")
        if (self.range_end - self.range_start) / self.step > MAX_PLOT_POINTS:
            raise ValueError(f"more than {MAX_PLOT_POINTS} grid points")
        if self.range_start < 0 and "c" in self.quantities:
            raise ValueError("C is defined for alpha >= 0")

    def grid(self) -> list[Fraction]:
        start = self.range_start
        if "cprime" in self.quantities and start < self.step:
            start = self.step
        count = math.floor((self.range_end - start) / self.step) + 1
        return [start + i * self.step for i in range(max(count, 0))]


def _fmt(v: float) -> str:
    return format(v, ".12g")


def emit_plot(spec: PlotSpec, cfg: EvalConfig) -> dict:
    """Write the CSV and return the summary: row count and per-column min/max."""
    evaluators = {
        "c": lambda a: transition.c_value(float(a), cfg),
        "cprime": lambda a: transition.c_prime(a, cfg),
        "f": lambda a: transition.riemann_f(a, cfg),
    }
    columns = ("alpha",) + spec.quantities
    cells = []
    for alpha in spec.grid():
        cells.append([_fmt(v) for v in [float(alpha)] + [evaluators[q](alpha) for q in spec.quantities]])
    lines = [",".join(columns)] + [",".join(row) for row in cells]
    with open(spec.output_path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    # summarise the values as written
    summary = {}
    for j, name in enumerate(columns):
        col = [float(row[j]) for row in cells]
        summary[name] = {"min": min(col), "max": max(col)} if col else {"min": None, "max": None}
    return {"rows": len(cells), "columns": summary}


def _cmd_plot(a, cfg):
    spec = PlotSpec(tuple(q.strip() for q in a.what.split(",")), a.start, a.end, a.step, a.out)
    return emit_plot(spec, cfg), EXIT_OK


def _cmd_verify(a, cfg):
    if a.threads < 1:
        raise ValueError("--threads must be positive")
    names = sorted(verify.CHECKS) if a.name == "all" else [a.name]
    reports = [verify.run_check(n, cfg, a.slow, a.threads) for n in names]
    ok = all(r.passed for r in reports)
    code = EXIT_OK if ok else EXIT_VERIFY
    if len(reports) == 1:
        return {"report": reports[0].to_dict()}, code
    return {"reports": [r.to_dict() for r in reports], "pass": ok}, code


COMMANDS = {
    "sum": _cmd_sum,
    "cfunc": _cmd_cfunc,
    "cprime": _cmd_cprime,
    "riemann": _cmd_riemann,
    "gauss": _cmd_gauss,
    "gqr": _cmd_gqr,
    "classify": _cmd_classify,
    "plot": _cmd_plot,
    "verify": _cmd_verify,
}


_ECHO_NAMES = {"start": "from", "end": "to"}


def _echo(args: argparse.Namespace) -> dict:
    out = {}
    for key, value in vars(args).items():
        out[_ECHO_NAMES.get(key, key)] = str(value) if isinstance(value, Fraction) else value
    return out


def _fail(code: int, message: str) -> int:
    print(json.dumps({"error": {"code": code, "message": message}}), file=sys.stderr)
    return code


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _fail(EXIT_USAGE, str(exc))
    try:
        cfg = EvalConfig(tolerance=getattr(args, "tol", 1e-8))
        payload, code = COMMANDS[args.command](args, cfg)
    except ConvergenceError as exc:
        return _fail(EXIT_CONVERGENCE, str(exc))
    except (ValueError, OSError) as exc:
        return _fail(EXIT_USAGE, str(exc))
    print(json.dumps({**_echo(args), **payload}))
    return code


def main() -> int:
    return run(sys.argv[1:])
