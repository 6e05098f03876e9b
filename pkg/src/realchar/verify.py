"""Verification reports: each check reruns a claim at desk scale and records
rows of (inputs, observed, predicted, deviation) together with the thresholds
that decide ``passed``.  ``recompute_pass`` rebuilds the verdict from the rows
and thresholds alone.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import charsum, gauss, transition
from .arith import divisor_sigma, factorize, multiplicative_values
from .charsum import SumJob, double_sum, is_twice_square
from .transition import DEFAULT, EvalConfig

TWO_OVER_PI2 = 2 / math.pi**2
FOUR_OVER_PI2 = 4 / math.pi**2

DEFAULT_DIAGONAL = (10**3, 10**4, 3 * 10**4)
SLOW_DIAGONAL = DEFAULT_DIAGONAL + (10**5,)


@dataclass
class Row:
    inputs: dict
    observed: float
    predicted: float
    deviation: float


@dataclass
class Report:
    name: str
    rows: list[Row]
    fitted_constants: dict[str, float]
    thresholds: dict[str, float]
    passed: bool
    runtime_seconds: float = 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        return cls(
            name=d["name"],
            rows=[Row(**r) for r in d["rows"]],
            fitted_constants=dict(d["fitted_constants"]),
            thresholds=dict(d["thresholds"]),
            passed=bool(d["pass"]),
            runtime_seconds=float(d["runtime_seconds"]),
        )

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))

    def same_result(self, other: Report) -> bool:
        """Equality ignoring wall-clock runtime."""
        a, b = self.to_dict(), other.to_dict()
        a.pop("runtime_seconds")
        b.pop("runtime_seconds")
        return a == b


# ---------------------------------------------------------------------------
# pass rules, keyed by report name; each sees only rows and thresholds


def _rule_diagonal(rows, th):
    in_band = all(
        th["band_low"] <= r.observed <= th["band_high"] for r in rows if r.inputs["x"] >= th["band_min_x"]
    )
    return in_band and abs(rows[-1].deviation) <= abs(rows[0].deviation)


def _rule_scored_relative(rows, th):
    return all(abs(r.deviation) <= th["rel_tol"] for r in rows if r.inputs.get("scored", True))


def _rule_band(rows, th):
    return all(th["band_low"] <= r.observed <= th["band_high"] for r in rows)


def _rule_partial_bound(rows, th):
    return max(r.deviation for r in rows) <= th["c_max"]


def _gauss_row_tol(r: Row, th) -> float:
    if r.inputs["part"] == "prime_power":
        return th["prime_power_tol_base"] * (1 + math.sqrt(r.inputs["n"]))
    return th["table_tol_per_q"] * r.inputs["q"]


def _rule_gauss(rows, th):
    return all(r.deviation <= _gauss_row_tol(r, th) for r in rows)


def _rule_meanvalues(rows, th):
    ok = True
    for r in rows:
        kind = r.inputs["kind"]
        if kind == "phi_square":
            ok &= abs(r.deviation) <= th["c1_max"]
        elif kind == "gk2_sqrt":
            ok &= abs(r.deviation) <= th["c2_max"]
        else:
            ok &= abs(r.deviation) <= th["twisted_rel_tol"]
    return bool(ok)


def _rule_slope_classifier(rows, th):
    ok = True
    for r in rows:
        if r.inputs["kind"] == "quotient":
            ok &= r.deviation <= th["slope_tol"]
        else:
            ok &= r.deviation == 0
    return bool(ok)


RULES = {
    "diagonal": _rule_diagonal,
    "regimes": _rule_scored_relative,
    "twisted_diagonal": _rule_band,
    "partial_bound": _rule_partial_bound,
    "gauss": _rule_gauss,
    "meanvalues": _rule_meanvalues,
    "slope_classifier": _rule_slope_classifier,
}


def recompute_pass(report: Report) -> bool:
    return RULES[report.name](report.rows, report.thresholds)


def _finish(name, rows, fitted, thresholds, started) -> Report:
    if not rows:
        raise ValueError(f"{name}: no rows")
    return Report(
        name=name,
        rows=rows,
        fitted_constants=fitted,
        thresholds=thresholds,
        passed=RULES[name](rows, thresholds),
        runtime_seconds=time.perf_counter() - started,
    )


# ---------------------------------------------------------------------------
# the checks


def verify_theorem1(x_values, cfg: EvalConfig = DEFAULT, threads: int = 1) -> Report:
    """Diagonal ratios S(X,X) pi^2 / (2 C(1) X^(3/2)) should sit near 1."""
    started = time.perf_counter()
    xs = [int(x) for x in x_values]
    if not xs:
        raise ValueError("empty grid")
    if xs != sorted(xs) or xs[-1] > 10**5:
        raise ValueError("x_values must be ascending and at most 1e5")
    c1 = transition.c_value(1.0, cfg)
    rows = []
    for x in xs:
        s = double_sum(SumJob(x, x, thread_count=threads)).value
        ratio = s / (TWO_OVER_PI2 * c1 * x**1.5)
        rows.append(Row({"x": x, "s": s, "c_alpha": c1}, ratio, 1.0, ratio - 1))
    fitted = {"c_1": c1, "max_abs_deviation": max(abs(r.deviation) for r in rows)}
    thresholds = {"band_low": 0.5, "band_high": 1.5, "band_min_x": 10**4}
    return _finish("diagonal", rows, fitted, thresholds, started)


def verify_regimes(cfg: EvalConfig = DEFAULT, threads: int = 1) -> Report:
    """The one-sided asymptotics (2/pi^2) X Y^(1/2) and (2/pi^2) X^(1/2) Y."""
    started = time.perf_counter()
    cells = [
        (10**6, 10**3, "large_x", True),
        (10**3, 10**6, "large_y", True),
        (10**3, 10**3, "transition", False),
        (10**4, 1, "degenerate", False),
    ]
    rows = []
    for x, y, regime, scored in cells:
        s = double_sum(SumJob(x, y, thread_count=threads)).value
        if regime == "large_y":
            predicted = TWO_OVER_PI2 * math.sqrt(x) * y
        else:
            predicted = TWO_OVER_PI2 * x * math.sqrt(y)
        rows.append(Row({"x": x, "y": y, "regime": regime, "scored": scored}, float(s), predicted, s / predicted - 1))
    fitted = {"max_scored_deviation": max(abs(r.deviation) for r in rows if r.inputs["scored"])}
    return _finish("regimes", rows, fitted, {"rel_tol": 0.05}, started)


def verify_theorem2(ells=(1, 3, 15), x_limit: int = 10**4, cfg: EvalConfig = DEFAULT, threads: int = 1) -> Report:
    """S_ell(X,X) sigma(ell) pi^2 / (2 C(ell) X^(3/2)) near 1."""
    started = time.perf_counter()
    if x_limit > 3 * 10**4:
        raise ValueError("x_limit is capped at 3e4")
    rows = []
    for ell in ells:
        s = double_sum(SumJob(x_limit, x_limit, ell, thread_count=threads)).value
        sigma = divisor_sigma(ell)
        c = transition.c_value(float(ell), cfg)
        ratio = s * sigma / (TWO_OVER_PI2 * c * x_limit**1.5)
        rows.append(Row({"ell": ell, "x": x_limit, "s": s, "sigma": sigma, "c_ell": c}, ratio, 1.0, ratio - 1))
    fitted = {"max_abs_deviation": max(abs(r.deviation) for r in rows)}
    return _finish("twisted_diagonal", rows, fitted, {"band_low": 0.5, "band_high": 1.5}, started)


def verify_lemma2(ks=(1, 3, 5, 6, 7, 10), xs=(10**3, 10**4, 10**5)) -> Report:
    """Fit c in |sum G_k(n)(2/n)/sqrt n| <= c |k|^(1/4) log(2|k|) d(k^2) sqrt(x)."""
    started = time.perf_counter()
    for k in ks:
        if k == 0 or is_twice_square(k):
            raise ValueError(f"k={k} is twice a square")
    xs = sorted(int(x) for x in xs)
    rows = []
    for k in ks:
        # one pass to the largest x; prefix sums are the left-to-right partial sums
        prefix = np.cumsum(charsum.lemma2_terms(k, xs[-1]))
        d = multiplicative_values(k * k).tau
        for x in xs:
            partial = float(prefix[(x + 1) // 2 - 1])
            scale = abs(k) ** 0.25 * math.log(2 * abs(k)) * d * math.sqrt(x)
            rows.append(Row({"k": k, "x": x, "partial": partial}, abs(partial), scale, abs(partial) / scale))
    fitted = {"c": max(r.deviation for r in rows)}
    return _finish("partial_bound", rows, fitted, {"c_max": 5.0}, started)


def verify_gauss(oracle_n_max: int = 2000, k_max: int = 50, q_max: int = 50) -> Report:
    """Prime-power evaluation of G_k(n) against tau inversion; closed-form G(p/q) against direct sums."""
    started = time.perf_counter()
    if oracle_n_max > 10**4:
        raise ValueError("oracle_n_max is capped at 1e4")
    rows = []
    ks = list(range(-k_max, k_max + 1))
    for n in range(1, oracle_n_max + 1, 2):
        oracle = gauss.gauss_g_oracle_many(ks, n)
        fac = factorize(n)
        exact = np.array([float(gauss.gauss_g(k, n, fac)) for k in ks])
        diffs = np.abs(exact - oracle)
        worst = int(np.argmax(diffs))
        rows.append(Row({"part": "prime_power", "n": n, "worst_k": ks[worst], "k_max": k_max}, float(diffs[worst]), 0.0, float(diffs[worst])))
    disagreements = 0
    for q in range(1, q_max + 1):
        root = 2 * math.sqrt(q)
        for p in range(1, 2 * q):
            if math.gcd(p, q) != 1:
                continue
            direct = complex(gauss.gauss_quadratic_direct(p, q))
            entry = gauss.gauss_quadratic_closed(p, q)
            disagreements += not entry.agrees_with_table
            gap = abs(direct - root * entry.normalized.complex)
            rows.append(Row(
                {"part": "table", "p": p, "q": q, "closed": entry.normalized.value, "table": entry.table_value.value},
                gap, 0.0, gap,
            ))
            both_odd = p % 2 == 1 and q % 2 == 1
            predicted = 0.0 if both_odd else root
            rows.append(Row({"part": "vanishing", "p": p, "q": q, "both_odd": both_odd}, abs(direct), predicted, abs(abs(direct) - predicted)))
    thresholds = {"prime_power_tol_base": 1e-6, "table_tol_per_q": 1e-8}
    mismatches = sum(r.deviation > _gauss_row_tol(r, thresholds) for r in rows)
    fitted = {"mismatches": float(mismatches), "literal_table_disagreements": float(disagreements)}
    return _finish("gauss", rows, fitted, thresholds, started)


def verify_meanvalues(x_limit: int = 10**5, phi_x_values=(10**4, 10**5, 10**6)) -> Report:
    """The mean values of phi(n)/n over odd squares, G_{k^2}(n)/sqrt(n), and G_{k^2}(ell n)."""
    started = time.perf_counter()
    rows = []
    for x in phi_x_values:
        v = charsum.phi_square_mean(x)
        pred = FOUR_OVER_PI2 * math.sqrt(x)
        rows.append(Row({"kind": "phi_square", "x": x}, v, pred, (v - pred) / math.log(x)))
    grid = sorted({10**3, 10**4, x_limit})
    for k in (1, 2, 3):
        prefix = np.cumsum(charsum.gk2_mean_sqrt_terms(k, x_limit))
        for x in grid:
            v = float(prefix[(x + 1) // 2 - 1])
            pred = FOUR_OVER_PI2 * x
            rows.append(Row({"kind": "gk2_sqrt", "k": k, "x": x}, v, pred, (v - pred) / math.log(x)))
    for k, ell in ((1, 3), (1, 15), (2, 3), (0, 3), (0, 15)):
        v = charsum.gk2_mean_twisted(k, ell, x_limit)
        const = (8 if k else 4) / (3 * math.pi**2)
        pred = const * ell**1.5 / divisor_sigma(ell) * x_limit**1.5
        rows.append(Row({"kind": "twisted", "k": k, "ell": ell, "x": x_limit}, v, pred, v / pred - 1))

    def worst(kind):
        return max(abs(r.deviation) for r in rows if r.inputs["kind"] == kind)

    fitted = {"c1": worst("phi_square"), "c2": worst("gk2_sqrt"), "twisted_max_rel": worst("twisted")}
    thresholds = {"c1_max": 10.0, "c2_max": 10.0, "twisted_rel_tol": 0.1}
    return _finish("meanvalues", rows, fitted, thresholds, started)


ODD_CENTERS = (Fraction(1), Fraction(1, 3), Fraction(3, 5))


def verify_gerver_and_classifier(q_max: int = 30, h: Fraction = Fraction(1, 10**4)) -> Report:
    """Slope -1 of f at odd/odd rationals, the parity rule, and C' at 1 and 2."""
    started = time.perf_counter()
    if q_max > 30:
        raise ValueError("q_max is capped at 30")
    h = Fraction(h)
    rows = []
    for c in ODD_CENTERS:
        fc = transition.riemann_f(c)
        for step in (h, -h):
            quotient = (transition.riemann_f(c + step) - fc) / float(step)
            rows.append(Row({"kind": "quotient", "center": str(c), "h": float(step)}, quotient, -1.0, abs(quotient + 1)))
    for q in range(1, q_max + 1):
        for p in range(1, 2 * q):
            if math.gcd(p, q) != 1:
                continue
            verdict = transition.classify_f(Fraction(p, q))
            observed = float(verdict.kind == "differentiable")
            predicted = float(p % 2 == 1 and q % 2 == 1)
            rows.append(Row({"kind": "classifier", "p": p, "q": q, "verdict": verdict.kind}, observed, predicted, abs(observed - predicted)))
    for alpha, expected in ((Fraction(2), 1.0), (Fraction(1), 0.0)):
        verdict = transition.classify_c_prime(alpha)
        observed = float(verdict.kind == "differentiable")
        rows.append(Row({"kind": "c_prime", "alpha": str(alpha), "verdict": verdict.kind}, observed, expected, abs(observed - expected)))
    quotients = [r for r in rows if r.inputs["kind"] == "quotient"]
    fitted = {"max_slope_deviation": max(r.deviation for r in quotients)}
    return _finish("slope_classifier", rows, fitted, {"slope_tol": 0.05}, started)


CHECKS = {
    "diagonal": lambda cfg, slow, threads: verify_theorem1(SLOW_DIAGONAL if slow else DEFAULT_DIAGONAL, cfg, threads),
    "regimes": lambda cfg, slow, threads: verify_regimes(cfg, threads),
    "twisted_diagonal": lambda cfg, slow, threads: verify_theorem2(cfg=cfg, threads=threads),
    "partial_bound": lambda cfg, slow, threads: verify_lemma2(),
    "gauss": lambda cfg, slow, threads: verify_gauss(),
    "meanvalues": lambda cfg, slow, threads: verify_meanvalues(),
    "slope": lambda cfg, slow, threads: verify_gerver_and_classifier(),
}


def run_check(name: str, cfg: EvalConfig = DEFAULT, slow: bool = False, threads: int = 1) -> Report:
    try:
        check = CHECKS[name]
    except KeyError:
        raise ValueError(f"unknown check {name!r}; choose from {sorted(CHECKS)}") from None
    return check(cfg, slow, threads)
