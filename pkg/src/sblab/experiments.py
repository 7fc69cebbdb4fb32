"""Experiments on ideal powers: order growth of minimal standard bases, uniform
Artin-Rees exponents, the Artin-Rees/standard-basis equivalence check, and the
worked tangent-cone example.  Every experiment returns a report dataclass that
``emit_report`` serializes deterministically."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .basis import HomogeneousIdeal, minimalize, tangent_cone
from .errors import InputError, ResourceError
from .ideals import (
    IdealHandle, Setting, ideal_contains, ideal_equal, ideal_power, ideal_product,
    ideal_sum, intersect, m_power, member,
)
from .oracle import homog_member
from .poly import QQ, HomogeneousForm, Ring

__all__ = [
    "GrowthRow", "GrowthReport", "ArtinReesCell", "ArtinReesReport", "Prop4Report",
    "WorkedExampleRow", "WorkedExampleReport", "growth_experiment", "artin_rees_experiment",
    "prop4_experiment", "paper_example_check", "emit_report", "render_report",
    "STRATEGY",
]

STRATEGY = {
    "normal_form": "Mora (minimal ecart, ties by position, remainder insertion)",
    "pair_selection": "normal: increasing (|lcm|, lcm)",
    "criteria": "product + chain",
    "truncation": "terms of degree >= N dropped once m^N is known to lie in the ideal",
    "fallback": "if normal-form coefficients exceed SBLAB_MAX_COEFF_BITS, recompute via "
                "homogenization and a global Buchberger basis",
}


def _workers():
    return max(1, int(os.environ.get("SBLAB_WORKERS", "1")))


def _map(fn, jobs, workers=None):
    workers = workers or _workers()
    if workers == 1 or len(jobs) < 2:
        return [fn(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map() preserves submission order, so merged results are deterministic
        return list(pool.map(fn, *zip(*jobs)))


class _Report:
    csv_header: tuple = ()

    def to_dict(self):
        return dataclasses.asdict(self)

    def csv_rows(self):
        return []


# -- growth -------------------------------------------------------------------


@dataclass
class GrowthRow:
    n: int
    p_n: int
    ord_list: list
    max_ord: int
    max_exp_degree: int
    leading_exps: list


@dataclass
class GrowthReport(_Report):
    rows: list
    lambda_hat: int | None
    slope_estimate: Fraction | None
    config: dict
    truncated: bool = False
    truncation_reason: str | None = None

    csv_header = ("n", "p_n", "max_ord", "ord_list")

    def csv_rows(self):
        return [(r.n, r.p_n, r.max_ord, ";".join(map(str, r.ord_list))) for r in self.rows]

    def witness_holds(self):
        return all(r.max_ord <= self.lambda_hat * r.n for r in self.rows)


def _least_squares_slope(xs, ys):
    if len(xs) < 2:
        return None
    mx = Fraction(sum(xs), len(xs))
    my = Fraction(sum(ys), len(ys))
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


def _growth_row(ring, I_gens, J_gens, n):
    I = IdealHandle(ring, I_gens)
    ideal = ideal_power(I, n)
    if J_gens:
        ideal = ideal_sum(IdealHandle(ring, J_gens), ideal)
    basis = minimalize(ideal.basis())
    ords = sorted(basis.orders)
    exps = [list(e) for e in basis.leading_exps]
    return GrowthRow(
        n=n,
        p_n=len(basis),
        ord_list=ords,
        max_ord=max(ords),
        max_exp_degree=max(sum(e) for e in basis.leading_exps),
        leading_exps=exps,
    )


def growth_experiment(spec, n_max, *, workers=None, time_budget=None):
    """Minimal standard bases of J + I^n for n = 1..n_max.

    The local order refines total degree and its initial term is the lowest
    one, so ``ord(f_i) == |exp(f_i)|``: ``max_ord`` is the graded reading and
    ``max_exp_degree`` the exponent reading of the same numbers.
    """
    if n_max < 1:
        raise InputError("n_max must be at least 1")
    config = {
        "order": "local degree-lex (initial term minimal)",
        "strategy": dict(STRATEGY),
        "n_max": n_max,
        "ideal": "J + I^n",
        "readings": {
            "max_ord": "largest ord(f_i) over a minimal standard basis",
            "max_exp_degree": "largest |exp(f_i)|; equal to max_ord for this order",
        },
    }
    rows, truncated, reason = [], False, None
    start = time.monotonic()
    jobs = [(spec.ring, spec.I, spec.J, n) for n in range(1, n_max + 1)]
    if (workers or _workers()) > 1 and time_budget is None:
        try:
            rows = _map(_growth_row, jobs, workers)
        except ResourceError as exc:
            truncated, reason = True, str(exc)
    else:
        for job in jobs:
            if time_budget is not None and time.monotonic() - start > time_budget:
                truncated, reason = True, f"time budget of {time_budget}s exhausted before n={job[-1]}"
                break
            try:
                rows.append(_growth_row(*job))
            except ResourceError as exc:
                truncated, reason = True, f"n={job[-1]}: {exc}"
                break
    lam = max((math.ceil(r.max_ord / r.n) for r in rows), default=None)
    slope = _least_squares_slope([r.n for r in rows], [r.max_ord for r in rows])
    return GrowthReport(rows, lam, slope, config, truncated, reason)


# -- Artin-Rees ---------------------------------------------------------------


@dataclass
class ArtinReesCell:
    lam: int
    m: int
    n: int
    holds: bool
    rhs_in_lhs: bool


@dataclass
class ArtinReesReport(_Report):
    lambda_min: int | None
    not_found_within: int | None
    cells: list
    a_ideal: list
    config: dict
    truncated: bool = False
    truncation_reason: str | None = None

    csv_header = ("lambda", "m", "n", "holds", "rhs_in_lhs")

    def csv_rows(self):
        return [(c.lam, c.m, c.n, int(c.holds), int(c.rhs_in_lhs)) for c in self.cells]

    def grid(self, lam):
        return [c for c in self.cells if c.lam == lam]

    def cell(self, lam, m, n):
        for c in self.cells:
            if (c.lam, c.m, c.n) == (lam, m, n):
                return c
        return None


class _ArtinReesContext:
    """Caches (J + I^m) cap a^k and the powers a^k across grid cells."""

    def __init__(self, spec):
        self.ring = spec.ring
        self.I = IdealHandle(spec.ring, spec.I)
        self.J = IdealHandle(spec.ring, spec.J)
        self.a = IdealHandle(spec.ring, spec.a_generators())
        self._base, self._apow, self._cap = {}, {}, {}

    def base(self, m):
        if m not in self._base:
            ideal = ideal_power(self.I, m)
            if not self.J.is_zero():
                ideal = ideal_sum(self.J, ideal)
            self._base[m] = ideal
        return self._base[m]

    def apow(self, k):
        if k not in self._apow:
            self._apow[k] = ideal_power(self.a, k)
        return self._apow[k]

    def cap(self, m, k):
        if (m, k) not in self._cap:
            self._cap[m, k] = intersect(self.base(m), self.apow(k))
        return self._cap[m, k]

    def cell(self, lam, m, n):
        lhs = self.cap(m, n)
        rhs = self.cap(m, lam * m)
        if n > lam * m:
            rhs = ideal_product(rhs, self.apow(n - lam * m))
        rhs_in_lhs = ideal_contains(lhs, rhs)
        holds = rhs_in_lhs and ideal_contains(rhs, lhs)
        return ArtinReesCell(lam, m, n, holds, rhs_in_lhs)


def artin_rees_experiment(spec, m_max, n_pad, lambda_bound, *, stop_at_first=True):
    """Least lam with (J+I^m) cap a^n == ((J+I^m) cap a^(lam m)) a^(n - lam m)
    on every cell 1 <= m <= m_max, lam m <= n <= lam m + n_pad."""
    if m_max < 1 or lambda_bound < 1 or n_pad < 0:
        raise InputError("need m_max >= 1, lambda_bound >= 1, n_pad >= 0")
    ctx = _ArtinReesContext(spec)
    cells, lam_min = [], None
    truncated, reason = False, None
    for lam in range(1, lambda_bound + 1):
        try:
            grid = [
                ctx.cell(lam, m, n)
                for m in range(1, m_max + 1)
                for n in range(lam * m, lam * m + n_pad + 1)
            ]
        except ResourceError as exc:
            truncated, reason = True, f"lambda={lam}: {exc}"
            break
        cells.extend(grid)
        if lam_min is None and all(c.holds for c in grid):
            lam_min = lam
            if stop_at_first:
                break
    config = {
        "m_max": m_max,
        "n_pad": n_pad,
        "lambda_bound": lambda_bound,
        "stop_at_first": stop_at_first,
        "ideal": "J + I^m",
        "strategy": dict(STRATEGY),
        "intersection": "elimination of t, t-degree first then local order",
    }
    return ArtinReesReport(
        lambda_min=lam_min,
        not_found_within=None if lam_min is not None else lambda_bound,
        cells=cells,
        a_ideal=[str(g) for g in ctx.a.generators],
        config=config,
        truncated=truncated,
        truncation_reason=reason,
    )


# -- equivalence of the Artin-Rees identity with basis conditions -----------


@dataclass
class Prop4Report(_Report):
    l: int
    r_of_l: int
    lhs_holds: list
    rhs_holds: bool
    consistent: bool
    leading_exps: list
    orders: list
    decisive_m: int
    covers_decisive_range: bool
    failed_conditions: list = field(default_factory=list)

    csv_header = ("m", "lhs_holds")

    def csv_rows(self):
        return [(m, int(v)) for m, v in enumerate(self.lhs_holds)]


def prop4_experiment(spec, l, m_max):
    """Compare ``I cap m^(m+l) == (I cap m^l) m^m`` for m = 0..m_max with the
    conditions r(l) >= 1 and ``f_j in sum_{i <= r(l)} m^(|a_j|-|a_i|) f_i`` for
    j > r(l), where f_1..f_p is the minimal standard basis sorted by |a_i|
    and r(l) counts the elements with |a_i| <= l.

    The identity holds for every m as soon as it holds for
    m <= max|a_j| - l, reported as ``decisive_m``.
    """
    if l < 1:
        raise InputError("l must be at least 1")
    ring = spec.ring
    ideal = IdealHandle(ring, list(spec.J) + list(spec.I))
    basis = minimalize(ideal.basis())
    degs = [sum(e) for e in basis.leading_exps]
    r = sum(1 for d in degs if d <= l)

    low = intersect(ideal, m_power(ring, l))
    lhs = []
    for m in range(m_max + 1):
        left = intersect(ideal, m_power(ring, m + l))
        right = low if m == 0 else ideal_product(low, m_power(ring, m))
        lhs.append(ideal_equal(left, right))

    failed = []
    if r >= 1:
        for j in range(r, len(basis)):
            gens = []
            for i in range(r):
                gens += [basis[i] * g for g in m_power(ring, degs[j] - degs[i]).generators]
            if not member(basis[j], IdealHandle(ring, gens)):
                failed.append(j + 1)
    rhs = r >= 1 and not failed
    decisive = max(max(degs) - l, 0)
    return Prop4Report(
        l=l,
        r_of_l=r,
        lhs_holds=lhs,
        rhs_holds=rhs,
        consistent=all(lhs) == rhs,
        leading_exps=[list(e) for e in basis.leading_exps],
        orders=list(basis.orders),
        decisive_m=decisive,
        covers_decisive_range=m_max >= decisive,
        failed_conditions=failed,
    )


# -- worked example -----------------------------------------------------------


@dataclass
class WorkedExampleRow:
    n: int
    cone_generators: list
    formula_generators: list
    cone_equal: bool
    power_in_cone: bool | None
    power_in_cone_power: bool | None
    oracle_agrees: bool | None

    @property
    def passed(self):
        ok = self.cone_equal
        if self.power_in_cone is not None:
            ok = ok and self.power_in_cone and not self.power_in_cone_power and self.oracle_agrees
        return ok


@dataclass
class WorkedExampleReport(_Report):
    rows: list
    passed: bool
    failing: list
    config: dict

    csv_header = ("n", "cone_equal", "power_in_cone", "power_in_cone_power")

    def csv_rows(self):
        def cell(v):
            return "" if v is None else int(v)

        return [
            (r.n, int(r.cone_equal), cell(r.power_in_cone), cell(r.power_in_cone_power))
            for r in self.rows
        ]


def example_ring():
    return Ring(("x", "y"), QQ)


def example_generators(ring):
    x, y = ring.gens
    return [x**2, y**3 - x * y]


def example_cone_formula(ring, n):
    """Generators (xy, x^2)^n together with x^i y^(4n-3i+1), 0 <= i < n."""
    x, y = ring.gens
    gens = ideal_power(IdealHandle(ring, [x * y, x**2], Setting.HOMOGENEOUS), n).generators
    gens = list(gens) + [x**i * y ** (4 * n - 3 * i + 1) for i in range(n)]
    return IdealHandle(ring, gens, Setting.HOMOGENEOUS)


def paper_example_check(n_max):
    """Check the tangent cones of powers of I = (x^2, y^3 - xy) against the
    closed formula and the separation y^(4n+1) in (I^n)* but not in (I*)^n."""
    if n_max < 2:
        raise InputError("n_max must be at least 2")
    ring = example_ring()
    I = IdealHandle(ring, example_generators(ring))
    y = ring.gens[1]
    cone_one = IdealHandle.from_homogeneous(tangent_cone(I.generators), ring)
    rows = []
    for n in range(1, n_max + 1):
        cone_hi = tangent_cone(ideal_power(I, n).generators)
        cone = IdealHandle.from_homogeneous(cone_hi, ring)
        formula = example_cone_formula(ring, n)
        row = WorkedExampleRow(
            n=n,
            cone_generators=[str(g) for g in cone.generators],
            formula_generators=[str(g) for g in formula.generators],
            cone_equal=ideal_equal(cone, formula),
            power_in_cone=None,
            power_in_cone_power=None,
            oracle_agrees=None,
        )
        if n >= 2:
            probe = y ** (4 * n + 1)
            power = ideal_power(cone_one, n)
            row.power_in_cone = member(probe, cone)
            row.power_in_cone_power = member(probe, power)
            form = HomogeneousForm(probe, 4 * n + 1)
            hi_power = HomogeneousIdeal.from_polys(power.generators)
            row.oracle_agrees = (
                homog_member(form, cone_hi) == row.power_in_cone
                and homog_member(form, hi_power) == row.power_in_cone_power
            )
        rows.append(row)
    failing = [r.n for r in rows if not r.passed]
    config = {"ideal": "I = (x^2, y^3 - x*y) over Q", "n_max": n_max}
    return WorkedExampleReport(rows, not failing, failing, config)


# -- serialization ------------------------------------------------------------


def _plain(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def render_report(report, fmt):
    if fmt == "json":
        payload = {"report": type(report).__name__, **_plain(report.to_dict())}
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(report.csv_header)
        writer.writerows(report.csv_rows())
        return buf.getvalue()
    raise InputError(f"unknown report format {fmt!r}")


def emit_report(report, fmt, path):
    text = render_report(report, fmt)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path
