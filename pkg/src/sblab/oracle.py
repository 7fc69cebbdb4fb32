"""Degree-truncated linear algebra used as independent ground truth.

Nothing here calls the normal-form machinery: membership and initial
exponents are read off echelon forms of explicit spanning sets
``{x^g * f_i}`` in finite-dimensional spaces of polynomials.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .errors import InputError, ResourceError
from .ideals import monomials_of_degree
from .poly import divides, order_of

__all__ = [
    "DegreeSlice", "Staircase", "degree_slice", "homog_member", "truncated_member",
    "staircase", "minimal_exponents",
]

DEFAULT_MAX_COLS = 50_000


def _max_cols():
    return int(os.environ.get("SBLAB_MAX_SLICE_COLS", DEFAULT_MAX_COLS))


def _guard(ncols):
    limit = _max_cols()
    if ncols > limit:
        raise ResourceError(f"linear system with {ncols} columns exceeds the limit {limit}")


def _local_key(e):
    return (sum(e),) + e


def _monomials_up_to(nvars, top):
    out = []
    for d in range(top + 1):
        out.extend(monomials_of_degree(nvars, d))
    out.sort(key=_local_key)
    return out


class _Echelon:
    """Rows kept with pairwise distinct leading (smallest) columns.

    Over Q rows stay integral: elimination is fraction-free and every row is
    divided by the gcd of its entries.
    """

    def __init__(self, p):
        self.p = p
        self.pivots = {}

    def _normalize(self, row):
        if self.p:
            lead = row[min(row)]
            inv = pow(lead, -1, self.p)
            return {c: v * inv % self.p for c, v in row.items()}
        g = gcd(*row.values())
        if row[min(row)] < 0:
            g = -g
        return {c: v // g for c, v in row.items()} if g != 1 else row

    def reduce(self, row):
        row = dict(row)
        p = self.p
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                return row
            a = row[c]
            if p:
                for k, v in piv.items():
                    w = (row.get(k, 0) - a * v) % p
                    if w:
                        row[k] = w
                    else:
                        row.pop(k, None)
            else:
                b = piv[c]
                d = gcd(a, b)
                mul_row, mul_piv = b // d, a // d
                out = {k: v * mul_row for k, v in row.items()}
                for k, v in piv.items():
                    w = out.get(k, 0) - mul_piv * v
                    if w:
                        out[k] = w
                    else:
                        out.pop(k, None)
                row = self._normalize(out) if out else out
        return row

    def add(self, row):
        row = self.reduce(row)
        if not row:
            return None
        row = self._normalize(row)
        c = min(row)
        self.pivots[c] = row
        return c


def _integral_row(coeffs, p):
    """Column->coefficient map scaled to integers (Q) or reduced mod p."""
    if p:
        return {c: v % p for c, v in coeffs.items() if v % p}
    den = 1
    for v in coeffs.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    return {c: int(v * den) for c, v in coeffs.items() if v}


def _row(poly_terms, shift, index, top):
    out = {}
    for e, v in poly_terms.items():
        e = tuple(a + b for a, b in zip(e, shift))
        if sum(e) <= top:
            out[index[e]] = v
    return out


@dataclass
class DegreeSlice:
    degree: int
    monomial_basis: list
    matrix: list

    def __post_init__(self):
        s = len(self.monomial_basis[0]) if self.monomial_basis else 1
        assert len(self.monomial_basis) == comb(self.degree + s - 1, s - 1)


def degree_slice(H, d, nvars):
    """Spanning rows ``x^g h`` of degree ``d`` for the homogeneous ideal ``H``."""
    basis = sorted(monomials_of_degree(nvars, d), key=_local_key)
    _guard(len(basis))
    index = {e: i for i, e in enumerate(basis)}
    rows = []
    for h in H.generators:
        if h.degree > d:
            continue
        for shift in monomials_of_degree(nvars, d - h.degree):
            rows.append(_row(h.poly.terms, shift, index, d))
    return DegreeSlice(d, basis, rows)


def homog_member(f, H):
    """Exact membership of the form ``f`` in the homogeneous ideal ``H``."""
    poly = f.poly
    if poly.is_zero():
        return True
    ring = poly.ring
    p = ring.field.characteristic
    sl = degree_slice(H, f.degree, ring.nvars)
    ech = _Echelon(p)
    for r in sl.matrix:
        if r:
            ech.add(_integral_row(r, p))
    index = {e: i for i, e in enumerate(sl.monomial_basis)}
    target = _integral_row({index[e]: v for e, v in poly.terms.items()}, p)
    return not ech.reduce(target)


def truncated_member(f, gens, D):
    """Decide ``f in (gens) + m^D`` in the local ring by linear algebra modulo m^D."""
    gens = [g for g in gens if g]
    top_gen = max((g.degree for g in gens), default=0)
    if D <= max(f.degree, 0) + top_gen:
        raise InputError(f"truncation degree {D} is inside the safety margin ({f.degree} + {top_gen})")
    if f.is_zero():
        return True
    ring = f.ring
    p = ring.field.characteristic
    cols = _monomials_up_to(ring.nvars, D - 1)
    _guard(len(cols))
    index = {e: i for i, e in enumerate(cols)}
    ech = _Echelon(p)
    for g in gens:
        for k in range(D - order_of(g)):
            for shift in monomials_of_degree(ring.nvars, k):
                r = _row(g.terms, shift, index, D - 1)
                if r:
                    ech.add(_integral_row(r, p))
    target = _integral_row(_row(f.terms, (0,) * ring.nvars, index, D - 1), p)
    return not ech.reduce(target)


def minimal_exponents(exps):
    """Minimal elements under componentwise divisibility."""
    exps = sorted(set(exps), key=_local_key)
    out = []
    for e in exps:
        if not any(divides(m, e) for m in out):
            out.append(e)
    return out


@dataclass(frozen=True)
class Staircase:
    exponents: frozenset
    provisional: frozenset
    degree_bound: int
    margin: int


def staircase(gens, D, margin=None):
    """Minimal initial exponents of the ideal, found by echelonizing
    ``{x^g * f_i}`` modulo m^(D+1) with columns in increasing local degree order.

    Exponents of degree at most ``D - margin`` are certified; minimal
    exponents above that are returned separately as provisional.
    """
    if D < 1:
        raise InputError("degree bound must be at least 1")
    gens = [g for g in gens if g]
    if margin is None:
        margin = max((g.degree for g in gens), default=0) + 1
    if not gens:
        return Staircase(frozenset(), frozenset(), D, margin)
    ring = gens[0].ring
    p = ring.field.characteristic
    cols = _monomials_up_to(ring.nvars, D)
    _guard(len(cols))
    index = {e: i for i, e in enumerate(cols)}
    ech = _Echelon(p)
    for g in gens:
        for k in range(D - order_of(g) + 1):
            for shift in monomials_of_degree(ring.nvars, k):
                r = _row(g.terms, shift, index, D)
                if r:
                    ech.add(_integral_row(r, p))
    pivots = [cols[c] for c in ech.pivots]
    minimal = minimal_exponents(pivots)
    certified = frozenset(e for e in minimal if sum(e) <= D - margin)
    provisional = frozenset(e for e in minimal if sum(e) > D - margin)
    return Staircase(certified, provisional, D, margin)
