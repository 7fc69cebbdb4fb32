"""Ideal arithmetic in the local ring (local degree order) or among homogeneous ideals
(graded lex order)."""

from __future__ import annotations

import enum
from itertools import combinations_with_replacement

from .basis import _make_basis, standard_basis, weak_normal_form
from .errors import CoefficientGrowthError, ContextError, InputError
from .poly import BlockOrder

__all__ = [
    "Setting", "IdealHandle", "ideal_sum", "ideal_product", "ideal_power", "m_power",
    "monomials_of_degree", "intersect", "member", "ideal_contains", "ideal_equal",
]


class Setting(enum.Enum):
    LOCAL = "local"
    HOMOGENEOUS = "homogeneous"


class IdealHandle:
    """Generator list plus a lazily computed standard basis."""

    def __init__(self, ring, generators, setting=Setting.LOCAL, basis=None, corner=None):
        self.ring = ring
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ContextError(f"generator {g} is not in {ring}")
            if g and g not in gens:
                gens.append(g)
        self.generators = gens
        self.setting = setting
        if setting is Setting.HOMOGENEOUS and not all(g.is_homogeneous() for g in gens):
            raise InputError("homogeneous setting needs homogeneous generators")
        self._basis = basis
        # a degree N known to satisfy m^N inside the ideal (local setting only)
        self.corner_hint = corner if setting is Setting.LOCAL else None

    @classmethod
    def from_homogeneous(cls, ideal, ring):
        return cls(ring, ideal.polys, Setting.HOMOGENEOUS)

    @property
    def order(self):
        if self.setting is Setting.LOCAL:
            return self.ring.local_order()
        return self.ring.graded_order()

    def basis(self):
        if self._basis is None:
            self._basis = standard_basis(self.generators, self.order, bound=self.corner_hint)
        return self._basis

    def corner(self):
        """Some N with m^N contained in the ideal, or None if none is known.

        Computes the standard basis when no hint was supplied."""
        if self.setting is not Setting.LOCAL or self.is_zero():
            return None
        if self.corner_hint is not None:
            return self.corner_hint
        return self.basis().stats.get("corner")

    def is_zero(self):
        return not self.generators

    def __contains__(self, f):
        return member(f, self)

    def __repr__(self):
        gens = ", ".join(map(str, self.generators))
        return f"IdealHandle(({gens}), {self.setting.value})"


def _same(a, b):
    if a.ring != b.ring:
        raise ContextError("ideals live in different rings")
    if a.setting is not b.setting:
        raise ContextError("ideals live in different settings")


def _hints(*ideals):
    return [i.corner_hint if i.corner_hint is not None else (
        i._basis.stats.get("corner") if i._basis is not None else None) for i in ideals]


def ideal_sum(a, b):
    _same(a, b)
    known = [c for c in _hints(a, b) if c is not None]
    return IdealHandle(a.ring, a.generators + b.generators, a.setting, corner=min(known, default=None))


def ideal_product(a, b):
    _same(a, b)
    ca, cb = _hints(a, b)
    corner = ca + cb if ca is not None and cb is not None else None
    return IdealHandle(a.ring, [f * g for f in a.generators for g in b.generators], a.setting, corner=corner)


def ideal_power(a, n):
    if n < 1:
        raise InputError("ideal powers start at n = 1 (I^0 is the unit ideal)")
    gens = []
    for combo in combinations_with_replacement(a.generators, n):
        p = combo[0]
        for g in combo[1:]:
            p = p * g
        gens.append(p)
    c = a.corner()
    return IdealHandle(a.ring, gens, a.setting, corner=None if c is None else n * c)


def monomials_of_degree(nvars, d):
    """All exponents of total degree ``d`` in ``nvars`` variables."""
    if nvars == 1:
        return [(d,)]
    return [(k,) + rest for k in range(d, -1, -1) for rest in monomials_of_degree(nvars - 1, d - k)]


def m_power(ring, n, setting=Setting.LOCAL):
    """The n-th power of the maximal ideal, generated by all degree-n monomials."""
    gens = [ring.monomial(e) for e in monomials_of_degree(ring.nvars, n)]
    return IdealHandle(ring, gens, setting, corner=n)


def intersect(a, b):
    """Intersection by elimination of an auxiliary variable ``t``.

    A standard basis of ``t*a + (1-t)*b`` is computed for the order comparing
    t-degrees first (globally) and the ambient order after that; the elements
    free of ``t`` generate the intersection and already form a standard basis
    of it for the ambient order.
    """
    _same(a, b)
    ring = a.ring
    if a.is_zero() or b.is_zero():
        return IdealHandle(ring, [], a.setting)
    big = ring.extend("t")
    t = big.gen(0)
    one_minus_t = big.one() - t
    gens = [t * f.embed(big) for f in a.generators]
    gens += [one_minus_t * g.embed(big) for g in b.generators]
    order = BlockOrder(a.order)
    bound = None
    if a.setting is Setting.LOCAL:
        corners = [a.corner(), b.corner()]
        if None not in corners:
            # m^N lies in both ideals, hence in the intersection
            bound = max(corners)
    elim = standard_basis(gens, order, bound=bound)
    kept = [f.drop_leading(ring) for f, e in zip(elim.elements, elim.leading_exps) if e[0] == 0]
    result = IdealHandle(ring, kept, a.setting, corner=bound)
    if len(result.generators) == len(kept):
        result._basis = _make_basis(result.generators, result.order)
        result._basis.stats.update(elim.stats)
    return result


def member(f, ideal):
    if f.ring != ideal.ring:
        raise ContextError("polynomial and ideal live in different rings")
    if f.is_zero():
        return True
    if ideal.is_zero():
        return False
    basis = ideal.basis()
    try:
        return weak_normal_form(f, basis.elements, basis.order).is_zero()
    except CoefficientGrowthError:
        # f lies in the ideal exactly when adjoining it leaves the monoid of
        # leading exponents unchanged
        bigger = standard_basis(list(basis.elements) + [f], basis.order)
        return _staircase_of(bigger) == _staircase_of(basis)


def _staircase_of(basis):
    exps = sorted(set(basis.leading_exps), key=sum)
    out = []
    for e in exps:
        if not any(all(a <= b for a, b in zip(m, e)) for m in out):
            out.append(e)
    return frozenset(out)


def ideal_contains(a, b):
    """True when ``b`` is contained in ``a``."""
    _same(a, b)
    return all(member(g, a) for g in b.generators)


def ideal_equal(a, b):
    return ideal_contains(a, b) and ideal_contains(b, a)
