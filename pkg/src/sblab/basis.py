"""Standard bases for local and global monomial orders.

Normal forms follow Mora's tangent-cone algorithm: the reducer with the
smallest ecart wins and, when the current remainder has smaller ecart than
the chosen reducer, the remainder itself joins the reducer set.  For a global
order this collapses to ordinary division.  Completion is Buchberger's
algorithm driven by that normal form.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from math import gcd, prod

from .errors import CoefficientGrowthError, InputError, ResourceError
from .poly import HomogeneousForm, HomogenizedOrder, MonomialOrder, Polynomial, divides, exp_lcm, exp_sub, leading_form, order_of

__all__ = [
    "StandardBasis", "HomogeneousIdeal", "weak_normal_form", "s_polynomial",
    "standard_basis", "minimalize", "reduce_basis", "tangent_cone", "uncertified_pairs",
]


DEFAULT_MAX_COEFF_BITS = 20_000


def _max_coeff_bits():
    return int(os.environ.get("SBLAB_MAX_COEFF_BITS", DEFAULT_MAX_COEFF_BITS))


def _height(h):
    """Bit size of the largest numerator or denominator of ``h``."""
    top = 0
    for c in h.terms.values():
        if type(c) is Fraction:
            top = max(top, c.numerator.bit_length(), c.denominator.bit_length())
        else:
            top = max(top, c.bit_length())
    return top


def _max_pairs_default():
    value = os.environ.get("SBLAB_MAX_PAIRS")
    return int(value) if value else None


@dataclass(frozen=True)
class StandardBasis:
    elements: tuple
    order: object
    leading_exps: tuple
    orders: tuple
    minimal: bool = False
    reduced: bool = False
    cutoff: int | None = None
    stats: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]


@dataclass(frozen=True)
class HomogeneousIdeal:
    generators: tuple

    @classmethod
    def from_polys(cls, polys):
        return cls(tuple(HomogeneousForm(f, f.degree) for f in polys if f))

    @property
    def polys(self):
        return [g.poly for g in self.generators]

    @property
    def degrees(self):
        return [g.degree for g in self.generators]

    def __str__(self):
        return "(" + ", ".join(map(str, self.generators)) + ")"


def _sort_key(f, order):
    e = f.lead(order)[0]
    return (order_of(f), sum(e), e)


def _make_basis(elements, order, **flags):
    elements = sorted(elements, key=lambda f: _sort_key(f, order))
    return StandardBasis(
        elements=tuple(elements),
        order=order,
        leading_exps=tuple(f.lead(order)[0] for f in elements),
        orders=tuple(order_of(f) for f in elements),
        **flags,
    )


def _shifted(exp, shift):
    return tuple(a + b for a, b in zip(exp, shift))


def corner_degree(leads):
    """Smallest D such that every monomial of degree D is divisible by one of
    ``leads``; None when some variable has no pure power among them.

    For a local degree order, leading monomials covering all of degree D
    force m^D into the ideal, so terms of degree >= D may be discarded.
    """
    leads = list(leads)
    if not leads:
        return None
    n = len(leads[0])
    pure = [None] * n
    for e in leads:
        support = [i for i, a in enumerate(e) if a]
        if len(support) == 1:
            i = support[0]
            if pure[i] is None or e[i] < pure[i]:
                pure[i] = e[i]
        elif not support:
            return 0
    if any(p is None for p in pure):
        return None
    if prod(pure) > 200_000:
        return sum(p - 1 for p in pure) + 1
    top = -1
    for e in product(*(range(p) for p in pure)):
        d = sum(e)
        if d > top and not any(divides(m, e) for m in leads):
            top = d
    return top + 1


def _cancel(h, hc, g, gc, shift, bound=None, offset=0):
    """Scalar multiple of ``h`` minus a term multiple of ``g`` that kills the
    term ``hc * x^(lead g + shift)`` of ``h``.  Terms whose degree in the
    variables from ``offset`` on reaches ``bound`` are dropped.

    Returns (result, scalar applied to h)."""
    p = h.ring.field.characteristic
    out = dict(h.terms)
    if p:
        factor = hc * pow(gc, -1, p) % p
        a = 1
    elif type(hc) is int and type(gc) is int:
        d = gcd(hc, gc)
        a, factor = gc // d, hc // d
        if a != 1:
            for e in out:
                out[e] *= a
    else:
        a, factor = 1, Fraction(hc) / Fraction(gc)
    for e, v in g.terms.items():
        e = _shifted(e, shift)
        if bound is not None and sum(e[offset:]) >= bound:
            continue
        w = out.get(e, 0) - factor * v
        if p:
            w %= p
        if w:
            out[e] = w
        else:
            out.pop(e, None)
    return type(h)(h.ring, out, True), a


def _content(h):
    """Positive rational c such that h / c has coprime integer coefficients."""
    den = 1
    for c in h.terms.values():
        if type(c) is Fraction:
            den = den * c.denominator // gcd(den, c.denominator)
    g = gcd(*(int(c * den) for c in h.terms.values()))
    return Fraction(g, den)


def _entry(g, order):
    e, c = g.lead(order)
    return (e, c, g.ecart(order), g)


def _truncate(f, bound, offset):
    if bound is None or all(sum(e[offset:]) < bound for e in f.terms):
        return f
    return type(f)(f.ring, {e: c for e, c in f.terms.items() if sum(e[offset:]) < bound}, True)


def _mora(f, reducers, order, bound=None):
    """Core normal form loop.  ``reducers`` is a list of entries and may grow."""
    rational = not f.ring.field.characteristic
    offset = order.local_offset
    if offset is None:
        bound = None
    h, scalar = _truncate(f, bound, offset), Fraction(1)
    limit = _max_coeff_bits() if rational else None
    steps = 0
    while h:
        steps += 1
        if limit is not None and steps % 64 == 0 and _height(h) > limit:
            raise CoefficientGrowthError(f"normal form coefficients exceed {limit} bits after {steps} steps")
        e, c = h.lead(order)
        best = None
        for entry in reducers:
            if divides(entry[0], e) and (best is None or entry[2] < best[2]):
                best = entry
                if best[2] == 0:
                    break
        if best is None:
            break
        if offset is not None:
            eh = h.ecart(order)
            if best[2] > eh:
                reducers.append((e, c, eh, h))
        ge, gc, _, g = best
        h, a = _cancel(h, c, g, gc, exp_sub(e, ge), bound, offset)
        scalar *= a
        if rational and h:
            cont = _content(h)
            if cont != 1:
                h = h.scale(1 / cont)
                scalar /= cont
    return h, scalar


def _auto_bound(order, leads):
    if isinstance(order, MonomialOrder) and not order.is_global:
        return corner_degree(leads)
    return None


def weak_normal_form(f, G, order, bound=None):
    """Remainder ``h`` with ``u*f = sum q_i g_i + h`` for a unit ``u``.

    ``h`` is zero or its distinguished exponent is divisible by no
    distinguished exponent of ``G``.  For a global order ``u = 1``.
    ``bound`` (a degree N with m^N inside the ideal of ``G``) lets the
    reduction drop terms of degree >= N; for the local order it is detected
    from the leading monomials of ``G`` when not given.
    """
    G = list(G)
    for g in G:
        if g.is_zero():
            raise InputError("zero polynomial in the divisor list")
        if g.ring != f.ring:
            raise InputError("divisor from another ring")
    if f.is_zero() or not G:
        return f
    reducers = [_entry(g, order) for g in G]
    if bound is None:
        bound = _auto_bound(order, [r[0] for r in reducers])
    h, scalar = _mora(f, reducers, order, bound)
    if order.is_global and scalar != 1 and h:
        h = h.scale(1 / scalar) if not f.ring.field.characteristic else h
    elif h and not f.ring.field.characteristic:
        h = h.primitive(order)
    return h


def s_polynomial(f, g, order):
    ef, cf = f.lead(order)
    eg, cg = g.lead(order)
    m = exp_lcm(ef, eg)
    field_ = f.ring.field
    left = f.mul_term(exp_sub(m, ef), field_.div(1, cf))
    right = g.mul_term(exp_sub(m, eg), field_.div(1, cg))
    return left - right


def _pair_key(leads, i, j):
    m = exp_lcm(leads[i], leads[j])
    return (sum(m), m, i, j)


def _bound_exponents(nvars, bound):
    from .ideals import monomials_of_degree

    return monomials_of_degree(nvars, bound)


def _bound_monomials(ring, offset, bound):
    """Monomials of degree ``bound`` in the variables from ``offset`` on."""
    pad = (0,) * offset
    return [ring.monomial(pad + e) for e in _bound_exponents(ring.nvars - offset, bound)]


METHODS = ("auto", "mora", "homogenized")


def standard_basis(gens, order, *, bound=None, chain_criterion=True, max_pairs=None, method="auto"):
    """Standard basis of the ideal generated by ``gens`` w.r.t. ``order``.

    Pairs are treated in increasing ``(|lcm|, lcm)`` order; the product and
    chain criteria discard pairs whose S-polynomials are known to reduce to 0.

    ``method="mora"`` completes with Mora's weak normal form.  Its remainders
    can run down long power-series tails whose coefficients explode;
    ``"auto"`` (the default) then redoes the computation with
    ``"homogenized"``: a Groebner basis of the homogenized generators for
    total degree followed by ``order``, dehomogenized.  On homogeneous input
    every reduction there is ordinary division, so no tails appear.  The
    method used is recorded in ``stats["method"]``.

    ``bound`` is a degree N, in the locally ordered variables, for which the
    caller guarantees that m^N lies in the ideal.  Terms of degree >= N are
    then discarded during Mora reduction.  For the plain local order every
    term of an S-polynomial has degree >= |lcm|, so pairs with |lcm| >= N
    vanish and the degree-N monomials only need to be appended at the end;
    for an elimination order they join the generators.  With the plain local
    order a (possibly smaller) N is also detected from the leading monomials
    as soon as they contain a pure power of every variable.
    """
    if method not in METHODS:
        raise InputError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
    if max_pairs is None:
        max_pairs = _max_pairs_default()
    gens = [g for g in gens if not g.is_zero()]
    if method != "homogenized":
        try:
            basis = _buchberger(gens, order, bound, chain_criterion, max_pairs)
            basis.stats["method"] = "mora"
            return basis
        except CoefficientGrowthError as exc:
            if method == "mora":
                raise
            reason = str(exc)
    else:
        reason = None
    basis = _homogenized_basis(gens, order, chain_criterion, max_pairs)
    basis.stats.update(method="homogenized", fallback_reason=reason)
    return basis


def _homogenize(f, ring):
    d = f.degree
    return Polynomial(ring, {(d - sum(e),) + e: c for e, c in f.terms.items()}, True)


def _homogenized_basis(gens, order, chain_criterion, max_pairs):
    if not gens:
        return _buchberger(gens, order, None, chain_criterion, max_pairs)
    ring = gens[0].ring
    big = ring.extend("h")
    hom = _buchberger([_homogenize(f, big) for f in gens], HomogenizedOrder(order), None,
                      chain_criterion, max_pairs)
    elements = []
    for g in hom.elements:
        g = g.drop_leading(ring).primitive(order)
        if g not in elements:
            elements.append(g)
    basis = _make_basis(elements, order)
    corner = None
    if isinstance(order, MonomialOrder) and not order.is_global:
        corner = corner_degree(basis.leading_exps)
    basis.stats.update({k: hom.stats[k] for k in ("treated", "skipped")},
                       size=len(elements), corner=corner)
    return basis


def _buchberger(gens, order, bound, chain_criterion, max_pairs):
    offset = order.local_offset
    plain_local = isinstance(order, MonomialOrder) and not order.is_global
    if offset is None or not gens:
        bound = None
    extra = []
    if bound is not None and not plain_local:
        extra = _bound_monomials(gens[0].ring, offset, bound)
    G, leads = [], []
    for g in [_truncate(g, bound, offset) for g in gens] + extra:
        g = g.primitive(order) if g else g
        if g and g not in G:
            G.append(g)
            leads.append(g.lead(order)[0])
    reducers = [_entry(g, order) for g in G]

    def update_bound():
        nonlocal bound
        if plain_local:
            c = corner_degree(leads)
            if c is not None and (bound is None or c < bound):
                bound = c

    update_bound()
    heap, pending = [], set()

    def add_pairs(j):
        for i in range(j):
            heapq.heappush(heap, _pair_key(leads, i, j))
            pending.add((i, j))

    for j in range(len(G)):
        add_pairs(j)
    treated = skipped = 0
    while heap:
        deg, m, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        li, lj = leads[i], leads[j]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            skipped += 1
            continue
        if plain_local and bound is not None and deg >= bound:
            skipped += 1
            continue
        if chain_criterion and any(
            k != i and k != j
            and divides(leads[k], m)
            and (min(i, k), max(i, k)) not in pending
            and (min(j, k), max(j, k)) not in pending
            for k in range(len(G))
        ):
            skipped += 1
            continue
        treated += 1
        if max_pairs is not None and treated > max_pairs:
            raise ResourceError(f"standard basis exceeded {max_pairs} S-pair reductions")
        s = s_polynomial(G[i], G[j], order)
        if s.is_zero():
            continue
        # fresh copy: intermediate remainders from one reduction must not leak into the next
        h, _ = _mora(s, list(reducers), order, bound)
        if h:
            h = h.primitive(order)
            G.append(h)
            leads.append(h.lead(order)[0])
            reducers.append(_entry(h, order))
            add_pairs(len(G) - 1)
            update_bound()
    if plain_local and bound is not None:
        ring = gens[0].ring
        for e in _bound_exponents(order.nvars, bound):
            if not any(divides(a, e) for a in leads):
                G.append(ring.monomial(e))
                leads.append(e)
    basis = _make_basis(G, order)
    basis.stats.update(treated=treated, skipped=skipped, size=len(G), corner=bound)
    return basis


def uncertified_pairs(basis):
    """Index pairs whose S-polynomial has a nonzero weak normal form (empty for a
    genuine standard basis).

    Reductions use the degree bound the basis was computed with, if any:
    the basis then contains every monomial of that degree, so discarded
    terms lie in its ideal."""
    bad = []
    els = basis.elements
    bound = basis.stats.get("corner")
    for j in range(len(els)):
        for i in range(j):
            s = s_polynomial(els[i], els[j], basis.order)
            if s and weak_normal_form(s, els, basis.order, bound):
                bad.append((i, j))
    return bad


def minimalize(basis):
    """Keep the elements whose distinguished exponents are minimal under
    componentwise divisibility (first occurrence wins on ties)."""
    kept = []
    for i, e in enumerate(basis.leading_exps):
        if not any(divides(basis.leading_exps[k], e) for k in kept):
            kept.append(i)
    elements = [basis.elements[i] for i in kept]
    return replace(
        _make_basis(elements, basis.order, minimal=True, reduced=False, cutoff=None),
        stats=dict(basis.stats),
    )


def reduce_basis(basis, cutoff=None):
    """Canonical tail-reduced basis with leading coefficients 1.

    For the local order the tails are reduced only up to total degree
    ``cutoff`` and terms above it are dropped, so the result is canonical
    modulo ``m^(cutoff+1)``.  The default cutoff is twice the largest
    element degree.  Global bases are fully reduced and never truncated.
    """
    if not basis.minimal:
        basis = minimalize(basis)
    order = basis.order
    local = not order.is_global
    if local and cutoff is None:
        cutoff = 2 * max((f.degree for f in basis.elements), default=0)
    if local and basis.orders and cutoff < max(basis.orders):
        raise InputError(f"cutoff {cutoff} lies below the basis order {max(basis.orders)}")
    reducers = [(f.lead(order)[0], f.monic(order)) for f in basis.elements]
    out = []
    for f in basis.elements:
        f = f.monic(order)
        lead = f.lead(order)[0]
        if local:
            f = f.truncate(cutoff)
        while True:
            best = None
            for e in f.terms:
                if e == lead:
                    continue
                if best is not None and order.lead_key(e) <= order.lead_key(best[0]):
                    continue
                for ge, g in reducers:
                    if divides(ge, e):
                        best = (e, ge, g)
                        break
            if best is None:
                break
            e, ge, g = best
            f = f - g.mul_term(exp_sub(e, ge), f.terms[e])
            if local:
                f = f.truncate(cutoff)
        out.append(f)
    return _make_basis(out, order, minimal=True, reduced=True, cutoff=cutoff if local else None)


def tangent_cone(gens, ring=None):
    """Leading-form ideal I* of the ideal generated by ``gens`` in the local ring.

    Generators are the leading forms of the minimal standard basis for the
    local degree order.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return HomogeneousIdeal(())
    ring = ring or gens[0].ring
    basis = minimalize(standard_basis(gens, ring.local_order()))
    forms = []
    for f in basis.elements:
        lf = leading_form(f)
        forms.append(HomogeneousForm(lf.poly.primitive(ring.graded_order()), lf.degree))
    return HomogeneousIdeal(tuple(forms))
