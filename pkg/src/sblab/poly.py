"""Sparse multivariate polynomials with exact coefficients.

Exponents are plain tuples of ints; a polynomial is an immutable map from
exponent tuples to nonzero coefficients.  Coefficients over Q are ``int`` when
integral and ``Fraction`` (lowest terms) otherwise; over F_p they are ints in
``[0, p)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from numbers import Rational

from .errors import ContextError, DimensionError, InputError, LeadingFormError

__all__ = [
    "Field", "QQ", "GF", "Ring", "Polynomial", "OrderKind", "MonomialOrder",
    "BlockOrder", "HomogenizedOrder", "Cmp", "HomogeneousForm", "compare_exp", "order_of",
    "leading_form", "initial_exp", "divides", "exp_lcm", "exp_sub",
]

INFINITY = float("inf")


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for d in range(3, isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: ``characteristic == 0`` is Q, otherwise F_p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0:
            if p >= 2**31:
                raise InputError(f"prime modulus {p} exceeds 2^31")
            if not _is_prime(p):
                raise InputError(f"modulus {p} is not prime")

    @property
    def is_rational(self):
        return self.characteristic == 0

    def convert(self, c):
        p = self.characteristic
        if p:
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, p) % p
            return int(c) % p
        if isinstance(c, int):
            return c
        if isinstance(c, (Fraction, Rational, str)):
            c = Fraction(c)
            return c.numerator if c.denominator == 1 else c
        raise TypeError(f"cannot convert {c!r} to an exact rational")

    def div(self, a, b):
        p = self.characteristic
        if p:
            return a * pow(b, -1, p) % p
        q = Fraction(a) / Fraction(b)
        return q.numerator if q.denominator == 1 else q

    def __str__(self):
        return "Q" if not self.characteristic else f"Fp {self.characteristic}"


QQ = Field(0)


def GF(p):
    return Field(p)


class Cmp(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class OrderKind(enum.Enum):
    LOCAL_DEGLEX = "local"
    GLOBAL_GRADED_LEX = "global"


@dataclass(frozen=True)
class MonomialOrder:
    """Degree-refining order on exponents of length ``nvars``.

    Both kinds compare ``(|a|, a_1, ..., a_s)`` lexicographically.  They differ
    in which term is distinguished: the local kind takes the smallest exponent
    (the initial term), the global kind the largest.  ``lead_key`` hides that
    difference: the distinguished term always has the largest key.
    """

    kind: OrderKind
    nvars: int

    @classmethod
    def local(cls, nvars):
        return cls(OrderKind.LOCAL_DEGLEX, nvars)

    @classmethod
    def graded(cls, nvars):
        return cls(OrderKind.GLOBAL_GRADED_LEX, nvars)

    @property
    def is_global(self):
        return self.kind is OrderKind.GLOBAL_GRADED_LEX

    @property
    def local_offset(self):
        """Index of the first variable ordered locally; None for a global order."""
        return None if self.is_global else 0

    def lead_key(self, exp):
        if self.kind is OrderKind.GLOBAL_GRADED_LEX:
            return (sum(exp),) + exp
        return (-sum(exp),) + tuple(-a for a in exp)

    def check(self, exp):
        if len(exp) != self.nvars:
            raise DimensionError(f"exponent {exp} has length {len(exp)}, expected {self.nvars}")


@dataclass(frozen=True)
class BlockOrder:
    """Elimination order: exponent 0 (the auxiliary variable) compared first and
    globally, ties broken by ``inner`` on the remaining coordinates."""

    inner: MonomialOrder | BlockOrder

    @property
    def nvars(self):
        return self.inner.nvars + 1

    @property
    def is_global(self):
        return self.inner.is_global

    @property
    def local_offset(self):
        off = self.inner.local_offset
        return None if off is None else off + 1

    def lead_key(self, exp):
        return (exp[0],) + self.inner.lead_key(exp[1:])

    def check(self, exp):
        if len(exp) != self.nvars:
            raise DimensionError(f"exponent {exp} has length {len(exp)}, expected {self.nvars}")


@dataclass(frozen=True)
class HomogenizedOrder:
    """Order on exponents ``(h, a)`` of homogenized polynomials: total degree
    first, then ``inner`` on ``a``.  It is global, and on homogeneous
    polynomials it picks the term whose ``a`` part ``inner`` distinguishes."""

    inner: MonomialOrder | BlockOrder

    @property
    def nvars(self):
        return self.inner.nvars + 1

    is_global = True
    local_offset = None

    def lead_key(self, exp):
        return (sum(exp),) + self.inner.lead_key(exp[1:])

    def check(self, exp):
        if len(exp) != self.nvars:
            raise DimensionError(f"exponent {exp} has length {len(exp)}, expected {self.nvars}")


def compare_exp(a, b, order):
    """Compare two exponents by ``(|a|, a_1, ..., a_s)`` lexicographically."""
    order.check(a)
    order.check(b)
    ka = (sum(a),) + tuple(a)
    kb = (sum(b),) + tuple(b)
    if ka < kb:
        return Cmp.LESS
    if ka > kb:
        return Cmp.GREATER
    return Cmp.EQUAL


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def exp_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def exp_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class Ring:
    """Polynomial ring context: variable names (metadata only) and a field."""

    variables: tuple
    field: Field = QQ

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise InputError(f"duplicate variable names in {self.variables}")

    @property
    def nvars(self):
        return len(self.variables)

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exp, coeff=1):
        exp = tuple(exp)
        if len(exp) != self.nvars:
            raise DimensionError(f"exponent {exp} has length {len(exp)}, expected {self.nvars}")
        return Polynomial(self, {exp: coeff})

    def gen(self, i):
        exp = [0] * self.nvars
        exp[i] = 1
        return self.monomial(exp)

    @property
    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def var(self, name):
        return self.gen(self.variables.index(name))

    def extend(self, name):
        """Ring with one extra variable ``name`` placed first."""
        while name in self.variables:
            name = "_" + name
        return Ring((name,) + self.variables, self.field)

    def local_order(self):
        return MonomialOrder.local(self.nvars)

    def graded_order(self):
        return MonomialOrder.graded(self.nvars)


class Polynomial:
    __slots__ = ("ring", "terms", "_leads")

    def __init__(self, ring, terms=None, _canonical=False):
        self.ring = ring
        self._leads = {}
        if _canonical:
            self.terms = terms
            return
        field = ring.field
        n = ring.nvars
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n:
                raise DimensionError(f"exponent {exp} has length {len(exp)}, expected {n}")
            c = field.convert(c)
            if c:
                clean[exp] = c
        self.terms = clean

    # -- structure -------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __getstate__(self):
        return (self.ring, self.terms)

    def __setstate__(self, state):
        self.ring, self.terms = state
        self._leads = {}

    @property
    def degree(self):
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def is_monomial(self):
        return len(self.terms) == 1

    def homogeneous_part(self, d):
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d}, True)

    def truncate(self, d):
        """Terms of total degree at most ``d``."""
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if sum(e) <= d}, True)

    def lead(self, order):
        """``(exponent, coefficient)`` of the distinguished term under ``order``."""
        hit = self._leads.get(order)
        if hit is None:
            if not self.terms:
                raise LeadingFormError("the zero polynomial has no distinguished term")
            key = order.lead_key
            exp = max(self.terms, key=key)
            hit = (exp, self.terms[exp])
            self._leads[order] = hit
        return hit

    def ecart(self, order):
        return self.degree - sum(self.lead(order)[0])

    # -- arithmetic ------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise ContextError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = self.ring.field.characteristic
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out, True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.characteristic
        if p:
            return Polynomial(self.ring, {e: (-c) % p for e, c in self.terms.items()}, True)
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()}, True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        field = self.ring.field
        c = field.convert(c)
        if not c:
            return self.ring.zero()
        p = field.characteristic
        if p:
            return Polynomial(self.ring, {e: v * c % p for e, v in self.terms.items()}, True)
        out = {}
        for e, v in self.terms.items():
            v = v * c
            if type(v) is Fraction and v.denominator == 1:
                v = v.numerator
            out[e] = v
        return Polynomial(self.ring, out, True)

    def mul_term(self, exp, c=1):
        """Multiply by the single term ``c * x^exp``."""
        scaled = self.scale(c) if c != 1 else self
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): v for e, v in scaled.terms.items()},
            True,
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        p = self.ring.field.characteristic
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        clean = {}
        for e, v in out.items():
            if p:
                v %= p
            elif type(v) is Fraction and v.denominator == 1:
                v = v.numerator
            if v:
                clean[e] = v
        return Polynomial(self.ring, clean, True)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def monic(self, order):
        if not self.terms:
            return self
        return self.scale(self.ring.field.div(1, self.lead(order)[1]))

    def primitive(self, order):
        """Unit multiple with controlled coefficients.

        Over Q: integer coefficients with gcd 1 and positive distinguished
        coefficient.  Over F_p: monic.
        """
        if not self.terms:
            return self
        field = self.ring.field
        if field.characteristic:
            return self.monic(order)
        coeffs = self.terms.values()
        den = lcm(*(c.denominator if type(c) is Fraction else 1 for c in coeffs))
        nums = [c * den for c in coeffs]
        nums = [int(c) for c in nums]
        g = gcd(*nums)
        if self.lead(order)[1] < 0:
            g = -g
        if den == 1 and g == 1:
            return self
        out = {e: n // g for e, n in zip(self.terms, nums)}
        return Polynomial(self.ring, out, True)

    # -- ring changes ----------------------------------------------------

    def embed(self, ring, prefix=1):
        """Image in ``ring`` which has ``prefix`` extra leading variables."""
        pad = (0,) * prefix
        return Polynomial(ring, {pad + e: c for e, c in self.terms.items()}, True)

    def drop_leading(self, ring, count=1):
        return Polynomial(ring, {e[count:]: c for e, c in self.terms.items()}, True)

    # -- printing --------------------------------------------------------

    def sorted_terms(self):
        """Terms in increasing ``(|a|, a)`` order (initial term first)."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]),) + t[0])

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.variables
        out = []
        for i, (exp, c) in enumerate(self.sorted_terms()):
            neg = c < 0 if not self.ring.field.characteristic else False
            a = -c if neg else c
            mono = "*".join(
                names[k] if d == 1 else f"{names[k]}^{d}" for k, d in enumerate(exp) if d
            )
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"


@dataclass(frozen=True)
class HomogeneousForm:
    poly: Polynomial
    degree: int

    def __post_init__(self):
        if any(sum(e) != self.degree for e in self.poly.terms):
            raise InputError(f"{self.poly} is not homogeneous of degree {self.degree}")

    def __str__(self):
        return str(self.poly)


def order_of(f):
    """Largest k with f in m^k: the minimal total degree of a term, inf for 0."""
    if not f.terms:
        return INFINITY
    return min(sum(e) for e in f.terms)


def leading_form(f):
    if not f.terms:
        raise LeadingFormError("the zero polynomial has no leading form")
    d = order_of(f)
    return HomogeneousForm(f.homogeneous_part(d), d)


def initial_exp(f, order):
    """Exponent of the distinguished term: minimal for the local order,
    maximal for the graded one."""
    if not f.terms:
        raise LeadingFormError("the zero polynomial has no initial exponent")
    if order.nvars != f.ring.nvars:
        raise DimensionError(f"order on {order.nvars} variables, ring has {f.ring.nvars}")
    return f.lead(order)[0]
