"""Hypothesis strategies shared by the property tests."""

from fractions import Fraction

from hypothesis import strategies as st

from sblab.poly import QQ, GF, Polynomial, Ring

RINGS = {
    1: Ring(("x",), QQ),
    2: Ring(("x", "y"), QQ),
    3: Ring(("x", "y", "z"), QQ),
}


def exponents(nvars, max_part=4):
    return st.tuples(*[st.integers(0, max_part)] * nvars)


coefficients = st.one_of(
    st.integers(-5, 5),
    st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6)),
)


@st.composite
def polynomials(draw, nvars=2, max_terms=4, max_part=3, nonzero=False, field=QQ, min_ord=0):
    ring = RINGS[nvars] if field == QQ else Ring(RINGS[nvars].variables, field)
    terms = draw(st.dictionaries(exponents(nvars, max_part), coefficients, max_size=max_terms))
    terms = {e: c for e, c in terms.items() if sum(e) >= min_ord}
    f = Polynomial(ring, terms)
    if nonzero and f.is_zero():
        f = ring.monomial(draw(exponents(nvars, max_part).filter(lambda e: sum(e) >= min_ord)))
    return f


def prime_field_polys(nvars=2):
    return polynomials(nvars, field=GF(7))
