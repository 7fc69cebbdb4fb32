import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sblab.basis import (
    HomogeneousIdeal, corner_degree, minimalize, reduce_basis, s_polynomial, standard_basis,
    tangent_cone, uncertified_pairs, weak_normal_form,
)
from sblab.corpus import random_ideal
from sblab.errors import InputError, ResourceError
from sblab.ideals import IdealHandle, ideal_power
from sblab.oracle import minimal_exponents, staircase, truncated_member
from sblab.poly import GF, MonomialOrder, Ring, divides, initial_exp, order_of


LOCAL2 = MonomialOrder.local(2)


def example(R2):
    x, y = R2.gens
    return [x**2, y**3 - x * y]


# -- weak normal form --------------------------------------------------------


def test_normal_form_examples(R2):
    x, y = R2.gens
    assert weak_normal_form(x**2, [x], LOCAL2).is_zero()
    G = standard_basis(example(R2), LOCAL2).elements
    assert weak_normal_form(y**5, G, LOCAL2).is_zero()
    h = weak_normal_form(y**4, G, LOCAL2)
    assert initial_exp(h, LOCAL2) == (0, 4)


def test_normal_form_rejects_zero_divisor(R2):
    with pytest.raises(InputError):
        weak_normal_form(R2.gens[0], [R2.zero()], LOCAL2)


def test_global_division_has_unit_one(R2):
    x, y = R2.gens
    order = R2.graded_order()
    h = weak_normal_form(x**2 * y + y**3 + 2, [x * y - 1], order)
    # x^2 y = x (xy - 1) + x, so the remainder is exact, not a multiple
    assert h == x + y**3 + 2


@given(st.integers(0, 10**6), st.integers(1, 2))
@settings(max_examples=25)
def test_remainder_not_divisible(seed, n):
    spec = random_ideal(seed, ("x", "y"))
    B = ideal_power(IdealHandle(spec.ring, spec.I), n).basis()
    rng = random.Random(seed)
    x, y = spec.ring.gens
    f = sum((rng.randint(-3, 3) * x**rng.randint(0, 4) * y**rng.randint(0, 4) for _ in range(4)),
            spec.ring.zero())
    h = weak_normal_form(f, B.elements, B.order)
    if h:
        assert not any(divides(e, initial_exp(h, B.order)) for e in B.leading_exps)


# -- standard bases -----------------------------------------------------------


def test_standard_basis_examples(R2):
    x, y = R2.gens
    B = standard_basis(example(R2), LOCAL2)
    assert set(minimalize(B).leading_exps) == {(2, 0), (1, 1), (0, 5)}
    assert standard_basis([x], LOCAL2).elements == (x,)
    G = standard_basis([x - y, y], R2.graded_order())
    assert set(G.leading_exps) == {(1, 0), (0, 1)}


def test_basis_invariants(R2):
    B = standard_basis(example(R2), LOCAL2)
    assert list(B.orders) == sorted(B.orders)
    for f, e, r in zip(B.elements, B.leading_exps, B.orders):
        assert initial_exp(f, LOCAL2) == e
        assert order_of(f) == r == sum(e)


def test_zero_ideal_gives_empty_basis(R2):
    assert len(standard_basis([R2.zero()], LOCAL2)) == 0


def test_pair_budget(R2, monkeypatch):
    monkeypatch.setenv("SBLAB_MAX_PAIRS", "0")
    x, y = R2.gens
    with pytest.raises(ResourceError):
        standard_basis([x**2 + y**3, x * y + y**4], LOCAL2)


def test_coefficient_guard(R2, monkeypatch):
    monkeypatch.setenv("SBLAB_MAX_COEFF_BITS", "64")
    x, y = R2.gens
    # 100 steps, each trading y for 3x + 2x^2: coefficients grow like 3^k
    with pytest.raises(ResourceError):
        weak_normal_form(y**100, [y - 3 * x - 2 * x**2], LOCAL2)


def test_minimalize_examples(R2):
    x, y = R2.gens
    B = standard_basis(example(R2) + [x**2 * y], LOCAL2)
    assert (2, 1) not in minimalize(B).leading_exps
    M = minimalize(B)
    assert minimalize(M).leading_exps == M.leading_exps
    two = minimalize(ideal_power(IdealHandle(R2, example(R2)), 2).basis())
    assert len(two) == 5
    assert set(two.leading_exps) == {(4, 0), (3, 1), (2, 2), (1, 6), (0, 9)}
    assert two.minimal


def test_reduce_examples(R2):
    x, y = R2.gens
    B = reduce_basis(minimalize(standard_basis([x, x + y**2], LOCAL2)))
    assert set(B.elements) == {x, y**2}
    mono = minimalize(standard_basis([x**2, x * y, y**5], LOCAL2))
    assert reduce_basis(mono).elements == mono.elements
    assert reduce_basis(mono).reduced


def test_reduce_is_canonical_under_shuffles(R2):
    gens = example(R2) + [R2.gens[0] ** 2 * R2.gens[1] + R2.gens[1] ** 4]
    outputs = set()
    for seed in range(4):
        shuffled = gens[:]
        random.Random(seed).shuffle(shuffled)
        outputs.add(reduce_basis(minimalize(standard_basis(shuffled, LOCAL2))).elements)
    assert len(outputs) == 1


def test_reduce_cutoff_below_order(R2):
    with pytest.raises(InputError):
        reduce_basis(minimalize(standard_basis(example(R2), LOCAL2)), cutoff=3)


# -- tangent cones ------------------------------------------------------------


def test_tangent_cone_examples(R2):
    x, y = R2.gens
    cone = tangent_cone(example(R2))
    assert {g.poly for g in cone.generators} == {x**2, x * y, y**5}
    f = y**3 + x**2 * y - x**4
    assert [g.poly for g in tangent_cone([f]).generators] == [y**3 + x**2 * y]
    assert {g.poly for g in tangent_cone([x, y]).generators} == {x, y}
    assert isinstance(cone, HomogeneousIdeal)


# -- corner detection ---------------------------------------------------------


def test_corner_degree():
    assert corner_degree([(2, 0), (1, 1), (0, 5)]) == 5
    assert corner_degree([(2, 0), (0, 3)]) == 4
    assert corner_degree([(1, 1)]) is None
    assert corner_degree([(1, 0, 0), (0, 1, 0), (0, 0, 1)]) == 1


@given(st.integers(0, 10**6))
@settings(max_examples=20)
def test_corner_monomials_lie_in_ideal(seed):
    spec = random_ideal(seed, ("x", "y"))
    B = standard_basis(spec.I, spec.ring.local_order())
    N = B.stats["corner"]
    if N is None:
        return
    D = N + max(g.degree for g in spec.I) + 2
    for k in range(N + 1):
        assert truncated_member(spec.ring.monomial((k, N - k)), spec.I, D)


# -- properties on random ideals ------------------------------------------------


@given(st.integers(0, 10**6))
@settings(max_examples=30)
def test_buchberger_criterion(seed):
    spec = random_ideal(seed, ("x", "y"))
    B = standard_basis(spec.I, spec.ring.local_order())
    assert uncertified_pairs(B) == []


@given(st.integers(0, 10**6), st.booleans())
@settings(max_examples=30)
def test_leading_exponents_match_oracle(seed, chain):
    spec = random_ideal(seed, ("x", "y"))
    B = standard_basis(spec.I, spec.ring.local_order(), chain_criterion=chain)
    mins = set(minimal_exponents(B.leading_exps))
    margin = max(g.degree for g in spec.I) + 1
    st_ = staircase(spec.I, max(sum(e) for e in mins) + margin, margin)
    assert st_.exponents == mins


@given(st.integers(0, 10**6), st.lists(st.tuples(st.integers(-3, 3), st.integers(0, 3),
                                                 st.integers(0, 3)), min_size=1, max_size=4))
@settings(max_examples=40)
def test_semigroup_property(seed, mults):
    spec = random_ideal(seed, ("x", "y"))
    B = standard_basis(spec.I, spec.ring.local_order())
    g = spec.ring.zero()
    for k, (c, a, b) in enumerate(mults):
        g = g + B.elements[k % len(B)] * spec.ring.monomial((a, b), c or 1)
    if g:
        e = initial_exp(g, B.order)
        assert any(divides(a, e) for a in B.leading_exps)


@given(st.integers(0, 10**6))
@settings(max_examples=20)
def test_nakayama_shuffles(seed):
    spec = random_ideal(seed, ("x", "y"), ngens=3)
    results = set()
    for k in range(3):
        gens = spec.I[:]
        random.Random(k).shuffle(gens)
        B = minimalize(standard_basis(gens, spec.ring.local_order(), chain_criterion=k != 1))
        results.add((len(B), tuple(sorted(B.orders))))
    assert len(results) == 1


@given(st.integers(0, 10**6))
@settings(max_examples=25)
def test_membership_sound_against_oracle(seed):
    spec = random_ideal(seed, ("x", "y"))
    B = standard_basis(spec.I, spec.ring.local_order())
    rng = random.Random(seed)
    x, y = spec.ring.gens
    # an element of the ideal with random multipliers, and a random monomial
    f = sum((g * (x**rng.randint(0, 2) * y**rng.randint(0, 2) + rng.randint(-2, 2))
             for g in spec.I), spec.ring.zero())
    m = x**rng.randint(0, 4) * y**rng.randint(0, 4)
    top = max(g.degree for g in spec.I)
    for q in (f, m):
        if q.is_zero():
            continue
        in_mora = weak_normal_form(q, B.elements, B.order).is_zero()
        in_oracle = truncated_member(q, spec.I, max(q.degree, 0) + top + 12)
        if in_mora:
            assert in_oracle
    assert weak_normal_form(f, B.elements, B.order).is_zero() or f.is_zero()


def test_prime_field_basis():
    R = Ring(("x", "y"), GF(32003))
    x, y = R.gens
    B = minimalize(standard_basis([x**2, y**3 - x * y], R.local_order()))
    assert set(B.leading_exps) == {(2, 0), (1, 1), (0, 5)}
    assert all(f.lead(B.order)[1] == 1 for f in B.elements)


def test_s_polynomial_cancels_leads(R2):
    x, y = R2.gens
    f, g = x**2 + y**3, x * y + y**4
    s = s_polynomial(f, g, LOCAL2)
    assert (2, 1) not in s.terms


# -- homogenized method --------------------------------------------------------


@given(st.integers(0, 10**6))
@settings(max_examples=20)
def test_homogenized_method_agrees_with_mora(seed):
    spec = random_ideal(seed, ("x", "y"))
    order = spec.ring.local_order()
    mora = standard_basis(spec.I, order, method="mora")
    hom = standard_basis(spec.I, order, method="homogenized")
    assert hom.stats["method"] == "homogenized"
    assert set(minimal_exponents(hom.leading_exps)) == set(minimal_exponents(mora.leading_exps))


def test_fallback_when_coefficients_explode(R2, monkeypatch):
    import sblab.basis as basis_mod
    from sblab.errors import CoefficientGrowthError
    from sblab.poly import HomogenizedOrder

    x, y = R2.gens
    gens = [x * y - 3 * x**2 - 3 * x**4, -3 * x * y**2 - 3 * x**2 * y]
    expected = set(minimal_exponents(standard_basis(gens, LOCAL2, method="mora").leading_exps))
    real = basis_mod._buchberger

    def exploding(gens, order, *rest):
        if not isinstance(order, HomogenizedOrder):
            raise CoefficientGrowthError("simulated growth")
        return real(gens, order, *rest)

    monkeypatch.setattr(basis_mod, "_buchberger", exploding)
    with pytest.raises(ResourceError):
        standard_basis(gens, LOCAL2, method="mora")
    B = standard_basis(gens, LOCAL2)
    assert B.stats["method"] == "homogenized"
    assert B.stats["fallback_reason"] == "simulated growth"
    assert set(minimal_exponents(B.leading_exps)) == expected


def test_guard_also_covers_fallback(R2, monkeypatch):
    monkeypatch.setenv("SBLAB_MAX_COEFF_BITS", "64")
    x, y = R2.gens
    with pytest.raises(ResourceError):
        standard_basis([y**100 + x**101, y - 3 * x - 2 * x**2], LOCAL2)


def test_unknown_method(R2):
    with pytest.raises(InputError):
        standard_basis([R2.gens[0]], LOCAL2, method="f5")
