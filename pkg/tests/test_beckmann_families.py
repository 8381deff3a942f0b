from __future__ import annotations

import json

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from kfree import gfp
from kfree.beckmann import (
    BranchDatum,
    BranchPointError,
    Cover,
    CoverError,
    Verdict,
    build_cover,
    find_unramified_value,
    is_degenerate,
    predict_specialization,
)
from kfree.discverify import field_discriminant, is_irreducible, ramification_shape, ShapeStatus
from kfree.families import (
    ConditionII,
    FamilyError,
    a2n_family,
    lemlast_family,
    malle_agl32,
    malle_polynomial,
    mestre_verify,
    quadratic_twist_compose,
    split_sn_family,
)
from kfree.groups import named_group
from kfree.intpoly import discriminant, monic_integral, parse_poly
from kfree.perm import CycleType

P = parse_poly


def sqrt_cover():
    F = P("X^2 - t", param="t")
    branch = [
        BranchDatum(P("t", var="t"), 2, CycleType([2]), "zero"),
        BranchDatum(None, 2, CycleType([2]), "infinity"),
    ]
    return build_cover(F, branch)


def test_sqrt_cover_bad_primes():
    assert sqrt_cover().bad_primes == {2}
    assert sqrt_cover().sum_finite_index == 1


def test_missing_branch_factor_is_rejected():
    F = P("X^3 - X - t", param="t")
    with pytest.raises(CoverError):
        build_cover(F, [BranchDatum(None, 3, CycleType([3]))])


def test_bad_branch_datum():
    with pytest.raises(CoverError):
        BranchDatum(None, 3, CycleType([2, 1]))
    with pytest.raises(CoverError):
        BranchDatum(None, 1, CycleType([1, 1]))


def test_cover_json_round_trip():
    c = quadratic_twist_compose(P("X^2 - X"), P("X"))
    d = Cover.from_json(c.to_json())
    assert d.F == c.F and d.bad_primes == c.bad_primes
    assert d.sum_finite_index == c.sum_finite_index == 3
    assert json.loads(d.to_json()) == json.loads(c.to_json())


def test_prediction_for_square_root_cover():
    c = sqrt_cover()
    r = predict_specialization(c, 12)
    # 12 = 2^2 * 3: 3 ramifies (nu = 1), 2 is bad
    assert [e.prime for e in r.entries] == [3]
    assert r.predicted_valuation(3) == 1
    assert 2 in r.bad_prime_contacts
    with pytest.raises(ValueError):
        r.predicted_valuation(2)
    # 9 = 3^2: nu divisible by e, unramified
    assert predict_specialization(c, 45).predicted_valuation(3) == 0
    with pytest.raises(BranchPointError):
        predict_specialization(c, 0)


def test_rational_t0():
    c = sqrt_cover()
    r = predict_specialization(c, 5, 3)
    # X^2 - 5/3 generates Q(sqrt 15); 3 enters through the denominator
    assert {e.prime for e in r.entries} == {3, 5}
    assert field_discriminant(monic_integral(r.poly)).value == 60


def test_verdict_rules():
    c = split_sn_family([0, 1, 2])
    for t0 in range(-40, 41):
        if is_degenerate(c, t0):
            continue
        r = predict_specialization(c, t0)
        res = field_discriminant(monic_integral(r.poly))
        for k in (2, 3):
            v = r.verdict(k)
            if v is Verdict.NOT_KFREE:
                assert not res.is_k_free(k)
            elif v is Verdict.KFREE:
                assert res.is_k_free(k)


@pytest.mark.parametrize("cover_fn", [
    sqrt_cover,
    lambda: split_sn_family([0, 1, 2]),
    lambda: quadratic_twist_compose(P("X^2 - X"), P("X")),
])
def test_inertia_matches_ramification_shape(cover_fn):
    """At a good prime the tame inertia cycle type is visible in the factorisation of p."""
    c = cover_fn()
    seen = 0
    for t0 in range(2, 150):
        if is_degenerate(c, t0):
            continue
        r = predict_specialization(c, t0)
        if not is_irreducible(r.poly):
            continue
        f = monic_integral(r.poly)
        res = field_discriminant(f)
        for e in r.entries:
            s = ramification_shape(f, e.prime, res)
            if s.status is ShapeStatus.TAME:
                assert s.as_cycle_type() == e.cycle_type
                seen += 1
    assert seen > 10


def test_find_unramified_value():
    c = sqrt_cover()
    assert find_unramified_value(c, 5, 10) == -1
    assert find_unramified_value(c, 2, 10) == -3


# -- families -------------------------------------------------------------------

def test_split_family():
    c = split_sn_family([0, 1, 2])
    assert c.finite_branch()[0].mu == P("27*t^2 - 4", var="t")
    assert c.bad_primes == {2, 3}
    assert c.sum_finite_index == 2
    c4 = split_sn_family([0, 1, 2, 4])
    assert c4.sum_finite_index == 3 and c4.bad_primes == {2, 3, 5, 23}
    with pytest.raises(FamilyError):
        split_sn_family([0, 1, 2, 3])


def test_quadratic_twist():
    c = quadratic_twist_compose(P("X^2 - X"), P("X"))
    assert c.F == P("X^4 - X^2 - u", param="u")
    assert {str(b.mu) for b in c.finite_branch()} == {str(P("4*u + 1", var="u")), str(P("u", var="u"))}
    c5 = quadratic_twist_compose(P("X^2 - X"), P("X*(X-2)*(X-3)*(X-4)*(X-5)"))
    assert c5.sum_finite_index == 7
    assert c5.apparent


@pytest.mark.parametrize("f,F", [
    ("X^2 - X", "X^4 - X^2 + s^2"),
    ("X*(X-1)*(X-2)", "X^6 - 3*X^4 + 2*X^2 - s^2"),
])
def test_a2n_family_has_square_discriminant(f, F):
    c = a2n_family(P(f), P("X"))
    assert c.F == P(F, param="s")
    s = sympy.Symbol("s")
    D = c.disc_t
    expr = sum(sympy.Integer(int(a)) * s**i for i, a in enumerate(D.coeffs))
    _, facs = sympy.factor_list(expr)
    assert all(m % 2 == 0 for _, m in facs)


def test_malle_specialisations():
    d4 = field_discriminant(malle_polynomial(4)).field_disc
    d6 = field_discriminant(malle_polynomial(6)).field_disc
    assert d4.value == 2224140137 ** 2
    assert len(d4.factors) == len(d6.factors) == 1
    assert d4.factors[0][1] == d6.factors[0][1] == 2
    c = malle_agl32()
    assert c.sum_finite_index == 14


def test_lemlast_odd():
    c = lemlast_family(P("X^3 - X - 1"))
    assert c.F == P("X^6 + 3*X^4 + 27*u^2 + 54*u + 23", param="u")
    (b,) = c.finite_branch()
    assert b.e == 4 and b.cycle_type == CycleType([4, 1, 1])
    assert c.bad_primes == {2, 3, 5}


def test_lemlast_conditions():
    with pytest.raises(ConditionII):
        lemlast_family(P("2*X^3 - X - 1"))
    with pytest.raises(ConditionII):
        lemlast_family(P("X^3 - X - 1"), parity="even")


def test_mestre():
    assert not mestre_verify(P("X^3 - X"), P("1"))
    # f = X^2, g = 1: disc_t(X^2 - t) = 4t is not a square
    assert not mestre_verify(P("X^2"), P("1"))


@settings(max_examples=30, deadline=None)
@given(st.integers(-300, 300))
def test_frobenius_types_lie_in_hint_group(t0):
    c = quadratic_twist_compose(P("X^2 - X"), P("X"))
    if is_degenerate(c, t0):
        return
    r = predict_specialization(c, t0)
    if not is_irreducible(r.poly):
        return
    types = named_group(c.group_hint).cycle_types
    f = monic_integral(r.poly)
    D = discriminant(f)
    for p in (7, 11, 13, 17, 19, 23, 29, 31):
        if D % p:
            ct = CycleType(gfp.degree_pattern(gfp.reduce(list(f.coeffs), p), p))
            assert ct in types
