from __future__ import annotations

import math

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from kfree import gfp
from kfree.factor import (
    Factorization,
    IncompleteFactorization,
    factor_integer,
    integer_profile,
    is_probable_prime,
    next_prime,
    squarefree_kernel,
    valuation,
)


# -- integers ----------------------------------------------------------------

@given(st.integers(-10**15, 10**15).filter(lambda n: n != 0))
def test_factorization_reassembles_and_matches_sympy(n):
    fac = factor_integer(n)
    assert fac.value == n
    assert not fac.composite
    assert dict(fac.factors) == sympy.factorint(abs(n))


@given(st.integers(2, 10**6))
def test_primality_matches_sympy(n):
    assert is_probable_prime(n) == sympy.isprime(n)


def test_large_semiprime():
    p, q = sympy.nextprime(10**12), sympy.nextprime(3 * 10**11)
    fac = factor_integer(p * q * 8)
    assert dict(fac.factors) == {2: 3, p: 1, q: 1}


def test_hints_split_factors():
    p, q = sympy.nextprime(10**17), sympy.nextprime(2 * 10**17)
    fac = factor_integer(p * p * q, hints=[p * 3])
    assert dict(fac.factors) == {p: 2, q: 1}
    assert not fac.composite


def test_next_prime_and_valuation():
    assert next_prime(13) == 17
    assert valuation(48, 2) == 4
    with pytest.raises(ValueError):
        valuation(0, 3)


def test_json_round_trip():
    fac = factor_integer(-20)
    assert fac.to_json() == '{"sign":-1,"factors":[[2,2],[5,1]]}'
    assert Factorization.from_json(fac.to_json()) == fac
    assert str(fac) == "-2^2 * 5"


def test_metric_values():
    assert abs(integer_profile(12, 3).metric - math.log(4) / math.log(12)) < 1e-12
    assert integer_profile(30, 2).metric == 0.0
    assert integer_profile(8, 3).metric == 1.0
    assert not integer_profile(8, 3).is_k_free
    assert integer_profile(12, 3).squarefree_part == 3


def test_profile_refuses_incomplete_factorisation():
    with pytest.raises(IncompleteFactorization):
        integer_profile(Factorization(1, [(15, 1)], composite=True), 2)


@given(st.integers(1, 10**9))
def test_metric_range_and_kernel(n):
    prof = integer_profile(n, 3)
    assert 0.0 <= prof.metric <= 1.0
    assert n % prof.squarefree_part == 0
    k = squarefree_kernel(n)
    r = math.isqrt(n // k)
    assert r * r * k == n


# -- finite fields -------------------------------------------------------------

PRIMES = [2, 3, 5, 7, 11, 13, 101]


def _sympy_factors(cs, p):
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(cs)), x, modulus=p)
    _, facs = poly.factor_list()
    return sorted((f.degree(), m) for f, m in facs)


@settings(max_examples=150)
@given(st.sampled_from(PRIMES), st.lists(st.integers(0, 200), min_size=2, max_size=10))
def test_factor_matches_sympy(p, cs):
    f = gfp.reduce(cs, p)
    if gfp.deg(f) < 1:
        return
    ours = gfp.factor(f, p)
    rebuilt = [1]
    for g, m in ours:
        assert g[-1] == 1
        for _ in range(m):
            rebuilt = gfp.mul(rebuilt, g, p)
    assert gfp.monic(f, p) == rebuilt
    assert sorted((gfp.deg(g), m) for g, m in ours) == _sympy_factors(cs, p)


@given(st.sampled_from(PRIMES), st.lists(st.integers(0, 50), min_size=1, max_size=6),
       st.lists(st.integers(0, 50), min_size=1, max_size=6).filter(lambda c: any(c)))
def test_division_identity(p, a, b):
    a, b = gfp.reduce(a, p), gfp.reduce(b, p)
    if not b:
        return
    q, r = gfp.divmod_p(a, b, p)
    assert gfp.add(gfp.mul(q, b, p), r, p) == a
    assert gfp.deg(r) < gfp.deg(b)


def test_degree_pattern_and_squarefree():
    # X^4 + 1 splits into quadratics mod 3
    assert sorted(gfp.degree_pattern([1, 0, 0, 0, 1], 3)) == [2, 2]
    assert not gfp.is_squarefree([1, 2, 1], 7)
    # X^p - X is a product of all linear factors
    assert gfp.degree_pattern([0, 12] + [0] * 11 + [1], 13) == [1] * 13
