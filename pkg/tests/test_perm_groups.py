from __future__ import annotations

from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from kfree.groups import (
    GroupName,
    PermGroup,
    agl32,
    alternating_group,
    c2_wreath_sn,
    c2_wreath_sn_even,
    c2_wreath_sn_four_cycles,
    cyclic_regular,
    dihedral_group,
    direct_product,
    even_subgroup,
    generator_index,
    group_from_text,
    named_group,
    psl25,
    psl32,
    symmetric_group,
    wreath_with_symmetric,
)
from kfree.perm import CycleType, Perm, format_cycles, parse_perm, power_cycle_type, product_action, product_cycle_type

from oracles import closure, gi_bruteforce


def perms(n):
    return st.permutations(list(range(n))).map(Perm)


# -- permutations ----------------------------------------------------------

def test_index_counts_fixed_points_as_cycles():
    p = Perm.from_cycles(5, [(1, 2, 3)])
    assert p.cycle_type() == CycleType([3, 1, 1])
    assert p.index() == 2
    assert Perm.identity(4).index() == 0


def test_parse_and_format_round_trip():
    p = parse_perm("(1,3)(2,4,5)", 6)
    assert p.degree == 6
    assert parse_perm(format_cycles(p), 6) == p
    assert p.cycle_type().lengths == (3, 2, 1)


def test_bad_permutation_rejected():
    with pytest.raises(ValueError):
        Perm([0, 0, 1])


@given(st.integers(2, 7).flatmap(lambda n: st.tuples(perms(n), perms(n))))
def test_multiplication_is_associative_with_inverse(pair):
    a, b = pair
    assert (a * b) * b.inverse() == a
    assert (a * b).index() % 2 == (a.index() + b.index()) % 2


@given(st.integers(1, 8).flatmap(perms), st.integers(1, 30))
def test_power_cycle_type_matches_power(p, k):
    assert power_cycle_type(p.cycle_type(), k) == (p ** k).cycle_type()


@given(st.integers(1, 5).flatmap(perms), st.integers(1, 5).flatmap(perms))
def test_product_cycle_type_matches_product_action(g, h):
    assert product_cycle_type(g.cycle_type(), h.cycle_type()) == product_action(g, h).cycle_type()


# -- groups ----------------------------------------------------------------

@pytest.mark.parametrize("builder,order", [
    (lambda: symmetric_group(5), 120),
    (lambda: alternating_group(6), 360),
    (lambda: dihedral_group(7), 14),
    (lambda: cyclic_regular(5), 5),
    (lambda: c2_wreath_sn(3), 48),
    (lambda: c2_wreath_sn_even(3), 24),
    (lambda: c2_wreath_sn_four_cycles(2), 4),
    (psl25, 60),
    (psl32, 168),
    (agl32, 1344),
])
def test_orders_match_breadth_first_closure(builder, order):
    G = builder()
    assert G.order == order
    assert len(closure(G.degree, G.generators)) == order
    assert G.is_transitive


def test_membership():
    A5 = alternating_group(5)
    assert Perm.from_cycles(5, [(1, 2, 3)]) in A5
    assert Perm.from_cycles(5, [(1, 2)]) not in A5
    assert A5.is_subgroup_of(symmetric_group(5))


def test_elements_are_distinct_and_complete():
    G = c2_wreath_sn(3)
    elems = list(G.elements())
    assert len(set(elems)) == G.order
    assert {e.img for e in elems} == closure(G.degree, G.generators)


def test_even_subgroup_and_direct_product():
    S4 = symmetric_group(4)
    assert even_subgroup(S4).order == 12
    P = direct_product(symmetric_group(3), cyclic_regular(3))
    assert P.degree == 9 and P.order == 18
    assert wreath_with_symmetric(cyclic_regular(2), 3).order == 48


@pytest.mark.parametrize("name", ["S4", "A5", "D5", "C7", "C2WrSn(3)", "C2WrSnEven(2)", "PSL32"])
def test_generator_index_against_bruteforce(name):
    G = named_group(name)
    assert generator_index(G) == gi_bruteforce(G.degree, G.generators)


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 6).flatmap(lambda n: st.lists(perms(n), min_size=1, max_size=3)))
def test_generator_index_random_transitive_groups(gens):
    n = gens[0].degree
    G = PermGroup(n, gens)
    if G.is_trivial() or not G.is_transitive:
        return
    gi = generator_index(G)
    assert gi == gi_bruteforce(n, gens)
    # the elements of index <= gi generate G
    small = [g for g in G.elements() if 0 < g.index() <= gi]
    assert PermGroup(n, small).order == G.order


def test_group_order_divides_factorial():
    for name in ["S5", "A6", "D9", "C2WrSn(4)", "AGL32"]:
        G = named_group(name)
        assert factorial(G.degree) % G.order == 0


def test_group_names():
    assert str(GroupName.parse("S5")) == "Symmetric(5)"
    assert GroupName.parse("C2WrSn(3)") == GroupName("C2WrSn", 3)
    with pytest.raises(ValueError):
        GroupName("Nope", 3)
    with pytest.raises(ValueError):
        GroupName("Dihedral")


def test_group_from_text():
    G = group_from_text("degree 5\n(1,2,3,4,5)\n(1,2)  # a transposition\n")
    assert G.order == 120


def test_trivial_group_has_no_generator_index():
    with pytest.raises(ValueError):
        generator_index(PermGroup(3))


def test_intransitive_group_rejected():
    with pytest.raises(ValueError):
        generator_index(PermGroup(4, [Perm.from_cycles(4, [(1, 2)])]))
