from fractions import Fraction
from itertools import permutations
from math import gcd

import pytest
from hypothesis import given, strategies as st

from triple_branch.covers import (
    InconsistentTypeError,
    InertiaType,
    RamificationType,
    canonicalize_inertia,
    enumerate_inertia_types,
    enumerate_ramification_types,
    genus_of_quotient,
    genus_of_ramification,
    group_shape,
)
from triple_branch.groups import AbelianGroupShape, Subgroup, UnsupportedGroupError

Z = RamificationType.from_list


def zs(types):
    return {str(z) for z in types}


def test_genus_examples():
    assert genus_of_ramification(Z([11, 11, 11, 1])) == 5
    assert genus_of_ramification(Z([14, 14, 2, 2])) == 6
    assert genus_of_ramification(Z([5, 5, 5, 5])) == 6


def test_genus_of_2r_family_is_r_minus_1():
    for r in range(2, 15):
        assert genus_of_ramification(Z([2 * r, 2 * r, 2, 2])) == r - 1


def test_inconsistent_tuple_rejected():
    with pytest.raises(InconsistentTypeError):
        genus_of_ramification(Z([7, 5, 3, 1]))


def test_derived_parts():
    z = Z([12, 6, 4, 2])
    assert (z.r, z.e01, z.e0inf, z.e1inf) == (2, 3, 2, 1)
    assert z.is_valid()
    assert not z.satisfies_divisibility_chain()


def _naive_types(g):
    # independent scan: every tuple within the Hurwitz bound, no divisor shortcuts
    bound = 84 * (g - 1)
    out = set()
    for s in range(1, bound + 1):
        for c0 in range(2, bound // s + 1):
            for c1 in range(2, c0 + 1):
                for ci in range(2, c1 + 1):
                    z = RamificationType(c0, c1, ci, s)
                    if not z.is_valid():
                        continue
                    two_g_2 = s * c0 * (1 - Fraction(1, c0) - Fraction(1, c1) - Fraction(1, ci))
                    if two_g_2 == 2 * g - 2:
                        out.add(str(z))
    return out


@pytest.mark.parametrize("g", [2, 3, 4])
def test_enumeration_matches_naive_scan(g):
    assert zs(enumerate_ramification_types(g)) == _naive_types(g)


def test_genus_five_cases():
    types = enumerate_ramification_types(5)
    assert zs(types) == {"[11,11,11,1]", "[15,15,3,1]", "[22,11,2,1]", "[12,12,6,1]",
                         "[20,20,2,1]", "[8,8,4,2]", "[12,12,2,2]"}
    assert zs(z for z in types if z.s == 1) == {
        "[11,11,11,1]", "[15,15,3,1]", "[22,11,2,1]", "[12,12,6,1]", "[20,20,2,1]"}


def test_genus_eight_noncyclic_slice():
    types = enumerate_ramification_types(8)
    assert zs(z for z in types if z.s > 1) == {"[10,10,10,2]", "[18,18,2,2]", "[12,12,4,2]"}
    assert enumerate_inertia_types(Z([12, 12, 4, 2])) == []


def test_enumeration_is_sorted_and_round_trips():
    for g in range(2, 11):
        types = enumerate_ramification_types(g)
        assert types == sorted(types, key=lambda z: (z.s, z.c0, z.c1, z.cinf))
        assert len(set(types)) == len(types)
        assert all(genus_of_ramification(z) == g and z.is_valid() for z in types)


def test_genus_must_be_positive():
    with pytest.raises(ValueError):
        enumerate_ramification_types(0)


def test_divisibility_chain_sweep():
    # [12,6,4,2] has c_inf not dividing c1, yet its group is Z/12 x Z/2
    violators = {str(z) for g in range(5, 11) for z in enumerate_ramification_types(g)
                 if z.s > 1 and not z.satisfies_divisibility_chain()}
    assert violators == {"[12,6,4,2]"}
    assert group_shape(Z([12, 6, 4, 2])) == AbelianGroupShape(12, 2)


def test_group_shape_examples():
    assert group_shape(Z([8, 8, 4, 2])) == AbelianGroupShape(8, 2)
    assert group_shape(Z([11, 11, 11, 1])).is_cyclic
    assert group_shape(Z([5, 5, 5, 5])) == AbelianGroupShape(5, 5)


def test_group_shape_rejects_three_generator_groups():
    # order 8 with exponent 2 would be (Z/2)^3
    with pytest.raises(UnsupportedGroupError):
        group_shape(RamificationType(2, 2, 2, 4))


def test_no_inertia_types():
    for z in ([8, 8, 8, 2], [12, 12, 4, 2], [12, 12, 12, 2]):
        assert enumerate_inertia_types(Z(z)) == []


def test_fifteen_has_two_classes():
    classes = enumerate_inertia_types(Z([15, 15, 5, 1]))
    assert len(classes) == 2
    reps = {canonicalize_inertia(InertiaType.cyclic(15, a)) for a in [(1, 11, 3), (1, 8, 6)]}
    assert set(classes) == reps


def _naive_cyclic_canon(m, a):
    orders = [m // gcd(m, x) for x in a]
    best = None
    for perm in permutations(range(3)):
        if not orders[perm[0]] >= orders[perm[1]] >= orders[perm[2]]:
            continue
        for u in range(1, m):
            if gcd(u, m) == 1:
                c = tuple((u * a[i]) % m for i in perm)
                key = (c[0] != 1, c)
                if best is None or key < best:
                    best = key
    return best[1]


@pytest.mark.parametrize("m", [7, 9, 11, 13, 16])
def test_cyclic_class_counts_match_brute_force(m):
    naive = {_naive_cyclic_canon(m, (1, a1, (-1 - a1) % m))
             for a1 in range(1, m) if (-1 - a1) % m and gcd(a1, m) == 1 and gcd(-1 - a1, m) == 1}
    z = Z([m, m, m, 1])
    got = {a.compact() for a in enumerate_inertia_types(z)}
    assert got == naive


def test_eleven_classes():
    got = [a.compact() for a in enumerate_inertia_types(Z([11, 11, 11, 1]))]
    assert got == [(1, 1, 9), (1, 2, 8)]


def test_canonicalize_examples():
    assert canonicalize_inertia(InertiaType.cyclic(9, (4, 6, 8))).compact() == (1, 2, 6)
    assert canonicalize_inertia(InertiaType.cyclic(8, (1, 6, 1))).compact() == (1, 1, 6)
    for r in (3, 5, 7):
        a = InertiaType.cyclic(2 * r, (1, r, r - 1))
        assert canonicalize_inertia(a) == canonicalize_inertia(InertiaType.cyclic(2 * r, (1, r - 1, r)))


def test_ten_ten_ten_two_is_one_class():
    a = InertiaType.rank2(10, 2, ((1, 0), (1, 1), (8, 1)))
    b = InertiaType.rank2(10, 2, ((1, 0), (2, 1), (7, 1)))
    assert canonicalize_inertia(a) == canonicalize_inertia(b)
    assert len(enumerate_inertia_types(Z([10, 10, 10, 2]))) == 1


ALL_TYPES = [a for g in range(2, 9) for z in enumerate_ramification_types(g)
             for a in enumerate_inertia_types(z)]


@given(st.sampled_from(ALL_TYPES), st.data())
def test_canonical_form_is_a_class_invariant(a, data):
    G = a.shape
    aut = data.draw(st.sampled_from(G.automorphisms()))
    moved = [G.apply(aut, x) for x in a.a]
    # swap two entries of equal order when possible
    orders = a.orders
    pairs = [(i, j) for i in range(3) for j in range(i + 1, 3) if orders[i] == orders[j]]
    if pairs:
        i, j = data.draw(st.sampled_from(pairs))
        moved[i], moved[j] = moved[j], moved[i]
    b = InertiaType(G, tuple(moved))
    ca = canonicalize_inertia(a)
    assert canonicalize_inertia(b) == ca
    assert canonicalize_inertia(ca) == ca


@given(st.sampled_from(ALL_TYPES))
def test_enumerated_types_satisfy_constraints(a):
    G = a.shape
    z = a.ramification_type
    assert G.sum(a.a) == G.identity
    assert G.generates(a.a)
    assert a.orders == z.orders
    assert G.order == z.group_order
    if G.is_cyclic:
        assert a.a[0] == (1, 0)
    assert genus_of_quotient(a, Subgroup.trivial(G)) == genus_of_ramification(z)
    assert genus_of_quotient(a, Subgroup.whole(G)) == 0


def test_inertia_validation():
    with pytest.raises(ValueError):
        InertiaType.cyclic(8, (1, 1, 1))
    with pytest.raises(ValueError):
        InertiaType.cyclic(8, (2, 2, 4))


def test_genus_of_quotient_examples():
    a = InertiaType.rank2(8, 2, ((1, 0), (1, 1), (6, 1)))
    assert genus_of_quotient(a, [(4, 0), (0, 1)]) == 1
    b = InertiaType.rank2(12, 2, ((1, 0), (11, 1), (0, 1)))
    assert genus_of_quotient(b, [(6, 1)]) == 3
    assert genus_of_quotient(b, [(6, 0)]) == 2
    assert genus_of_quotient(b, [(0, 1)]) == 0
