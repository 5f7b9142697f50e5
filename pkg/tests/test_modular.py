from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from triple_branch.modular import (
    Residue,
    all_self_dual,
    euler_phi,
    frac,
    frobenius_orbits,
    has_power_minus_one,
    is_self_dual,
    mult_order,
    orbit_of,
    units,
)


def _vals(rs):
    return [r.value for r in rs]


def test_units_small_moduli():
    assert _vals(units(12)) == [1, 5, 7, 11]
    assert _vals(units(1)) == [0]
    assert _vals(units(16)) == [1, 3, 5, 7, 9, 11, 13, 15]


@given(st.integers(1, 300))
def test_units_count_is_phi(M):
    us = units(M)
    assert len(us) == euler_phi(M)
    assert _vals(us) == sorted(_vals(us))
    assert all(gcd(u.value, M) == 1 for u in us)


def test_mult_order_examples():
    assert mult_order(Residue.of(3, 5)) == 4
    assert mult_order(Residue.of(1, 7)) == 1
    assert mult_order(Residue.of(10, 11)) == 2


def test_mult_order_rejects_non_units():
    with pytest.raises(ValueError):
        mult_order(Residue.of(4, 12))


def test_residue_moduli_must_match():
    with pytest.raises(ValueError):
        Residue.of(1, 5) * Residue.of(1, 7)


def test_frac_examples():
    assert frac(Fraction(-3, 8)) == Fraction(5, 8)
    assert frac(Fraction(7, 3)) == Fraction(1, 3)
    assert frac(Fraction(-2)) == 0


@given(st.fractions())
def test_frac_properties(q):
    f = frac(q)
    assert 0 <= f < 1
    assert (q - f).denominator == 1
    assert frac(f) == f
    s = f + frac(-q)
    assert s in (0, 1)
    assert (s == 0) == (q.denominator == 1)


def test_orbits_mod_8_at_3():
    parts = {frozenset(o.elements) for o in frobenius_orbits(8, Residue.of(3, 8))}
    assert parts == {frozenset({1, 3}), frozenset({2, 6}), frozenset({5, 7}), frozenset({4})}


def test_orbits_mod_2_and_15():
    assert [sorted(o.elements) for o in frobenius_orbits(2, 7)] == [[1]]
    assert max(o.size for o in frobenius_orbits(15, 11)) <= 2


def test_orbits_reject_non_coprime():
    with pytest.raises(ValueError):
        frobenius_orbits(12, 3)


def test_self_duality():
    orbits = {frozenset(o.elements): o for o in frobenius_orbits(8, 3)}
    assert not is_self_dual(orbits[frozenset({1, 3})])
    assert is_self_dual(orbits[frozenset({4})])
    assert all_self_dual(frobenius_orbits(12, 11))


moduli_and_units = st.integers(2, 120).flatmap(
    lambda M: st.tuples(st.just(M), st.sampled_from([u for u in range(1, M) if gcd(u, M) == 1])))


@given(moduli_and_units)
def test_orbits_partition_and_sizes_divide_order(Mp):
    M, p = Mp
    orbits = frobenius_orbits(M, p)
    seen = [x for o in orbits for x in o.elements]
    assert sorted(seen) == list(range(1, M))
    k = mult_order(Residue.of(p, M))
    for o in orbits:
        assert k % o.size == 0
        assert {(x * p) % M for x in o.elements} == set(o.elements)
        assert len({M // gcd(x, M) for x in o.elements}) == 1


@given(moduli_and_units, st.integers(1, 50))
def test_orbits_depend_on_generated_subgroup(Mp, k):
    M, p = Mp
    k_order = mult_order(Residue.of(p, M))
    if gcd(k, k_order) != 1:
        return
    q = pow(p, k, M)
    a = {frozenset(o.elements) for o in frobenius_orbits(M, p)}
    b = {frozenset(o.elements) for o in frobenius_orbits(M, q)}
    assert a == b


@given(moduli_and_units)
def test_minus_one_power_forces_self_duality(Mp):
    M, p = Mp
    if has_power_minus_one(p, M):
        assert all_self_dual(frobenius_orbits(M, p))


def test_orbit_of_is_closed():
    assert orbit_of(2, 4, 15) == frozenset({2, 8})
    assert orbit_of(5, 4, 15) == frozenset({5})
