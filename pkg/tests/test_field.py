import itertools

import pytest
from hypothesis import given, strategies as st

from oracle import gf2_poly_mulmod
from qsunflower.field import (
    ExtFieldSpec,
    FieldSpec,
    find_irreducible,
    is_irreducible,
    iter_vectors,
    prime_power,
)
from qsunflower.rank_metric import extension

ORDERS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)


def test_find_irreducible_small_cases():
    F2, F3 = FieldSpec(2), FieldSpec(3)
    assert find_irreducible(F2, 1) == (0, 1)  # x
    assert find_irreducible(F2, 2) == (1, 1, 1)  # x^2 + x + 1
    assert find_irreducible(F3, 2) == (1, 0, 1)  # x^2 + 1


def test_degree_two_irreducibles_match_root_test():
    # monic quadratics are irreducible iff they have no root
    for p in (2, 3, 5):
        F = FieldSpec(p)
        for c0, c1 in itertools.product(range(p), repeat=2):
            rootless = all((c0 + c1 * x + x * x) % p for x in range(p))
            assert is_irreducible(F, (c0, c1, 1)) == rootless


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    for bad in (1, 6, 12, 0):
        with pytest.raises(ValueError):
            prime_power(bad)


def test_basic_arithmetic():
    F2, F3, F4 = FieldSpec(2), FieldSpec(3), FieldSpec.of_order(4)
    assert F2.add(1, 1) == 0
    alpha = 2  # residue of x
    assert F4.mul(alpha, alpha) == 3  # alpha + 1
    assert F3.inv(2) == 2
    with pytest.raises(ZeroDivisionError):
        F3.inv(0)


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms(q):
    F = FieldSpec.of_order(q)
    E = range(q)
    for a in E:
        assert F.add(a, F.neg(a)) == 0
        assert F.mul(a, 1) == a
        if a:
            assert F.mul(a, F.inv(a)) == 1
    for a, b, c in itertools.product(E, repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    nonzero = {F.mul(a, b) for a in range(1, q) for b in range(1, q)}
    assert 0 not in nonzero


@pytest.mark.parametrize("q", (4, 8, 16))
def test_binary_fields_match_carryless_multiplication(q):
    F = FieldSpec.of_order(q)
    mod = sum(c << i for i, c in enumerate(F.modulus))
    for a, b in itertools.product(range(q), repeat=2):
        assert F.mul(a, b) == gf2_poly_mulmod(a, b, mod)
        assert F.add(a, b) == a ^ b


def test_gf9_matches_gaussian_integers_mod_3():
    F = FieldSpec.of_order(9)
    assert F.modulus == (1, 0, 1)
    for a, b in itertools.product(range(9), repeat=2):
        a0, a1 = a % 3, a // 3
        b0, b1 = b % 3, b // 3
        re, im = (a0 * b0 - a1 * b1) % 3, (a0 * b1 + a1 * b0) % 3
        assert F.mul(a, b) == re + 3 * im


def test_explicit_modulus_validation():
    assert FieldSpec(2, 3, (1, 1, 0, 1)).q == 8
    with pytest.raises(ValueError):
        FieldSpec(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2
    with pytest.raises(ValueError):
        FieldSpec(4)
    with pytest.raises(ValueError):
        FieldSpec(2, 5)  # 32 > desk-scale cap


def test_dict_round_trip():
    for q in ORDERS:
        F = FieldSpec.of_order(q)
        assert FieldSpec.from_dict(F.to_dict()) == F


def test_extension_gf4_over_gf2():
    E = extension(FieldSpec(2), 2)
    alpha = 2
    assert E.frobenius(alpha, 1) == 3
    assert E.frobenius(alpha, 0) == alpha
    assert E.expand(0) == (0, 0)
    assert E.expand(3) == (1, 1)


@pytest.mark.parametrize("q,e", [(2, 2), (2, 3), (2, 5), (3, 2), (3, 3), (4, 2), (5, 2)])
def test_extension_structure(q, e):
    E = extension(FieldSpec.of_order(q), e)
    Q = q**e
    assert E.order == Q
    for a in range(Q):
        assert E.frobenius(a, e) == a
        assert E.from_coords(E.expand(a)) == a
        if a:
            assert E.mul(a, E.inv(a)) == 1
    # Frobenius is additive and multiplicative
    for a, b in itertools.product(range(min(Q, 16)), repeat=2):
        assert E.frobenius(E.add(a, b)) == E.add(E.frobenius(a), E.frobenius(b))
        assert E.frobenius(E.mul(a, b)) == E.mul(E.frobenius(a), E.frobenius(b))
    # elements fixed by Frobenius are exactly the base field
    fixed = [a for a in range(Q) if E.frobenius(a) == a]
    assert fixed == list(range(q))


def test_large_extension_uses_schoolbook_path():
    E = ExtFieldSpec(FieldSpec(2), 18)
    a, b = 123457, 98765
    assert E.mul(a, E.inv(a)) == 1
    assert E.mul(a, b) == E.mul(b, a)
    assert E.pow(a, 2**18) == a


@given(st.integers(0, 80), st.integers(0, 80))
def test_expand_is_additive(a, b):
    E = extension(FieldSpec(3), 4)
    F = E.base
    lhs = E.expand(E.add(a, b))
    rhs = tuple(F.add(x, y) for x, y in zip(E.expand(a), E.expand(b)))
    assert lhs == rhs


def test_iter_vectors_counts():
    F = FieldSpec(3)
    vs = list(iter_vectors(F, 3))
    assert len(vs) == 27 and len(set(vs)) == 27
