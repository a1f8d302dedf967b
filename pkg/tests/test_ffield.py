from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from gabinterp.ffield import (Field, dual_basis, find_normal_basis, first_irreducible, is_irreducible,
                              polynomial_basis, rank_over_base)

SMALL = [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (5, 1)]


def test_base_field_modulus_is_x():
    f = Field(2, 1)
    assert f.modulus == (0, 1)
    assert f.order == 2
    assert f.mul(1, 1) == 1


def test_example_field_modulus():
    f = Field(2, 7)
    assert f.order == 128
    # lexicographically first (low-to-high) monic irreducible of degree 7
    assert f.modulus == first_irreducible(2, 7)
    for cand in itertools.product(range(2), repeat=7):
        poly = cand + (1,)
        if poly == f.modulus:
            break
        assert not is_irreducible(poly, 2)


def test_f9_multiplicative_group_order():
    f = Field(3, 2)
    orders = []
    for a in range(1, 9):
        x, e = a, 1
        while x != 1:
            x, e = f.mul(x, a), e + 1
        orders.append(e)
        assert 8 % e == 0
    assert max(orders) == 8


@pytest.mark.parametrize("q,m", SMALL)
def test_field_axioms_exhaustive(q, m):
    f = Field(q, m)
    els = list(f.elements())
    for a in els:
        assert f.add(a, f.neg(a)) == 0
        assert f.mul(a, 1) == a
        if a:
            assert f.mul(a, f.inv(a)) == 1
    for a, b in itertools.product(els, repeat=2):
        assert f.mul(a, b) == f.mul(b, a)
        assert f.sub(f.add(a, b), b) == a


@pytest.mark.parametrize("q,m", SMALL)
def test_frobenius_identities(q, m):
    f = Field(q, m)
    for a in f.elements():
        assert f.frob(a, 0) == a
        assert f.frob(a, m) == a
        assert f.frob(a, 1) == f.pow(a, q)
        assert f.frob(f.frob(a, 1), -1) == a


def test_frobenius_matches_squaring_by_reduction():
    f = Field(2, 3, modulus=(1, 1, 0, 1))  # x^3 + x + 1
    for i in range(3):
        # (x^i)^2 = x^{2i}, reduced with x^3 = x + 1
        sq = [0] * 5
        sq[2 * i] = 1
        for d in (4, 3):
            if sq[d]:
                sq[d] = 0
                sq[d - 3] ^= 1
                sq[d - 2] ^= 1
        assert f.frob(1 << i, 1) == f.from_digits(sq[:3])


@given(st.integers(0, 2**5 - 1), st.integers(0, 2**5 - 1), st.integers(0, 1), st.integers(0, 1))
def test_frobenius_is_fq_linear(a, b, c1, c2):
    f = Field(2, 5)
    lhs = f.frob(f.add(f.scalar(c1, a), f.scalar(c2, b)), 2)
    rhs = f.add(f.scalar(c1, f.frob(a, 2)), f.scalar(c2, f.frob(b, 2)))
    assert lhs == rhs


def test_rank_zero_and_independent_row():
    f = Field(2, 4)
    assert rank_over_base(f, [[0, 0, 0], [0, 0, 0]]) == 0
    assert rank_over_base(f, [list(polynomial_basis(f))]) == 4


def _brute_rank(f, rows):
    expanded = [[f.digits(x)[l] for x in row] for row in rows for l in range(f.m)]
    n = len(rows[0])
    nullity = 0
    for combo in itertools.product(range(f.q), repeat=n):
        if all(sum(c * e for c, e in zip(combo, r)) % f.q == 0 for r in expanded):
            nullity += 1
    return n - round(math.log(nullity, f.q))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 15), min_size=8, max_size=8))
def test_rank_matches_exhaustive(vals):
    f = Field(2, 4)
    rows = [vals[:4], vals[4:]]
    assert rank_over_base(f, rows) == _brute_rank(f, rows)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 7])
def test_normal_basis_and_dual(m):
    f = Field(2, m)
    nb = find_normal_basis(f)
    assert rank_over_base(f, [list(nb.basis)]) == m
    for i, b in enumerate(nb.basis):
        assert b == f.frob(nb.basis[0], i)
        for j, d in enumerate(nb.dual):
            assert f.trace(f.mul(b, d)) == (1 if i == j else 0)
    if m == 1:
        assert nb.basis == (1,) and nb.dual == (1,)


def test_dual_basis_coordinates_roundtrip():
    f = Field(3, 3)
    nb = find_normal_basis(f)
    for a in f.elements():
        coords = nb.coords(f, a)
        back = 0
        for c, b in zip(coords, nb.basis):
            back = f.add(back, f.scalar(c, b))
        assert back == a
    assert dual_basis(f, nb.dual) == nb.basis


@pytest.mark.parametrize("q,m", [(4, 2), (2, 0), (2, 30)])
def test_rejects_bad_parameters(q, m):
    with pytest.raises(ValueError):
        Field(q, m)


def test_rejects_reducible_modulus():
    with pytest.raises(ValueError):
        Field(2, 2, modulus=(1, 0, 1))
