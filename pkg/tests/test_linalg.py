from __future__ import annotations

from hypothesis import given, settings, strategies as st

from gabinterp import linalg
from gabinterp.ffield import Field

F16 = Field(2, 4)
F9 = Field(3, 2)

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 15), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_kernel_vectors_are_annihilated(mat):
    ker = linalg.kernel(F16, mat)
    assert len(ker) + linalg.rank(F16, mat) == len(mat[0])
    for v in ker:
        assert linalg.matvec(F16, mat, v) == [0] * len(mat)
    if ker:
        assert linalg.rank(F16, ker) == len(ker)


@settings(max_examples=60, deadline=None)
@given(matrices, st.data())
def test_solve_affine_consistent_rhs(mat, data):
    x0 = data.draw(st.lists(st.integers(0, 15), min_size=len(mat[0]), max_size=len(mat[0])))
    rhs = linalg.matvec(F16, mat, x0)
    x, ker = linalg.solve_affine(F16, mat, rhs)
    assert x is not None
    assert linalg.matvec(F16, mat, x) == rhs
    assert len(ker) == len(mat[0]) - linalg.rank(F16, mat)


def test_solve_affine_inconsistent():
    x, _ = linalg.solve_affine(F16, [[1, 1], [1, 1]], [1, 2])
    assert x is None


def test_inverse_roundtrip_odd_characteristic():
    mat = [[1, 2, 0], [0, 1, 5], [3, 0, 1]]
    inv = linalg.inverse(F9, mat)
    eye = linalg.matmul(F9, mat, inv)
    assert eye == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_rref_pivots_and_zero_matrix():
    rows, piv = linalg.rref(F16, [[0, 3, 1], [0, 6, 2]])
    assert piv == [1]
    assert rows[0][1] == 1
    assert linalg.rank(F16, [[0, 0], [0, 0]]) == 0
