from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from gabinterp import linalg
from gabinterp.channel import fold_rows, random_full_rank, trial_rng
from gabinterp.codes import InterleavedCode, encode, qvandermonde, word_add
from gabinterp.ffield import Field
from gabinterp.linpoly import LinPoly, min_subspace_poly
from gabinterp.reference import (avg_list_excess, bound_alt, bound_lo, bounds, rr_fails, rr_matrix, sb_fails,
                                 syndrome_matrix)

F128 = Field(2, 7)
EX3 = InterleavedCode.build(F128, 2, 7, (2, 2))


def random_msg(code, rng):
    return tuple(LinPoly(code.field, [int(v) for v in rng.integers(0, code.field.order, size=k)])
                 for k in code.k)


def error_with_factors(field, s, n, t, rng):
    a = random_full_rank(field.q, s * field.m, t, rng)
    b = random_full_rank(field.q, t, n, rng)
    return fold_rows(field, (a @ b) % field.q, s), b


def row_space(field, mat):
    rows, _ = linalg.rref(field, linalg.kernel(field, mat), len(mat[0]))
    return [r for r in rows if any(r)]


def test_rr_matrix_shape():
    mat = rr_matrix(EX3, [[0] * 7, [0] * 7], 3)
    assert len(mat) == (7 - 3 - 1) + 2 * (7 - 2 - 3) and len(mat[0]) == 7
    with pytest.raises(ValueError):
        rr_matrix(EX3, [[0] * 7, [0] * 7], 5)


def test_error_free_codewords_are_degenerate_for_both_predicates():
    # codeword rows lie in the span of g^{[0..n-t-2]}, so rk(R_R) = n - t - 1 and S = 0
    for idx in range(1000):
        cw = encode(EX3, random_msg(EX3, trial_rng(0, idx)))
        assert linalg.rank(F128, rr_matrix(EX3, cw, 3)) == 7 - 3 - 1
        assert rr_fails(EX3, cw, 3) and sb_fails(EX3, cw, 3)


def test_received_and_error_matrices_share_kernel():
    for idx in range(50):
        rng = trial_rng(1, idx)
        e, _ = error_with_factors(F128, 2, 7, 3, rng)
        r = word_add(F128, encode(EX3, random_msg(EX3, rng)), e)
        assert row_space(F128, rr_matrix(EX3, r, 3)) == row_space(F128, rr_matrix(EX3, e, 3))


def test_syndrome_matrix_kernel_holds_error_span_polynomial():
    for k in (1, 2):
        code = InterleavedCode.build(F128, 2, 7, k)
        for idx in range(30):
            t = 3 if k == 1 else 2 + idx % 2
            e, b = error_with_factors(F128, 2, 7, t, trial_rng(2, idx))
            d = []
            for row in b:
                acc = 0
                for bit, hj in zip(row, code.h):
                    if bit:
                        acc ^= hj
                d.append(acc)
            gamma = [F128.frob(c, k) for c in min_subspace_poly(F128, d).coeffs]
            assert linalg.matvec(F128, syndrome_matrix(code, e, t), gamma) == [0] * len(syndrome_matrix(code, e, t))


def test_predicates_agree_on_tiny_code():
    code = InterleavedCode.build(Field(2, 4), 2, 4, (1, 1))
    seen = set()
    for idx in range(400):
        rng = trial_rng(3, idx)
        e, _ = error_with_factors(code.field, 2, 4, 2, rng)
        r = word_add(code.field, encode(code, random_msg(code, rng)), e)
        rr, sb = rr_fails(code, r, 2), sb_fails(code, r, 2)
        assert rr == sb
        seen.add(rr)
    assert seen == {True, False}


def test_example_bounds():
    rep = bounds(EX3, 3)
    assert rep.tau_u == rep.tau_list == 3
    assert rep.p_alt == pytest.approx(2.44e-4, rel=1e-2)
    assert abs(rep.p_lo - 0.04632) < 1e-4
    assert rep.avg_list_excess < 6.104e-5 * 1.01
    assert rep.avg_list == pytest.approx(1 + rep.avg_list_excess)


def test_bound_formulas_exact():
    assert bound_alt(2, 7, 2, 7, (2, 2), 3, 3) == Fraction(4, 2**14)
    assert bound_lo(2, 7, 2, 3) == 1 - (1 - Fraction(4, 128)) * (1 - Fraction(1, 128)) ** 2
    assert avg_list_excess(2, 7, 2, 7, (2, 2), 3) == 4 * (2**28 - 1) * Fraction(1, 2**(98 - 21 * 3 + 9))


def test_bounds_undefined_regions():
    tiny = InterleavedCode.build(Field(2, 4), 3, 4, 2)
    rep = bounds(tiny)
    assert rep.tau_u < tiny.s and rep.p_lo is None and rep.p_sb is None
    assert 0 <= rep.p_alt <= 1
    assert bounds(EX3, 1).p_lo is None
