from __future__ import annotations

import io
import itertools

import numpy as np
import pytest

from gabinterp import linalg
from gabinterp.channel import sample_rank_error, trial_rng
from gabinterp.codes import (InterleavedCode, encode, generator_matrix, parity_matrix, qvandermonde,
                             rank_distance, read_word, syndromes, word_add, write_word, zero_word)
from gabinterp.ffield import Field, polynomial_basis
from gabinterp.linpoly import LinPoly

F128 = Field(2, 7)
EX3 = InterleavedCode.build(F128, 2, 7, (2, 2))


def random_msg(code, rng):
    return tuple(LinPoly(code.field, [int(v) for v in rng.integers(0, code.field.order, size=k)])
                 for k in code.k)


def test_qvandermonde_rank():
    g = list(polynomial_basis(F128))
    assert qvandermonde(F128, 1, g) == [g]
    for s in range(1, 8):
        assert linalg.rank(F128, qvandermonde(F128, s, g)) == s
    dep = [1, 2, 3, 4, 8, 16, 32]  # 3 = 1 + 2
    assert linalg.rank(F128, qvandermonde(F128, 7, dep)) == 6


def test_encode_trivial_cases():
    assert encode(EX3, (LinPoly(F128), LinPoly(F128))) == zero_word(EX3)
    code = InterleavedCode.build(F128, 1, 7, 7)
    assert encode(code, (LinPoly.x(F128),)) == [list(code.g)]


def test_encode_rejects_long_message():
    with pytest.raises(ValueError):
        encode(EX3, (LinPoly(F128, [1, 1, 1]), LinPoly(F128)))


@pytest.mark.parametrize("n", [7, 5])
def test_parity_orthogonal_to_generator(n):
    code = InterleavedCode.build(F128, 2, n, (2, 3))
    for i in range(code.s):
        prod = linalg.matmul(F128, parity_matrix(code, i), linalg.transpose(generator_matrix(code, i)))
        assert all(x == 0 for row in prod for x in row)
        assert linalg.rank(F128, parity_matrix(code, i)) == n - code.k[i]


def test_syndromes_depend_only_on_error():
    rng = np.random.default_rng(0)
    cw = encode(EX3, random_msg(EX3, rng))
    assert all(x == 0 for row in syndromes(EX3, cw) for x in row)
    e = sample_rank_error(F128, 2, 7, 2, trial_rng(0, 1))
    assert syndromes(EX3, word_add(F128, cw, e)) == syndromes(EX3, e)


def test_mrd_minimum_distance_exhaustive():
    f = Field(2, 4)
    code = InterleavedCode.build(f, 1, 4, 2)
    best = min(rank_distance(f, encode(code, (LinPoly(f, c),)), zero_word(code))
               for c in itertools.product(range(16), repeat=2) if any(c))
    assert best == code.min_distance == 3


def test_rank_distance_of_sampled_error():
    rng = trial_rng(4, 0)
    cw = encode(EX3, random_msg(EX3, rng))
    assert rank_distance(F128, cw, cw) == 0
    for t in range(5):
        e = sample_rank_error(F128, 2, 7, t, rng)
        assert rank_distance(F128, word_add(F128, cw, e), cw) == t


def test_default_parity_vector_for_short_code():
    code = InterleavedCode.build(F128, 1, 4, 1)
    assert code.g == tuple(polynomial_basis(F128))[:4]
    assert len(code.h) == 4


@pytest.mark.parametrize("args", [(2, 8, 2), (2, 7, 0), (2, 7, 8), (2, 7, (1, 2, 3))])
def test_invalid_codes(args):
    with pytest.raises(ValueError):
        InterleavedCode.build(F128, *args)


def test_word_file_roundtrip():
    word = [[1, 2, 127], [0, 5, 6]]
    buf = io.StringIO()
    write_word(buf, F128, word)
    assert buf.getvalue().splitlines()[0] == "2 7 2 3"
    buf.seek(0)
    assert read_word(buf) == ((2, 7, 2, 3), word)
    with pytest.raises(ValueError):
        read_word(io.StringIO("2 7 1 2\n1 200\n"))
