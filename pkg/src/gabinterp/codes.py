"""Gabidulin and vertically interleaved Gabidulin codes.

A word of an interleaved code is an s x n list of rows over F_{q^m}; row i is
the evaluation of a message polynomial f^(i) (q-degree < k^(i)) at g.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, TextIO

from gabinterp import linalg
from gabinterp.ffield import Field, find_normal_basis, polynomial_basis, rank_over_base
from gabinterp.linpoly import LinPoly

Word = list[list[int]]
MessageTuple = tuple[LinPoly, ...]


def qvandermonde(field: Field, rows: int, a: Sequence[int]) -> list[list[int]]:
    """rows x n matrix with entry (i, j) = a_j^{[i]}."""
    if rows < 0:
        raise ValueError("row count must be non-negative")
    return [[field.frob_table(i)[x] for x in a] for i in range(rows)]


@dataclass(frozen=True)
class InterleavedCode:
    field: Field
    s: int
    n: int
    k: tuple[int, ...]
    g: tuple[int, ...]
    h: tuple[int, ...]

    @classmethod
    def build(cls, field: Field, s: int, n: int, k: Sequence[int] | int,
              g: Sequence[int] | None = None, h: Sequence[int] | None = None) -> InterleavedCode:
        """Construct the code; ``g`` and the parity vector ``h`` default as described below.

        For n = m the default g is the dual normal basis beta_perp^{[j]} and h the
        normal basis beta^{[j]}.  For n < m, g is the first n polynomial-basis
        elements and h is derived from the kernel of qvan_{n-1}(g).
        """
        k = (k,) * s if isinstance(k, int) else tuple(k)
        if s < 1 or len(k) != s:
            raise ValueError("need one dimension per interleaved row")
        if not 1 <= n <= field.m:
            raise ValueError(f"need 1 <= n <= m, got n={n}, m={field.m}")
        if any(not 1 <= ki <= n for ki in k):
            raise ValueError(f"elementary dimensions must lie in [1, n], got {k}")
        if g is None:
            if n == field.m:
                nb = find_normal_basis(field)
                g, default_h = nb.dual, nb.basis
            else:
                g, default_h = polynomial_basis(field)[:n], None
            if h is None:
                h = default_h
        g = tuple(g)
        if len(g) != n or rank_over_base(field, [g]) != n:
            raise ValueError("g must hold n elements linearly independent over F_q")
        if h is None:
            h = parity_vector(field, g)
        return cls(field, s, n, k, g, tuple(h))

    @property
    def kmax(self) -> int:
        return max(self.k)

    @property
    def min_distance(self) -> int:
        return self.n - self.kmax + 1

    def with_dims(self, k: Sequence[int]) -> InterleavedCode:
        """Same field, g and h with new elementary dimensions."""
        k = tuple(k)
        if len(k) != self.s or any(not 1 <= ki <= self.n for ki in k):
            raise ValueError(f"invalid elementary dimensions {k} for n={self.n}")
        return InterleavedCode(self.field, self.s, self.n, k, self.g, self.h)


def parity_vector(field: Field, g: Sequence[int]) -> tuple[int, ...]:
    """h such that qvan_{n-k}(h^{[k]}) is a parity-check matrix of Gab[n, k] for every k.

    The kernel of qvan_{n-1}(g) is one-dimensional; h is its generator shifted by [1-n].
    """
    n = len(g)
    if n == 1:
        return (1,)
    ker = linalg.kernel(field, qvandermonde(field, n - 1, g), n)
    assert len(ker) == 1
    return tuple(field.frob(x, 1 - n) for x in ker[0])


def generator_matrix(code: InterleavedCode, i: int) -> list[list[int]]:
    return qvandermonde(code.field, code.k[i], code.g)


def parity_matrix(code: InterleavedCode, i: int) -> list[list[int]]:
    """(n - k^(i)) x n parity-check matrix of the i-th elementary code (i from 0)."""
    ki = code.k[i]
    hi = [code.field.frob(x, ki) for x in code.h]
    return qvandermonde(code.field, code.n - ki, hi)


def syndromes(code: InterleavedCode, r: Word) -> list[list[int]]:
    """s^(i) = r^(i) H^(i)T for every row."""
    return [linalg.matvec(code.field, parity_matrix(code, i), row) for i, row in enumerate(r)]


def check_message(code: InterleavedCode, msg: Sequence[LinPoly]) -> None:
    if len(msg) != code.s:
        raise ValueError(f"expected {code.s} message polynomials, got {len(msg)}")
    for f, ki in zip(msg, code.k):
        if f.degree >= ki:
            raise ValueError(f"message q-degree {f.degree} violates bound < {ki}")


def encode(code: InterleavedCode, msg: Sequence[LinPoly]) -> Word:
    check_message(code, msg)
    return [f.eval_vec(code.g) for f in msg]


def word_add(field: Field, a: Word, b: Word) -> Word:
    add = field.add
    return [[add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def word_sub(field: Field, a: Word, b: Word) -> Word:
    sub = field.sub
    return [[sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def rank_distance(field: Field, a: Word, b: Word) -> int:
    if len(a) != len(b) or any(len(x) != len(y) for x, y in zip(a, b)):
        raise ValueError("shape mismatch")
    return rank_over_base(field, word_sub(field, a, b))


def zero_word(code: InterleavedCode) -> Word:
    return [[0] * code.n for _ in range(code.s)]


# --- word file format: "q m s n" header, then s lines of n element ints -----

def write_word(stream: TextIO, field: Field, word: Word) -> None:
    s, n = len(word), len(word[0]) if word else 0
    stream.write(f"{field.q} {field.m} {s} {n}\n")
    for row in word:
        stream.write(" ".join(str(x) for x in row) + "\n")


def read_word(stream: TextIO) -> tuple[tuple[int, int, int, int], Word]:
    lines = [ln for ln in stream if ln.strip()]
    if not lines:
        raise ValueError("empty word file")
    q, m, s, n = (int(x) for x in lines[0].split())
    rows = [[int(x) for x in ln.split()] for ln in lines[1:1 + s]]
    if len(rows) != s or any(len(r) != n for r in rows):
        raise ValueError(f"word file does not match header {q} {m} {s} {n}")
    if any(not 0 <= x < q**m for r in rows for x in r):
        raise ValueError("element out of range")
    return (q, m, s, n), rows
