"""Seeded rank-error and erasure channels.

Every sampler takes an explicit ``numpy.random.Generator``.  Monte Carlo
trials get their own stream from :func:`trial_rng`, keyed by (seed, index),
so results do not depend on trial order or worker count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, TextIO

import numpy as np

from gabinterp.codes import InterleavedCode, Word, word_add
from gabinterp.ffield import Field, rank_mod_q, rank_over_base


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """Counter-based (Philox) stream for one trial."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


def random_full_rank(q: int, rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform rows x cols matrix over F_q of rank min(rows, cols), by rejection."""
    target = min(rows, cols)
    while True:
        mat = rng.integers(0, q, size=(rows, cols))
        if target == 0 or rank_mod_q(mat.tolist(), q) == target:
            return mat


def random_independent(field: Field, count: int, rng: np.random.Generator) -> list[int]:
    """``count`` elements of F_{q^m} linearly independent over F_q."""
    if count > field.m:
        raise ValueError(f"cannot draw {count} independent elements in F_{field.q}^{field.m}")
    while True:
        vals = [int(v) for v in rng.integers(0, field.order, size=count)]
        if rank_over_base(field, [vals]) == count:
            return vals


def fold_rows(field: Field, mat: np.ndarray, s: int) -> Word:
    """Fold an (s*m) x n matrix over F_q into an s x n word (rows i*m..i*m+m-1 are the digits)."""
    m = field.m
    weights = np.array([field.q**l for l in range(m)], dtype=np.int64)
    out = []
    for i in range(s):
        block = mat[i * m:(i + 1) * m]
        out.append([int(v) for v in weights @ block])
    return out


def sample_rank_error(field: Field, s: int, n: int, t: int, rng: np.random.Generator) -> Word:
    """Uniform s x n word whose sm x n expansion has F_q-rank exactly t.

    Drawn as A @ B with A (sm x t) and B (t x n) uniform of full rank; every
    rank-t matrix has the same number |GL_t(F_q)| of such factorizations.
    """
    m, q = field.m, field.q
    if not 0 <= t <= min(s * m, n):
        raise ValueError(f"rank {t} out of range for {s}x{n} over F_{q}^{m}")
    if t == 0:
        return [[0] * n for _ in range(s)]
    a = random_full_rank(q, s * m, t, rng)
    b = random_full_rank(q, t, n, rng)
    return fold_rows(field, (a @ b) % q, s)


def qsc_rank_channel(field: Field, s: int, n: int, p_qsc: float, rng: np.random.Generator) -> tuple[Word, int]:
    """q-ary symmetric rank channel: t ~ Binomial(n, p_qsc), then a uniform rank-t error."""
    if not 0.0 <= p_qsc <= 1.0:
        raise ValueError("p_qsc must lie in [0, 1]")
    t = int(rng.binomial(n, p_qsc))
    return sample_rank_error(field, s, n, t, rng), t


@dataclass(frozen=True)
class ErasureInfo:
    """Receiver-side knowledge: row-erasure vectors a^(i,R) and the common B^(C)."""

    a_row: tuple[tuple[int, ...], ...]
    b_col: tuple[tuple[int, ...], ...]

    @property
    def rho(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.a_row)

    @property
    def gamma(self) -> int:
        return len(self.b_col)

    @classmethod
    def empty(cls, s: int) -> ErasureInfo:
        return cls(tuple(() for _ in range(s)), ())


@dataclass(frozen=True)
class ChannelDraw:
    error: Word
    erasures: ErasureInfo | None
    t_full: int
    full_error: Word  # ground truth a^(i,E) B^(E); for tests only, decoders never see it


def sample_erasure_scenario(code: InterleavedCode, rho: Sequence[int], gamma: int, t: int,
                            rng: np.random.Generator) -> ChannelDraw:
    """Error = row erasures + column erasures + a rank-t full error.

    The full error is drawn first, so with no erasures the draw coincides with
    :func:`sample_rank_error` on the same stream.
    """
    field, s, n = code.field, code.s, code.n
    rho = tuple(rho)
    if len(rho) != s:
        raise ValueError("need one row-erasure count per interleaved row")
    if any(r < 0 or r > field.m for r in rho) or not 0 <= gamma <= n:
        raise ValueError(f"erasure dimensions rho={rho}, gamma={gamma} overflow m={field.m}, n={n}")
    full = sample_rank_error(field, s, n, t, rng)
    err = [row[:] for row in full]
    q = field.q
    a_row = []
    for i, ri in enumerate(rho):
        a = random_independent(field, ri, rng)
        a_row.append(tuple(a))
        if ri:
            b = random_full_rank(q, ri, n, rng)
            err[i] = [field.add(e, x) for e, x in zip(err[i], _combine(field, a, b))]
    b_col = random_full_rank(q, gamma, n, rng) if gamma else np.zeros((0, n), dtype=np.int64)
    if gamma:
        col_part = []
        for i in range(s):
            a_c = [int(v) for v in rng.integers(0, field.order, size=gamma)]
            col_part.append(_combine(field, a_c, b_col))
        err = word_add(field, err, col_part)
    info = ErasureInfo(tuple(a_row), tuple(tuple(int(x) for x in row) for row in b_col))
    return ChannelDraw(err, info, t, full)


def _combine(field: Field, a: Sequence[int], b: np.ndarray) -> list[int]:
    """The row vector a . B for a over F_{q^m} and B over F_q."""
    out = [0] * b.shape[1]
    for ai, brow in zip(a, b):
        for j, c in enumerate(brow):
            if c:
                out[j] = field.add(out[j], field.scalar(int(c), ai))
    return out


# --- erasure file: "s gamma rho_1..rho_s", gamma rows of B^(C), s lines of a^(i,R)

def write_erasures(stream: TextIO, info: ErasureInfo) -> None:
    s = len(info.a_row)
    stream.write(" ".join(str(x) for x in (s, info.gamma, *info.rho)) + "\n")
    for row in info.b_col:
        stream.write(" ".join(str(x) for x in row) + "\n")
    for a in info.a_row:
        stream.write(" ".join(str(x) for x in a) + "\n")


def read_erasures(stream: TextIO, field: Field, n: int) -> ErasureInfo:
    lines = stream.read().split("\n")
    head = [int(x) for x in lines[0].split()]
    s, gamma, rho = head[0], head[1], head[2:]
    if len(rho) != s:
        raise ValueError("erasure header must list one rho per row")
    b_col = tuple(tuple(int(x) for x in lines[1 + j].split()) for j in range(gamma))
    if any(len(r) != n or any(not 0 <= x < field.q for x in r) for r in b_col):
        raise ValueError("column-erasure rows must hold n base-field digits")
    if rank_mod_q(b_col, field.q) != gamma:
        raise ValueError("column-erasure matrix must have full rank")
    a_row = []
    for i in range(s):
        line = lines[1 + gamma + i] if 1 + gamma + i < len(lines) else ""
        a = tuple(int(x) for x in line.split())
        if len(a) != rho[i]:
            raise ValueError(f"row {i}: expected {rho[i]} row-erasure elements")
        if rank_over_base(field, [a]) != len(a):
            raise ValueError(f"row {i}: row-erasure elements must be independent")
        a_row.append(a)
    return ErasureInfo(tuple(a_row), b_col)
