"""Interpolation-based list and probabilistic unique decoding of interleaved Gabidulin codes.

Decoding is two linear solves.  The interpolation step finds every
Q(x, y_1..y_s) = Q_0(x) + sum_i Q_i(y_i) with deg_q Q_0 < n - tau and
deg_q Q_i < n - tau - k^(i) + 1 that vanishes on the points (g_j, r_j^(1..s)).
Any message tuple within rank distance tau of r satisfies
Q_0 + sum_i Q_i o f^(i) = 0, which is linear in the message coefficients.

Unknowns of the root-finding system are u_b^(i) = f_b^(i)[-b]; block row l
is the coefficient of x^{[l]} in that identity, raised to [-l].  Columns
are ordered by coefficient index b, then row i, skipping b >= k^(i).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from gabinterp import linalg
from gabinterp.codes import InterleavedCode, MessageTuple, Word, encode, qvandermonde, rank_distance
from gabinterp.linpoly import LinPoly

DEFAULT_LIST_CAP = 65536


class Mode(str, enum.Enum):
    UNIQUE = "unique"
    LIST = "list"


class Kind(str, enum.Enum):
    UNIQUE = "unique"
    LIST = "list"
    FAILURE = "failure"


class FailureReason(str, enum.Enum):
    RANK_DEFICIENT = "rank-deficient"
    LIST_OVERFLOW = "list-overflow"
    RADIUS_EXCEEDED = "radius-exceeded"


@dataclass
class DecodeOutcome:
    kind: Kind
    messages: tuple[MessageTuple, ...] = ()
    failure_reason: FailureReason | None = None
    tau: int = 0
    d_i: int = 0
    rank_q: int = 0
    n_unknowns: int = 0
    extra: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.kind is not Kind.FAILURE


def radius_list(code: InterleavedCode) -> int:
    """Largest tau with (s+1) tau < s n - sum k + s."""
    num = code.s * code.n - sum(code.k) + code.s
    return max((num - 1) // (code.s + 1), 0) if num > 0 else 0


def radius_unique(code: InterleavedCode) -> int:
    """floor((s n - sum k) / (s + 1))."""
    return max((code.s * code.n - sum(code.k)) // (code.s + 1), 0)


def block_widths(code: InterleavedCode, tau: int) -> list[int]:
    """Coefficient counts of Q_0, Q_1, ..., Q_s."""
    return [code.n - tau] + [code.n - tau - ki + 1 for ki in code.k]


def build_interp_matrix(code: InterleavedCode, r: Word, tau: int) -> list[list[int]]:
    """n x (n - tau + sum(n - tau - k^(i) + 1)) matrix R with R q^T = 0 encoding the interpolation constraints."""
    if tau < 0:
        raise ValueError("tau must be non-negative")
    widths = block_widths(code, tau)
    if any(w <= 0 for w in widths):
        raise ValueError(f"tau={tau} leaves an empty coefficient block for k={code.k}, n={code.n}")
    field = code.field
    blocks = [qvandermonde(field, widths[0], code.g)]
    blocks += [qvandermonde(field, w, row) for w, row in zip(widths[1:], r)]
    return [[x for blk in blocks for x in (b[j] for b in blk)] for j in range(code.n)]


@dataclass
class InterpSolution:
    basis: list[list[int]]
    tau: int
    widths: list[int]

    @property
    def d_i(self) -> int:
        return len(self.basis)

    def split(self, h: int) -> list[list[int]]:
        """Coefficient lists [q_0, q_1, ..., q_s] of the h-th basis polynomial."""
        out, pos = [], 0
        v = self.basis[h]
        for w in self.widths:
            out.append(v[pos:pos + w])
            pos += w
        return out

    def polys(self, field, h: int) -> list[LinPoly]:
        return [LinPoly(field, c) for c in self.split(h)]


def interpolate(code: InterleavedCode, r: Word, tau: int) -> InterpSolution:
    mat = build_interp_matrix(code, r, tau)
    basis = linalg.kernel(code.field, mat)
    return InterpSolution(basis, tau, block_widths(code, tau))


def unknown_columns(code: InterleavedCode) -> list[tuple[int, int]]:
    """(b, i) for every message coefficient f_b^(i), in system column order."""
    return [(b, i) for b in range(code.kmax) for i in range(code.s) if b < code.k[i]]


def q0_matrix(sol: InterpSolution) -> list[list[int]]:
    """d_I x s matrix of the q_{i,0} (i = 1..s)."""
    return [[sol.basis[h][pos] for pos in _zero_positions(sol)[1:]] for h in range(sol.d_i)]


def q0bar_matrix(sol: InterpSolution) -> list[list[int]]:
    """d_I x (s+1) matrix of q_{0,0}, q_{1,0}, ..., q_{s,0}."""
    pos = _zero_positions(sol)
    return [[sol.basis[h][p] for p in pos] for h in range(sol.d_i)]


def _zero_positions(sol: InterpSolution) -> list[int]:
    return list(itertools.accumulate([0] + sol.widths[:-1]))


def build_rootfind_system(sol: InterpSolution, code: InterleavedCode) -> tuple[list[list[int]], list[int]]:
    """Root-finding matrix Q ((n - tau) d_I x sum k) and right-hand side q_0.

    Row (l, h): sum_{b, i} q^{(h)}_{i, l-b}^{[-l]} u_b^(i) = -q^{(h)}_{0, l}^{[-l]}.
    """
    field = code.field
    n_rows = code.n - sol.tau
    cols = unknown_columns(code)
    neg = field.neg
    split = [sol.split(h) for h in range(sol.d_i)]
    mat, rhs = [], []
    for l in range(n_rows):
        fr = field.frob_table(-l)
        for parts in split:
            row = []
            for b, i in cols:
                qi = parts[i + 1]
                j = l - b
                row.append(fr[qi[j]] if 0 <= j < len(qi) else 0)
            mat.append(row)
            rhs.append(neg(fr[parts[0][l]]))
    return mat, rhs


def unknowns_to_messages(code: InterleavedCode, u: Sequence[int]) -> MessageTuple:
    field = code.field
    coeffs = [[0] * ki for ki in code.k]
    for (b, i), val in zip(unknown_columns(code), u):
        coeffs[i][b] = field.frob(val, b)
    return tuple(LinPoly(field, c) for c in coeffs)


def solve_recursive(sol: InterpSolution, code: InterleavedCode) -> list[int] | None:
    """Block forward substitution through the lower block-triangular system.

    Requires rk(Q_0) = s.  Each step solves the d_I x |block| system with
    diagonal block Q_0^{[-b]}; the result is checked against the whole system,
    and None is returned if it is inconsistent.
    """
    field = code.field
    mul, add, sub, neg = field.mul, field.add, field.sub, field.neg
    split = [sol.split(h) for h in range(sol.d_i)]
    n_rows = code.n - sol.tau
    solved: dict[tuple[int, int], int] = {}
    for b in range(code.kmax):
        fr = field.frob_table(-b)
        block = [i for i in range(code.s) if b < code.k[i]]
        lhs, rhs = [], []
        for parts in split:
            acc = neg(fr[parts[0][b]])
            for (bb, i), val in solved.items():
                j = b - bb
                qi = parts[i + 1]
                if val and 0 <= j < len(qi):
                    acc = sub(acc, mul(fr[qi[j]], val))
            lhs.append([fr[parts[i + 1][0]] for i in block])
            rhs.append(acc)
        x, ker = linalg.solve_affine(field, lhs, rhs)
        if x is None:
            return None
        if ker:
            raise ValueError("recursive solver needs a full-rank Q_0 block")
        for i, val in zip(block, x):
            solved[(b, i)] = val
    u = [solved[c] for c in unknown_columns(code)]
    # rows l >= kmax are not used by the recursion
    for l in range(code.kmax, n_rows):
        fr = field.frob_table(-l)
        for parts in split:
            acc = fr[parts[0][l]]
            for (b, i), val in solved.items():
                j = l - b
                qi = parts[i + 1]
                if val and 0 <= j < len(qi):
                    acc = add(acc, mul(fr[qi[j]], val))
            if acc:
                return None
    return u


def _within(code: InterleavedCode, r: Word, msg: MessageTuple, tau: int) -> bool:
    return rank_distance(code.field, encode(code, msg), r) <= tau


def root_find(sol: InterpSolution, code: InterleavedCode, r: Word, mode: Mode | str = Mode.UNIQUE,
              list_cap: int = DEFAULT_LIST_CAP) -> DecodeOutcome:
    """Find the message tuples annihilating every interpolation basis polynomial.

    Unique mode declares failure unless Q has full column rank; list mode
    enumerates the affine solution space and keeps the tuples within rank
    distance tau of ``r``.
    """
    mode = Mode(mode)
    field = code.field
    n_unknowns = sum(code.k)
    base = dict(tau=sol.tau, d_i=sol.d_i, n_unknowns=n_unknowns)
    if mode is Mode.UNIQUE:
        q0 = q0_matrix(sol)
        if linalg.rank(field, q0) == code.s:
            u = solve_recursive(sol, code)
            rank_q = n_unknowns
        else:
            mat, rhs = build_rootfind_system(sol, code)
            rank_q = linalg.rank(field, mat)
            if rank_q < n_unknowns:
                return DecodeOutcome(Kind.FAILURE, failure_reason=FailureReason.RANK_DEFICIENT,
                                     rank_q=rank_q, **base)
            u, _ = linalg.solve_affine(field, mat, rhs)
        if u is None:
            return DecodeOutcome(Kind.FAILURE, failure_reason=FailureReason.RADIUS_EXCEEDED,
                                 rank_q=rank_q, **base)
        msg = unknowns_to_messages(code, u)
        if not _within(code, r, msg, sol.tau):
            return DecodeOutcome(Kind.FAILURE, failure_reason=FailureReason.RADIUS_EXCEEDED,
                                 rank_q=rank_q, **base)
        return DecodeOutcome(Kind.UNIQUE, (msg,), rank_q=rank_q, **base)

    mat, rhs = build_rootfind_system(sol, code)
    x, ker = linalg.solve_affine(field, mat, rhs)
    rank_q = n_unknowns - len(ker)
    if x is None:
        return DecodeOutcome(Kind.LIST, (), rank_q=rank_q, **base)
    if field.order ** len(ker) > list_cap:
        return DecodeOutcome(Kind.FAILURE, failure_reason=FailureReason.LIST_OVERFLOW,
                             rank_q=rank_q, extra={"affine_dim": len(ker)}, **base)
    found = []
    add, mul = field.add, field.mul
    for combo in itertools.product(range(field.order), repeat=len(ker)):
        u = list(x)
        for c, v in zip(combo, ker):
            if c:
                u = [add(a, mul(c, b)) for a, b in zip(u, v)]
        msg = unknowns_to_messages(code, u)
        if _within(code, r, msg, sol.tau):
            found.append(msg)
    return DecodeOutcome(Kind.LIST, tuple(found), rank_q=rank_q, extra={"affine_dim": len(ker)}, **base)


def decode(code: InterleavedCode, r: Word, mode: Mode | str = Mode.UNIQUE,
           list_cap: int = DEFAULT_LIST_CAP) -> DecodeOutcome:
    """Interpolate at the mode's maximal radius, then root-find once."""
    mode = Mode(mode)
    tau = radius_unique(code) if mode is Mode.UNIQUE else radius_list(code)
    sol = interpolate(code, r, tau)
    return root_find(sol, code, r, mode, list_cap)
