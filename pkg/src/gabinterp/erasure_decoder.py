"""Error-erasure decoding for n = m by reduction to errors-only decoding.

Row erasures are annihilated by Lambda^(i,R) on the left, column erasures by
the full q-reverse of Gamma^(C) (composed with x^{[gamma]}) on the right.  The
transformed received word is a codeword of the code with dimensions
k^(i) + rho^(i) + gamma plus an error of rank at most t.
"""

from __future__ import annotations

from dataclasses import dataclass

from gabinterp.channel import ErasureInfo
from gabinterp.codes import InterleavedCode, Word
from gabinterp.ffield import dual_basis
from gabinterp.interp_decoder import (DEFAULT_LIST_CAP, DecodeOutcome, FailureReason, Kind, Mode,
                                      decode)
from gabinterp.linpoly import (LinPoly, RemainderError, compose, lagrange, left_divide,
                               min_subspace_poly, mod_xqm, qreverse, right_divide)


@dataclass(frozen=True)
class ErasureContext:
    gamma_poly: LinPoly
    gamma_rev: LinPoly
    right_factor: LinPoly  # gamma_rev(x^{[gamma]}) mod (x^{[m]} - x)
    lambda_row: tuple[LinPoly, ...]
    d_basis: tuple[int, ...]
    augmented_dims: tuple[int, ...]


def _require_dual_normal(code: InterleavedCode) -> tuple[int, ...]:
    field = code.field
    if code.n != field.m:
        raise ValueError("error-erasure decoding requires n = m")
    g = code.g
    if any(field.frob(g[j], 1) != g[(j + 1) % code.n] for j in range(code.n)):
        raise ValueError("error-erasure decoding requires g to be a (dual) normal basis")
    return dual_basis(field, g)


def build_context(code: InterleavedCode, info: ErasureInfo) -> ErasureContext:
    field = code.field
    g_perp = _require_dual_normal(code)
    if len(info.a_row) != code.s:
        raise ValueError("erasure info has the wrong interleaving order")
    d = []
    for row in info.b_col:
        acc = 0
        for c, b in zip(row, g_perp):
            if c:
                acc = field.add(acc, field.scalar(c, b))
        d.append(acc)
    gam = min_subspace_poly(field, d)
    if gam.degree != info.gamma:
        raise ValueError("column-erasure matrix is not of full rank")
    rev = qreverse(gam)
    right = mod_xqm(rev.shift(info.gamma))
    lams = tuple(min_subspace_poly(field, a) for a in info.a_row)
    for lam, a in zip(lams, info.a_row):
        if lam.degree != len(a):
            raise ValueError("row-erasure elements are not linearly independent")
    aug = tuple(ki + ri + info.gamma for ki, ri in zip(code.k, info.rho))
    return ErasureContext(gam, rev, right, lams, tuple(d), aug)


def modify_received(ctx: ErasureContext, code: InterleavedCode, r: Word) -> tuple[Word, InterleavedCode]:
    """y^(i) = (Lambda^(i,R) o r~^(i) o right_factor mod x^{[m]} - x) evaluated at g."""
    if any(a > code.n for a in ctx.augmented_dims):
        raise ValueError(f"augmented dimensions {ctx.augmented_dims} exceed n={code.n}")
    field = code.field
    y = []
    for lam, row in zip(ctx.lambda_row, r):
        r_poly = lagrange(field, code.g, row)
        y_poly = mod_xqm(compose(compose(lam, r_poly), ctx.right_factor))
        y.append(y_poly.eval_vec(code.g))
    return y, code.with_dims(ctx.augmented_dims)


def decode_error_erasure(code: InterleavedCode, r: Word, info: ErasureInfo,
                         mode: Mode | str = Mode.UNIQUE, list_cap: int = DEFAULT_LIST_CAP) -> DecodeOutcome:
    """Decode the transformed word, then strip Lambda^(i,R) (left) and the right factor."""
    mode = Mode(mode)
    ctx = build_context(code, info)
    y, aug = modify_received(ctx, code, r)
    out = decode(aug, y, mode, list_cap)
    if not out.ok:
        return out
    recovered = []
    for msg in out.messages:
        try:
            f = tuple(right_divide(left_divide(p, lam), ctx.right_factor)
                      for p, lam in zip(msg, ctx.lambda_row))
        except RemainderError:
            if mode is Mode.UNIQUE:
                return DecodeOutcome(Kind.FAILURE, failure_reason=FailureReason.RANK_DEFICIENT,
                                     tau=out.tau, d_i=out.d_i, rank_q=out.rank_q,
                                     n_unknowns=out.n_unknowns, extra={"remainder": True})
            continue
        if any(fi.degree >= ki for fi, ki in zip(f, code.k)):
            if mode is Mode.UNIQUE:
                return DecodeOutcome(Kind.FAILURE, failure_reason=FailureReason.RANK_DEFICIENT,
                                     tau=out.tau, d_i=out.d_i, rank_q=out.rank_q,
                                     n_unknowns=out.n_unknowns, extra={"remainder": True})
            continue
        recovered.append(f)
    return DecodeOutcome(out.kind, tuple(recovered), tau=out.tau, d_i=out.d_i, rank_q=out.rank_q,
                         n_unknowns=out.n_unknowns, extra=dict(out.extra))
