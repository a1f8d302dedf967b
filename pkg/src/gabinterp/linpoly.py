"""Linearized (q-)polynomials over F_{q^m}.

``LinPoly(field, coeffs)`` stores ``coeffs[i]`` as the coefficient of x^{[i]}.
Ring multiplication is composition, written ``a @ b`` for a(b(x)).
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Sequence, TextIO

from gabinterp.ffield import Field, rank_over_base


class RemainderError(ArithmeticError):
    """Composition division left a nonzero remainder."""


class LinPoly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def monomial(cls, field: Field, i: int, c: int = 1) -> LinPoly:
        return cls(field, [0] * i + [c])

    @classmethod
    def x(cls, field: Field) -> LinPoly:
        return cls(field, [1])

    @property
    def degree(self) -> float:
        """q-degree; the zero polynomial has degree -inf."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __repr__(self) -> str:
        return f"LinPoly({list(self.coeffs)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LinPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, a: int) -> int:
        f = self.field
        mul, add = f.mul, f.add
        out = 0
        for i, c in enumerate(self.coeffs):
            if c:
                out = add(out, mul(c, f.frob_table(i)[a]))
        return out

    def eval_vec(self, g: Sequence[int]) -> list[int]:
        f = self.field
        mul, add = f.mul, f.add
        out = [0] * len(g)
        for i, c in enumerate(self.coeffs):
            if c:
                fr = f.frob_table(i)
                out = [add(o, mul(c, fr[a])) for o, a in zip(out, g)]
        return out

    def __add__(self, other: LinPoly) -> LinPoly:
        add = self.field.add
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return LinPoly(self.field, [add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)])

    def __neg__(self) -> LinPoly:
        return LinPoly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: LinPoly) -> LinPoly:
        return self + (-other)

    def scale(self, c: int) -> LinPoly:
        """Left scalar multiple c * p(x)."""
        mul = self.field.mul
        return LinPoly(self.field, [mul(c, a) for a in self.coeffs])

    def frob(self, i: int) -> LinPoly:
        """Apply a -> a^{[i]} to every coefficient."""
        fr = self.field.frob_table(i)
        return LinPoly(self.field, [fr[a] for a in self.coeffs])

    def shift(self, i: int) -> LinPoly:
        """p(x) composed with x^{[i]}, i.e. p(x^{[i]})."""
        return LinPoly(self.field, [0] * i + list(self.coeffs))

    def __matmul__(self, other: LinPoly) -> LinPoly:
        return compose(self, other)


def lp_eval(f: LinPoly, a: int) -> int:
    return f(a)


def lp_eval_vec(f: LinPoly, g: Sequence[int]) -> list[int]:
    return f.eval_vec(g)


def compose(a: LinPoly, b: LinPoly) -> LinPoly:
    """c = a(b(x)):  c_k = sum_{i+j=k} a_i * b_j^{[i]}."""
    field = a.field
    if not a.coeffs or not b.coeffs:
        return LinPoly(field)
    mul, add = field.mul, field.add
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ai in enumerate(a.coeffs):
        if not ai:
            continue
        fr = field.frob_table(i)
        for j, bj in enumerate(b.coeffs):
            if bj:
                out[i + j] = add(out[i + j], mul(ai, fr[bj]))
    return LinPoly(field, out)


def min_subspace_poly(field: Field, gens: Iterable[int]) -> LinPoly:
    """Monic linearized polynomial of least q-degree vanishing on span_{F_q}(gens).

    Built one generator at a time: p <- (x^{[1]} - p(v)^{q-1} x) o p, skipping
    generators already in the span.
    """
    p = LinPoly.x(field)
    for v in gens:
        w = p(v)
        if w == 0:
            continue
        lam = LinPoly(field, [field.neg(field.pow(w, field.q - 1)), 1])
        p = compose(lam, p)
    return p


@lru_cache(maxsize=64)
def _lagrange_basis(field: Field, g: tuple[int, ...]) -> tuple[LinPoly, ...]:
    if rank_over_base(field, [g]) != len(g):
        raise ValueError("evaluation points are not linearly independent over F_q")
    out = []
    for i, gi in enumerate(g):
        li = min_subspace_poly(field, g[:i] + g[i + 1:])
        out.append(li.scale(field.inv(li(gi))))
    return tuple(out)


def lagrange(field: Field, g: Sequence[int], vals: Sequence[int]) -> LinPoly:
    """Unique linearized polynomial of q-degree < n with p(g_i) = vals_i."""
    if len(g) != len(vals):
        raise ValueError("length mismatch")
    basis = _lagrange_basis(field, tuple(g))
    n = len(g)
    mul, add = field.mul, field.add
    out = [0] * n
    for v, li in zip(vals, basis):
        if v:
            for j, c in enumerate(li.coeffs):
                out[j] = add(out[j], mul(v, c))
    return LinPoly(field, out)


lp_lagrange = lagrange


def qreverse(p: LinPoly, m: int | None = None) -> LinPoly:
    """Full q-reverse: coefficient j is p_{-j mod m}^{[j]}, j in [0, m)."""
    field = p.field
    m = field.m if m is None else m
    if p.degree >= m:
        raise ValueError("full q-reverse needs q-degree < m")
    return LinPoly(field, [field.frob(p.coeff((-j) % m), j) for j in range(m)])


def mod_xqm(p: LinPoly, m: int | None = None) -> LinPoly:
    """Reduce modulo x^{[m]} - x: fold x^{[i]} onto x^{[i mod m]}."""
    field = p.field
    m = field.m if m is None else m
    if len(p.coeffs) <= m:
        return p
    out = [0] * m
    for i, c in enumerate(p.coeffs):
        out[i % m] = field.add(out[i % m], c)
    return LinPoly(field, out)


def left_divmod(c: LinPoly, a: LinPoly) -> tuple[LinPoly, LinPoly]:
    """(f, rem) with c = a o f + rem and deg rem < deg a."""
    if a.is_zero():
        raise ZeroDivisionError("composition division by zero polynomial")
    field = c.field
    da = len(a.coeffs) - 1
    lead_inv = field.inv(a.coeffs[-1])
    f = [0] * max(len(c.coeffs) - da, 0)
    rem = c
    while len(rem.coeffs) - 1 >= da:
        d = len(rem.coeffs) - 1 - da
        coef = field.frob(field.mul(rem.coeffs[-1], lead_inv), -da)
        f[d] = coef
        rem = rem - compose(a, LinPoly.monomial(field, d, coef))
    return LinPoly(field, f), rem


def right_divmod(c: LinPoly, b: LinPoly) -> tuple[LinPoly, LinPoly]:
    """(f, rem) with c = f o b + rem and deg rem < deg b."""
    if b.is_zero():
        raise ZeroDivisionError("composition division by zero polynomial")
    field = c.field
    db = len(b.coeffs) - 1
    f = [0] * max(len(c.coeffs) - db, 0)
    rem = c
    while len(rem.coeffs) - 1 >= db:
        d = len(rem.coeffs) - 1 - db
        coef = field.div(rem.coeffs[-1], field.frob(b.coeffs[-1], d))
        f[d] = coef
        rem = rem - compose(LinPoly.monomial(field, d, coef), b)
    return LinPoly(field, f), rem


def left_divide(c: LinPoly, a: LinPoly) -> LinPoly:
    """f with c = a o f; raises RemainderError if the division is not exact."""
    f, rem = left_divmod(c, a)
    if not rem.is_zero():
        raise RemainderError("nonzero remainder in left composition division")
    return f


def right_divide(c: LinPoly, b: LinPoly) -> LinPoly:
    """f with c = f o b; raises RemainderError if the division is not exact."""
    f, rem = right_divmod(c, b)
    if not rem.is_zero():
        raise RemainderError("nonzero remainder in right composition division")
    return f


def coordinate_matrix(p: LinPoly, points: Sequence[int], basis_dual: Sequence[int]) -> list[list[int]]:
    """F_q matrix P with p(points_j) = sum_l basis_l * P[l][j], given the dual of ``basis``."""
    field = p.field
    vals = p.eval_vec(points)
    return [[field.trace(field.mul(v, d)) for v in vals] for d in basis_dual]


# --- text format: whitespace-separated element ints, low q-degree first ------

def format_poly(p: LinPoly) -> str:
    return " ".join(str(c) for c in p.coeffs) if p.coeffs else "0"


def parse_poly(field: Field, line: str) -> LinPoly:
    vals = [int(tok) for tok in line.split()]
    for v in vals:
        if not 0 <= v < field.order:
            raise ValueError(f"element {v} out of range for {field}")
    return LinPoly(field, vals)


def write_polys(stream: TextIO, polys: Iterable[LinPoly]) -> None:
    for p in polys:
        stream.write(format_poly(p) + "\n")


def read_polys(field: Field, stream: TextIO) -> list[LinPoly]:
    return [parse_poly(field, line) for line in stream if line.strip()]
