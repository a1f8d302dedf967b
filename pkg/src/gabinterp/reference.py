"""Failure predicates of the two earlier interleaved-Gabidulin decoders, and closed-form bounds.

Only the rank conditions are implemented: the received-word matrix R_R fails
when its rank drops below n - 1, the syndrome matrix S when its rank drops
below t.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from gabinterp import linalg
from gabinterp.codes import InterleavedCode, Word, qvandermonde, syndromes
from gabinterp.interp_decoder import radius_list, radius_unique


def rr_matrix(code: InterleavedCode, r: Word, t: int) -> list[list[int]]:
    """qvan_{n-t-1}(g) stacked over qvan_{n-k^(i)-t}(r^(i)) for every row."""
    heights = [code.n - t - 1] + [code.n - ki - t for ki in code.k]
    if any(h <= 0 for h in heights):
        raise ValueError(f"t={t} gives an empty block")
    mat = qvandermonde(code.field, heights[0], code.g)
    for h, row in zip(heights[1:], r):
        mat += qvandermonde(code.field, h, row)
    return mat


def rr_fails(code: InterleavedCode, r: Word, t: int) -> bool:
    return linalg.rank(code.field, rr_matrix(code, r, t)) < code.n - 1


def syndrome_block(code: InterleavedCode, synd: list[int], i: int, t: int) -> list[list[int]]:
    """(n - k^(i) - t) x (t + 1) block: row a holds s_{n-k-1-t-a+c}^{[t-n+k+1+a]}, c = 0..t."""
    field, n, ki = code.field, code.n, code.k[i]
    rows = n - ki - t
    if rows <= 0:
        raise ValueError(f"t={t} gives an empty syndrome block")
    out = []
    for a in range(rows):
        fr = field.frob_table(t - n + ki + 1 + a)
        base = n - ki - 1 - t - a
        out.append([fr[synd[base + c]] for c in range(t + 1)])
    return out


def syndrome_matrix(code: InterleavedCode, r: Word, t: int) -> list[list[int]]:
    mat = []
    for i, synd in enumerate(syndromes(code, r)):
        mat += syndrome_block(code, synd, i, t)
    return mat


def sb_fails(code: InterleavedCode, r: Word, t: int) -> bool:
    return linalg.rank(code.field, syndrome_matrix(code, r, t)) < t


@dataclass(frozen=True)
class BoundsReport:
    tau_u: int
    tau_list: int
    t: int
    p_lo: float | None
    p_sb: float | None
    p_alt: float
    avg_list: float
    avg_list_excess: float

    def as_dict(self) -> dict:
        return asdict(self)


def bound_lo(q: int, m: int, s: int, t: int) -> Fraction:
    """1 - (1 - 4/q^m)(1 - q^{m(s-t)})^s."""
    return 1 - (1 - Fraction(4, q**m)) * (1 - Fraction(q) ** (m * (s - t))) ** s


def bound_sb(q: int, m: int, s: int, tau: int, t: int) -> Fraction:
    """3.5 q^{-m((s+1)(tau-t)+1)}."""
    return Fraction(7, 2) * Fraction(q) ** (-m * ((s + 1) * (tau - t) + 1))


def bound_alt(q: int, m: int, s: int, n: int, k: tuple[int, ...], tau: int, t: int) -> Fraction:
    """4 q^{-m(s(n-tau) - sum k - t + 1)}, using d_I >= s(n-tau+1) - sum k - t."""
    return 4 * Fraction(q) ** (-m * (s * (n - tau) - sum(k) - t + 1))


def avg_list_excess(q: int, m: int, s: int, n: int, k: tuple[int, ...], tau: int) -> Fraction:
    """4 (q^{m sum k} - 1) q^{(sm+n)tau - tau^2 - smn}: bound on average list size minus one."""
    return 4 * (q ** (m * sum(k)) - 1) * Fraction(q) ** ((s * m + n) * tau - tau * tau - s * m * n)


def bounds(code: InterleavedCode, t: int | None = None) -> BoundsReport:
    """All closed-form failure/list bounds; ``t`` defaults to the unique radius."""
    q, m, s, n, k = code.field.q, code.field.m, code.s, code.n, code.k
    tau_u, tau_l = radius_unique(code), radius_list(code)
    if t is None:
        t = tau_u
    p_lo = float(min(bound_lo(q, m, s, t), 1)) if tau_u >= s and t >= s else None
    p_sb = float(min(bound_sb(q, m, s, tau_u, t), 1)) if tau_u >= s else None
    p_alt = float(min(bound_alt(q, m, s, n, k, tau_u, t), 1))
    excess = avg_list_excess(q, m, s, n, k, tau_l)
    return BoundsReport(tau_u, tau_l, t, p_lo, p_sb, p_alt, float(1 + excess), float(excess))
