"""Prime fields F_q and their extensions F_{q^m}.

Elements of F_{q^m} are plain ints: the base-q digits of the int, low digit
first, are the coordinates in the polynomial basis 1, x, ..., x^{m-1}.  For
q = 2 this is the usual bit-vector representation and addition is XOR.

Multiplication goes through exp/log tables built from a primitive element, so
fields are limited to q^m <= 2^20.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

MAX_ORDER = 1 << 20


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q**0.5) + 1))


# --- polynomials over F_q as coefficient lists, low degree first -----------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], q: int) -> list[int]:
    r = list(a)
    _poly_trim(r)
    db = len(b) - 1
    inv_lead = pow(b[-1], q - 2, q) if q > 2 else 1
    while len(r) - 1 >= db:
        c = (r[-1] * inv_lead) % q
        shift = len(r) - 1 - db
        for i, bi in enumerate(b):
            r[shift + i] = (r[shift + i] - c * bi) % q
        _poly_trim(r)
    return r


def is_irreducible(poly: Sequence[int], q: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2 over F_q."""
    deg = len(poly) - 1
    if deg < 1 or poly[-1] == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(q), repeat=d):
            if not _poly_mod(poly, list(low) + [1], q):
                return False
    return True


def first_irreducible(q: int, m: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree m (low coefficient first)."""
    for low in itertools.product(range(q), repeat=m):
        cand = list(low) + [1]
        if is_irreducible(cand, q):
            return tuple(cand)
    raise ValueError(f"no irreducible polynomial of degree {m} over F_{q}")  # pragma: no cover


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class Field:
    """The finite field F_{q^m} for prime q.

    ``Field(2, 7)`` builds F_{2^7} over the lexicographically first irreducible
    modulus; pass ``modulus`` (low coefficient first, monic) to override it.
    """

    def __init__(self, q: int, m: int, modulus: Sequence[int] | None = None):
        if not is_prime(q):
            raise ValueError(f"q must be prime, got {q}")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        if q**m > MAX_ORDER:
            raise ValueError(f"q^m = {q**m} exceeds the table limit {MAX_ORDER}")
        if modulus is None:
            modulus = first_irreducible(q, m)
        modulus = tuple(int(c) % q for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if not is_irreducible(modulus, q):
            raise ValueError(f"modulus {modulus} is reducible over F_{q}")
        self.q = q
        self.m = m
        self.modulus = modulus
        self.order = q**m
        self._n1 = self.order - 1
        self._qpow = [pow(q, i, self._n1) if self._n1 > 1 else 1 for i in range(m)]
        self._digit_weights = [q**i for i in range(m)]
        self._build_tables()
        self._frob_cache: dict[int, list[int]] = {}
        if q == 2:
            self.add = self.sub = _xor
            self.neg = _identity

    def __repr__(self) -> str:
        return f"Field(q={self.q}, m={self.m}, modulus={self.modulus})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.q, self.m, self.modulus) == (
            other.q, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.q, self.m, self.modulus))

    def __reduce__(self):
        return (Field, (self.q, self.m, self.modulus))

    # -- digits ---------------------------------------------------------------

    def digits(self, a: int) -> list[int]:
        """Polynomial-basis coordinates of ``a`` (length m, low first)."""
        q = self.q
        out = []
        for _ in range(self.m):
            a, d = divmod(a, q)
            out.append(d)
        return out

    def from_digits(self, digits: Iterable[int]) -> int:
        return sum((int(d) % self.q) * w for d, w in zip(digits, self._digit_weights))

    def elements(self) -> range:
        return range(self.order)

    # -- raw arithmetic (table construction only) -----------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        q, m = self.q, self.m
        if q == 2:
            red = self.from_digits(self.modulus[:m])
            top = 1 << m
            p = 0
            while b:
                if b & 1:
                    p ^= a
                b >>= 1
                a <<= 1
                if a & top:
                    a ^= top | red
            return p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % q
        return self.from_digits(_poly_mod(prod, self.modulus, q) + [0] * m)

    def _pow_raw(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return r

    def _build_tables(self) -> None:
        n1 = self._n1
        if n1 == 1:
            gen = 1
        else:
            factors = _prime_factors(n1)
            gen = next(
                a for a in range(2, self.order)
                if all(self._pow_raw(a, n1 // p) != 1 for p in factors))
        self.generator = gen
        exp = [0] * (2 * n1)
        log = [0] * self.order
        x = 1
        for i in range(n1):
            exp[i] = x
            log[x] = i
            x = self._mul_raw(x, gen)
        exp[n1:] = exp[:n1]
        self._exp = exp
        self._log = log

    # -- public arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        q, out, w = self.q, 0, 1
        while a or b:
            a, da = divmod(a, q)
            b, db = divmod(b, q)
            out += ((da + db) % q) * w
            w *= q
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        q, out, w = self.q, 0, 1
        while a:
            a, d = divmod(a, q)
            out += ((-d) % q) * w
            w *= q
        return out

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self._n1 - self._log[a]) % self._n1]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if a == 0:
            return 0
        return self._exp[(self._log[a] - self._log[b]) % self._n1]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % self._n1]

    def scalar(self, c: int, a: int) -> int:
        """Multiply ``a`` by the base-field scalar ``c``."""
        return self.mul(c % self.q, a)

    def frob_table(self, i: int) -> list[int]:
        """Lookup list for a -> a^{q^i}; ``i`` is taken mod m."""
        i %= self.m
        table = self._frob_cache.get(i)
        if table is None:
            if i == 0 or self._n1 == 1:
                table = list(range(self.order))
            else:
                exp, log, e, n1 = self._exp, self._log, self._qpow[i], self._n1
                table = [0] + [exp[(log[a] * e) % n1] for a in range(1, self.order)]
            self._frob_cache[i] = table
        return table

    def frob(self, a: int, i: int = 1) -> int:
        """a^{[i]} = a^{q^i}; negative i applies the inverse automorphism."""
        return self.frob_table(i)[a]

    def trace(self, a: int) -> int:
        """Absolute trace to F_q, returned as an int in [0, q)."""
        t = 0
        for i in range(self.m):
            t = self.add(t, self.frob(a, i))
        return t

    @cached_property
    def prime_field(self) -> Field:
        return self if self.m == 1 else Field(self.q, 1)


def _xor(a: int, b: int) -> int:
    return a ^ b


def _identity(a: int) -> int:
    return a


def field_make(q: int, m: int, modulus: Sequence[int] | None = None) -> Field:
    return Field(q, m, modulus)


# --- rank over the base field ------------------------------------------------

def expand_rows(field: Field, rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Expand each F_{q^m} row into m rows over F_q (one per coordinate)."""
    out = []
    for row in rows:
        dig = [field.digits(a) for a in row]
        for l in range(field.m):
            out.append([d[l] for d in dig])
    return out


def rank_mod_q(rows: Sequence[Sequence[int]], q: int) -> int:
    """Rank of an integer matrix over the prime field F_q."""
    if q == 2:
        basis: dict[int, int] = {}
        for row in rows:
            v = 0
            for j, x in enumerate(row):
                if x & 1:
                    v |= 1 << j
            while v:
                top = v.bit_length() - 1
                if top in basis:
                    v ^= basis[top]
                else:
                    basis[top] = v
                    break
        return len(basis)
    mat = [[x % q for x in row] for row in rows]
    rank = 0
    ncols = max((len(r) for r in mat), default=0)
    for c in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][c], q - 2, q)
        mat[rank] = [(x * inv) % q for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % q for x, y in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def rank_over_base(field: Field, rows: Sequence[Sequence[int]]) -> int:
    """F_q-rank of the sm x n expansion of an s x n matrix over F_{q^m}."""
    if field.q == 2:
        m = field.m
        basis: dict[int, int] = {}
        for row in rows:
            for l in range(m):
                v = 0
                for j, a in enumerate(row):
                    if (a >> l) & 1:
                        v |= 1 << j
                while v:
                    top = v.bit_length() - 1
                    b = basis.get(top)
                    if b is None:
                        basis[top] = v
                        break
                    v ^= b
        return len(basis)
    return rank_mod_q(expand_rows(field, rows), field.q)


# --- bases -------------------------------------------------------------------

@dataclass(frozen=True)
class BasisPair:
    basis: tuple[int, ...]
    dual: tuple[int, ...]
    is_normal: bool

    def coords(self, field: Field, a: int) -> list[int]:
        """Coordinates of ``a`` with respect to ``basis`` (via the dual basis)."""
        return [field.trace(field.mul(a, d)) for d in self.dual]


def dual_basis(field: Field, basis: Sequence[int]) -> tuple[int, ...]:
    """Trace-dual basis: Tr(basis_i * dual_j) = delta_ij."""
    from gabinterp import linalg

    m = field.m
    if len(basis) != m or rank_over_base(field, [basis]) != m:
        raise ValueError("not a basis")
    pf = field.prime_field
    gram = [[field.trace(field.mul(a, b)) for b in basis] for a in basis]
    inv = linalg.inverse(pf, gram)
    dual = []
    for j in range(m):
        d = 0
        for l in range(m):
            d = field.add(d, field.scalar(inv[j][l], basis[l]))
        dual.append(d)
    return tuple(dual)


def find_normal_basis(field: Field) -> BasisPair:
    """First element (in int order) generating a normal basis, plus its dual."""
    for beta in range(1, field.order):
        orbit = [field.frob(beta, i) for i in range(field.m)]
        if rank_over_base(field, [orbit]) == field.m:
            return BasisPair(tuple(orbit), dual_basis(field, orbit), True)
    raise AssertionError("every finite field has a normal basis")  # pragma: no cover


def polynomial_basis(field: Field) -> tuple[int, ...]:
    return tuple(field.q**i for i in range(field.m))
