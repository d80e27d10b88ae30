"""Exact rank and left kernels of 0/1 matrices over Q and GF(p).

Rows are bit-packed into Python ints (bit j is column j).  Over GF(2)
elimination is a word-parallel XOR; over GF(p) it runs in the compiled
kernel when available; over Q it is fraction-free (Bareiss) elimination on
Python integers, so no floating point is ever involved.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

import numpy as np

from ._backend import kernels


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % d for d in range(3, isqrt(p) + 1, 2))


@dataclass(frozen=True)
class FieldSpec:
    """Rationals (``p is None``) or the prime field GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"GF({self.p}) is not a field: {self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accepts ``Q`` or ``GF<p>`` (case-insensitive), e.g. ``GF2``."""
        t = text.strip().upper()
        if t in ("Q", "QQ", "RATIONALS"):
            return cls(None)
        if t.startswith("GF"):
            body = t[2:].strip("()")
            if body.isdigit():
                return cls(int(body))
        raise ValueError(f"unknown field {text!r}; expected Q or GF<p>")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __str__(self):
        return "Q" if self.p is None else f"GF{self.p}"


Q = FieldSpec()
GF2 = FieldSpec(2)


@dataclass(frozen=True)
class Matrix01:
    nrows: int
    ncols: int
    bits: tuple

    def __post_init__(self):
        if len(self.bits) != self.nrows:
            raise ValueError("row count does not match")
        limit = 1 << self.ncols
        for b in self.bits:
            if not 0 <= b < limit:
                raise ValueError("row has bits outside the column range")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "Matrix01":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        bits = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            v = 0
            for j, x in enumerate(r):
                if x not in (0, 1, True, False):
                    raise ValueError(f"entry {x!r} is not 0/1")
                if x:
                    v |= 1 << j
            bits.append(v)
        return cls(len(rows), ncols, tuple(bits))

    @classmethod
    def from_array(cls, arr) -> "Matrix01":
        arr = np.asarray(arr)
        return cls.from_rows(arr.astype(int).tolist(), arr.shape[1] if arr.ndim == 2 else 0)

    @classmethod
    def identity(cls, n: int) -> "Matrix01":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def ones(cls, nrows: int, ncols: int) -> "Matrix01":
        return cls(nrows, ncols, ((1 << ncols) - 1,) * nrows)

    def __getitem__(self, ij):
        i, j = ij
        return (self.bits[i] >> j) & 1

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def rows(self) -> list[list[int]]:
        return [[(b >> j) & 1 for j in range(self.ncols)] for b in self.bits]

    def to_array(self) -> np.ndarray:
        return np.array(self.rows(), dtype=np.int64).reshape(self.nrows, self.ncols)

    def row_strings(self) -> list[str]:
        return ["".join("1" if (b >> j) & 1 else "0" for j in range(self.ncols)) for b in self.bits]

    def transpose(self) -> "Matrix01":
        cols = [0] * self.ncols
        for i, b in enumerate(self.bits):
            j = 0
            while b:
                if b & 1:
                    cols[j] |= 1 << i
                b >>= 1
                j += 1
        return Matrix01(self.ncols, self.nrows, tuple(cols))

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix01":
        cols = list(cols)
        out = []
        for i in rows:
            b = self.bits[i]
            v = 0
            for jj, j in enumerate(cols):
                if (b >> j) & 1:
                    v |= 1 << jj
            out.append(v)
        return Matrix01(len(out), len(cols), tuple(out))

    def permuted(self, row_order: Sequence[int], col_order: Sequence[int]) -> "Matrix01":
        return self.submatrix(row_order, col_order)

    def to_text(self) -> str:
        """Serialize: a ``rows cols`` line followed by one 0/1 string per row."""
        lines = [f"{self.nrows} {self.ncols}"] + self.row_strings()
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Matrix01":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        try:
            nrows, ncols = (int(x) for x in lines[0].split())
        except ValueError:
            raise ValueError(f"bad header line {lines[0]!r}") from None
        body = lines[1:]
        if len(body) != nrows:
            raise ValueError(f"expected {nrows} rows, found {len(body)}")
        rows = []
        for ln in body:
            if len(ln) != ncols or set(ln) - {"0", "1"}:
                raise ValueError(f"bad matrix row {ln!r}")
            rows.append([int(c) for c in ln])
        return cls.from_rows(rows, ncols)


def _check_field(field: FieldSpec | None) -> FieldSpec:
    if field is None:
        return Q
    if not isinstance(field, FieldSpec):
        raise TypeError("field must be a FieldSpec")
    return field


def _rank_gf2(bits: Sequence[int]) -> int:
    # pivots keyed by their lowest set bit
    pivots: dict[int, int] = {}
    rank = 0
    for b in bits:
        while b:
            low = b & -b
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = b
                rank += 1
                break
            b ^= piv
    return rank


def _rank_bareiss(rows: list[list[int]]) -> int:
    """Fraction-free elimination; every intermediate stays an exact integer."""
    a = [r[:] for r in rows if any(r)]
    if not a:
        return 0
    m, ncols = len(a), len(a[0])
    prev = 1
    rank = 0
    col = 0
    while rank < m and col < ncols:
        piv = next((i for i in range(rank, m) if a[i][col]), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        prow = a[rank]
        p = prow[col]
        for i in range(rank + 1, m):
            row = a[i]
            f = row[col]
            if f:
                a[i] = [(p * x - f * y) // prev for x, y in zip(row, prow)]
            elif p != prev:
                a[i] = [(p * x) // prev for x in row]
        prev = p
        rank += 1
        col += 1
    return rank


# rank mod p never exceeds rank over Q, so a full rank mod this prime is
# already the exact answer and Bareiss only runs on deficient matrices
SCREEN_PRIME = 2_147_483_647


def rank(m: Matrix01, field: FieldSpec | None = None, screen: bool = True) -> int:
    """Exact rank of a 0/1 matrix over Q (default) or GF(p)."""
    field = _check_field(field)
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if field.p == 2:
        return _rank_gf2(m.bits)
    if field.p is not None:
        return int(kernels.rank_mod_p(m.to_array(), field.p))
    if screen:
        r = int(kernels.rank_mod_p(m.to_array(), SCREEN_PRIME))
        if r == min(m.nrows, m.ncols):
            return r
    return _rank_bareiss(m.rows())


def _nullspace_left(m: Matrix01, field: FieldSpec) -> list[list]:
    """Basis of {v : v m = 0}, from the RREF of m transposed."""
    t = m.transpose().rows()          # ncols x nrows; we solve t v = 0
    nvars = m.nrows
    if field.p is None:
        a = [[Fraction(x) for x in r] for r in t]
        inv = lambda x: 1 / x
        norm = lambda x: x
    else:
        p = field.p
        a = [[x % p for x in r] for r in t]
        inv = lambda x: pow(x, p - 2, p)
        norm = lambda x: x % p
    pivots = []
    r = 0
    for c in range(nvars):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        s = inv(a[r][c])
        a[r] = [norm(x * s) for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [norm(x - f * y) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(nvars) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [0] * nvars
        v[fc] = 1
        for row, pc in enumerate(pivots):
            v[pc] = norm(-a[row][fc])
        basis.append(v)
    return basis


def _integral(v: list) -> list[int]:
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    w = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    w = [x // g for x in w] if g else w
    first = next((x for x in w if x), 0)
    return [-x for x in w] if first < 0 else w


def _symmetric(v: list[int], p: int) -> list[int]:
    return [x - p if x > p // 2 else x for x in v]


def kernel_vector(m: Matrix01, field: FieldSpec | None = None) -> list[int] | None:
    """A nonzero v with v . m = 0, or None when the rows are independent.

    Among the basis vectors found, one with all entries in {-1, 0, 1} is
    preferred (the smallest support wins); otherwise the first basis vector
    is returned, scaled to a primitive integer vector over Q or written with
    symmetric residues over GF(p).
    """
    field = _check_field(field)
    basis = _nullspace_left(m, field)
    if not basis:
        return None
    if field.p is None:
        cands = [_integral(v) for v in basis]
    else:
        cands = [_symmetric([int(x) for x in v], field.p) for v in basis]
    unit = [v for v in cands if all(x in (-1, 0, 1) for x in v)]
    if unit:
        return min(unit, key=lambda v: sum(1 for x in v if x))
    return cands[0]


def left_multiply(v: Sequence[int], m: Matrix01) -> list[int]:
    """Exact integer product v . m."""
    out = [0] * m.ncols
    for coeff, b in zip(v, m.bits):
        if not coeff:
            continue
        j = 0
        while b:
            if b & 1:
                out[j] += coeff
            b >>= 1
            j += 1
    return out


def pivot_columns(m: Matrix01, field: FieldSpec | None = None) -> list[int]:
    """Indices of the first maximal independent set of columns, left to right."""
    field = _check_field(field)
    p = field.p
    basis: dict[int, list] = {}       # pivot row -> reduced column vector
    chosen = []
    for j, col in enumerate(m.transpose().bits):
        v = [Fraction((col >> i) & 1) if p is None else (col >> i) & 1 for i in range(m.nrows)]
        for r, b in basis.items():
            f = v[r]
            if f:
                v = [x - f * y for x, y in zip(v, b)] if p is None else \
                    [(x - f * y) % p for x, y in zip(v, b)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            continue
        s = 1 / v[piv] if p is None else pow(v[piv], p - 2, p)
        v = [x * s for x in v] if p is None else [(x * s) % p for x in v]
        # keep earlier basis vectors reduced at the new pivot
        for r, b in list(basis.items()):
            f = b[piv]
            if f:
                basis[r] = [x - f * y for x, y in zip(b, v)] if p is None else \
                    [(x - f * y) % p for x, y in zip(b, v)]
        basis[piv] = v
        chosen.append(j)
        if len(chosen) == m.nrows:
            break
    return chosen
