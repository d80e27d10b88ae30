"""Cell structure of Mo_n: J-cells by through-strand count, their Gram
matrices and ranks, truncations, gap bounds and connectedness checks.

Rows of a Gram matrix are indexed by top halves (R-cells) and columns by
bottom halves (L-cells).  An entry is 1 exactly when the diagram built from
that top and bottom is idempotent; H-cells are singletons, so this is the
whole story.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from ._backend import kernels
from .combinatorics import lcell_size, motzkin_number
from .diagram import (
    Diagram,
    HalfDiagram,
    enumerate_halves,
    identity,
    monoid_table,
    through_count,
)
from .linalg import GF2, Q, FieldSpec, Matrix01, pivot_columns, rank


@dataclass(frozen=True)
class CellDecomposition:
    n: int
    halves: dict            # k -> tuple of HalfDiagram, canonical order
    witnesses: dict         # k -> (row, col) of an idempotent in J_k

    def size(self, k: int) -> int:
        return len(self.halves[k])

    def sizes(self) -> list[int]:
        return [len(self.halves[k]) for k in range(self.n + 1)]

    def jcell_order(self) -> list[int]:
        """k values from the top J-cell (identity) down to J_0."""
        return list(range(self.n, -1, -1))


def _jcell_links(n: int, halves: Sequence[HalfDiagram]) -> np.ndarray:
    rows = [Diagram(t, b).links for t in halves for b in halves]
    return np.array(rows, dtype=np.int32).reshape(len(rows), 2 * n)


@lru_cache(maxsize=64)
def _idempotent_grid(n: int, k: int) -> np.ndarray:
    halves = enumerate_halves(n, k)
    m = len(halves)
    if n == 0:
        return np.ones((1, 1), dtype=bool)
    return kernels.idempotent_mask(_jcell_links(n, halves), n).reshape(m, m)


def decompose(n: int) -> CellDecomposition:
    if n < 0:
        raise ValueError("n must be non-negative")
    halves, witnesses = {}, {}
    for k in range(n + 1):
        halves[k] = tuple(enumerate_halves(n, k))
        grid = _idempotent_grid(n, k)
        hits = np.argwhere(grid)
        if len(hits) == 0:
            raise AssertionError(f"J_{k} of Mo_{n} has no idempotent")
        witnesses[k] = tuple(int(x) for x in hits[0])
    return CellDecomposition(n, halves, witnesses)


@dataclass(frozen=True)
class GramMatrix:
    n: int
    k: int
    rows: tuple             # top halves
    cols: tuple             # bottom halves
    matrix: Matrix01

    @property
    def shape(self):
        return self.matrix.shape

    def rank(self, field: FieldSpec | None = None) -> int:
        return rank(self.matrix, field)

    def to_dict(self) -> dict:
        out = {"n": self.n, "k": self.k, "order": [h.code for h in self.rows]}
        if self.cols != self.rows:
            out["columns"] = [h.code for h in self.cols]
        out["rows"] = self.matrix.row_strings()
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@lru_cache(maxsize=64)
def gram_matrix(n: int, k: int) -> GramMatrix:
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    halves = tuple(enumerate_halves(n, k))
    m = Matrix01.from_array(_idempotent_grid(n, k))
    return GramMatrix(n, k, halves, halves, m)


def simple_dimension(n: int, k: int, field: FieldSpec | None = None) -> int:
    return gram_matrix(n, k).rank(field)


def ssdim(n: int, k: int) -> int:
    return lcell_size(n, k)


@dataclass(frozen=True)
class TruncatedMonoid:
    """Diagrams of Mo_n with at most kmax through strands.

    When kmax < n the identity is missing and a formal unit is adjoined;
    ``adjoined_unit`` records that.
    """

    n: int
    kmax: int

    def __post_init__(self):
        if not 0 <= self.kmax <= self.n:
            raise ValueError(f"need 0 <= kmax <= n, got n={self.n}, kmax={self.kmax}")

    @property
    def adjoined_unit(self) -> bool:
        return self.kmax < self.n

    def __contains__(self, d: Diagram) -> bool:
        return d.n == self.n and through_count(d) <= self.kmax

    def size(self) -> int:
        """Number of diagram elements, not counting a formal unit."""
        return sum(lcell_size(self.n, k) ** 2 for k in range(self.kmax + 1))

    def elements(self) -> list[Diagram]:
        t = monoid_table(self.n)
        return [d for d in t.elements if d.k <= self.kmax]

    def _ids(self) -> np.ndarray:
        t = monoid_table(self.n)
        start = int(t.offsets[self.kmax])
        return np.arange(start, len(t.elements))

    def is_closed(self) -> bool:
        t = monoid_table(self.n)
        ids = self._ids()
        prods = t.product_table(ids)[:, ids]
        return bool(np.isin(prods, ids).all())

    def is_ideal(self) -> bool:
        """m*s and s*m stay inside for every s in Mo_n."""
        t = monoid_table(self.n)
        ids = self._ids()
        left = t.product_table(ids)                 # m * s
        right = t.product_table()[:, ids]           # s * m
        return bool(np.isin(left, ids).all() and np.isin(right, ids).all())


def truncate(n: int, kmax: int) -> TruncatedMonoid:
    return TruncatedMonoid(n, kmax)


def _gap_range(n: int, kmax: int, include_trivial: bool) -> range:
    lo = 0 if include_trivial else 1
    if not lo <= kmax <= n:
        raise ValueError(f"need {lo} <= kmax <= n, got n={n}, kmax={kmax}")
    return range(lo, kmax + 1)


def gap(n: int, kmax: int, field: FieldSpec | None = None, include_trivial: bool = False) -> int:
    """Smallest simple dimension over the J-cells k = 1..kmax (0..kmax if asked)."""
    return min(simple_dimension(n, k, field) for k in _gap_range(n, kmax, include_trivial))


def ssgap(n: int, kmax: int, include_trivial: bool = False) -> int:
    return min(ssdim(n, k) for k in _gap_range(n, kmax, include_trivial))


def faith_lower_bound(n: int, k_odd: int) -> int:
    if k_odd % 2 == 0:
        raise ValueError(f"k must be odd, got {k_odd}")
    if not 1 <= k_odd <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k_odd}")
    return ssdim(n, k_odd)


def consecutive_rows(n: int, k: int) -> list[HalfDiagram]:
    """Top halves whose through strands sit on nodes 1..k."""
    return [h for h in enumerate_halves(n, k) if h.through == tuple(range(1, k + 1))]


def consecutive_submatrix(n: int, k: int) -> GramMatrix:
    """Square Gram submatrix on the rows with strands pushed to the left.

    Columns are the leftmost bottom halves whose Gram columns are linearly
    independent over Q on those rows.  If there are too few (a rank defect),
    the next columns in canonical order fill the square so the defect stays
    visible in the rank.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    g = gram_matrix(n, k)
    index = {h: i for i, h in enumerate(g.rows)}
    rows = consecutive_rows(n, k)
    row_ids = [index[h] for h in rows]
    strip = g.matrix.submatrix(row_ids, range(g.matrix.ncols))
    cols = pivot_columns(strip, Q)
    if len(cols) < len(rows):
        extra = [j for j in range(strip.ncols) if j not in set(cols)]
        cols = sorted(cols + extra[:len(rows) - len(cols)])
    return GramMatrix(n, k, tuple(rows), tuple(g.cols[j] for j in cols),
                      g.matrix.submatrix(row_ids, cols))


# connectedness ---------------------------------------------------------

CONNECTED_BLOCK = 512


class _DSU:
    def __init__(self, size):
        self.parent = np.arange(size)

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def classes(self, members) -> int:
        return len({self.find(x) for x in members})


@dataclass
class ConnectednessReport:
    n: int
    size: int
    units: list = field(default_factory=list)
    null_connected: bool = True
    right_classes: int = 0
    left_classes: int = 0

    @property
    def right_connected(self) -> bool:
        return self.right_classes <= 1

    @property
    def left_connected(self) -> bool:
        return self.left_classes <= 1

    @property
    def well_connected(self) -> bool:
        return self.null_connected and self.left_connected and self.right_connected

    @property
    def degenerate(self) -> bool:
        return self.size - len(self.units) <= 1


@lru_cache(maxsize=8)
def connectedness(n: int) -> ConnectednessReport:
    """Brute-force null/left/right connectedness of Mo_n via its product table.

    Right-connected: one class among non-units under a ~ b when ab = a.
    Left-connected: the same for ba = a.
    """
    t = monoid_table(n)
    size = len(t.elements)
    ident = t.index(identity(n))
    right, left = _DSU(size), _DSU(size)
    reached = np.zeros(size, dtype=bool)
    unit_rows = []
    for start in range(0, size, CONNECTED_BLOCK):
        stop = min(size, start + CONNECTED_BLOCK)
        block = t.product_table(slice(start, stop))
        for off, row in enumerate(block):
            a = start + off
            if (row == ident).any():
                unit_rows.append(a)
            if a == ident:
                continue
            nonunit = row.copy()
            nonunit[ident] = -1
            # a * b = a
            for b in np.flatnonzero(nonunit == a):
                right.union(a, int(b))
            # a * b = b, i.e. the left relation for b
            for b in np.flatnonzero(row == np.arange(size)):
                if b != ident:
                    left.union(int(b), a)
            mask = np.ones(size, dtype=bool)
            mask[ident] = False
            reached[row[mask]] = True
    units = sorted(unit_rows)
    if units != [ident]:
        raise AssertionError(f"units of Mo_{n} are {units}, expected only the identity")
    members = [x for x in range(size) if x != ident]
    reached[ident] = True
    return ConnectednessReport(
        n=n,
        size=size,
        units=units,
        null_connected=bool(reached.all()),
        right_classes=right.classes(members),
        left_classes=left.classes(members),
    )


def is_null_connected(n: int) -> bool:
    return connectedness(n).null_connected


def is_right_connected(n: int) -> bool:
    return connectedness(n).right_connected


def is_left_connected(n: int) -> bool:
    return connectedness(n).left_connected


# tables ----------------------------------------------------------------

@dataclass(frozen=True)
class ApexRow:
    n: int
    k: int
    ssdim: int
    ranks: tuple            # (field name, rank) pairs

    @property
    def simple_dimension(self) -> int:
        return self.ranks[0][1]

    def rank(self, field: FieldSpec | str) -> int:
        return dict(self.ranks)[str(field)]


def _apex_row(args) -> ApexRow:
    n, k, fields = args
    return ApexRow(n, k, ssdim(n, k), tuple((str(f), simple_dimension(n, k, f)) for f in fields))


def workers() -> int:
    try:
        return max(1, int(os.environ.get("MOTZKIN_WORKERS", "1")))
    except ValueError:
        return 1


def apex_table(n: int, fields: Sequence[FieldSpec] = (Q, GF2)) -> list[ApexRow]:
    """One row per J-cell k = 0..n: cell size and Gram rank over each field."""
    fields = tuple(fields)
    tasks = [(n, k, fields) for k in range(n + 1)]
    nw = workers()
    if nw > 1 and n >= 6:
        with ProcessPoolExecutor(nw) as pool:
            return list(pool.map(_apex_row, tasks))
    return [_apex_row(t) for t in tasks]


def idempotent_counts(n: int) -> list[int]:
    return [int(_idempotent_grid(n, k).sum()) for k in range(n + 1)]


def submatrix_size(n: int, k: int) -> int:
    return motzkin_number(n - k)
