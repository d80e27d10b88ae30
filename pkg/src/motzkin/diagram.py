"""Motzkin diagrams and the monoid operations on them.

A half-diagram is written as a string over ``. ( ) |``: free node, cup
opening, cup closing, through-strand endpoint.  Nodes are numbered 1..n from
the left.  A diagram pairs a top and a bottom half with the same number k of
through strands; the i-th ``|`` on top is joined to the i-th ``|`` below.

Products stack the left factor on top of the right one.  Interior
components that touch neither outer row (closed loops, and strands or free
points stranded in the middle) are counted and then dropped.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache, total_ordering
from typing import Iterator, Sequence

import numpy as np

from ._backend import kernels

SYMBOLS = ".()|"
_RANK = {c: i for i, c in enumerate(SYMBOLS)}


class DiagramError(ValueError):
    pass


def _check_code(code: str) -> None:
    depth = 0
    for pos, c in enumerate(code, 1):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
            if depth < 0:
                raise DiagramError(f"unmatched ')' at node {pos} in {code!r}")
        elif c == "|":
            if depth:
                raise DiagramError(f"through endpoint {pos} lies inside a cup in {code!r}")
        elif c != ".":
            raise DiagramError(f"bad symbol {c!r} in {code!r}")
    if depth:
        raise DiagramError(f"unclosed cup in {code!r}")


@dataclass(frozen=True)
class HalfDiagram:
    """One row of a diagram, stored as its symbol string."""

    code: str

    def __post_init__(self):
        if not isinstance(self.code, str):
            raise TypeError("code must be a str")
        _check_code(self.code)

    @property
    def n(self) -> int:
        return len(self.code)

    @cached_property
    def cups(self) -> tuple[tuple[int, int], ...]:
        stack, out = [], []
        for pos, c in enumerate(self.code, 1):
            if c == "(":
                stack.append(pos)
            elif c == ")":
                out.append((stack.pop(), pos))
        return tuple(sorted(out))

    @cached_property
    def through(self) -> tuple[int, ...]:
        return tuple(pos for pos, c in enumerate(self.code, 1) if c == "|")

    @property
    def free(self) -> tuple[int, ...]:
        return tuple(pos for pos, c in enumerate(self.code, 1) if c == ".")

    @property
    def k(self) -> int:
        return self.code.count("|")

    @cached_property
    def partners(self) -> tuple[int, ...]:
        """0-based cup partner per node, -1 for free and through nodes."""
        out = [-1] * self.n
        for a, b in self.cups:
            out[a - 1], out[b - 1] = b - 1, a - 1
        return tuple(out)

    @property
    def int_code(self) -> int:
        v = 0
        for c in self.code:
            v = 4 * v + _RANK[c]
        return v

    @classmethod
    def from_int(cls, value: int, n: int) -> "HalfDiagram":
        digits = []
        for _ in range(n):
            value, d = divmod(value, 4)
            digits.append(SYMBOLS[d])
        return cls("".join(reversed(digits)))

    def __str__(self):
        return self.code


def make_half(n: int, cups: Sequence[tuple[int, int]], through: Sequence[int]) -> HalfDiagram:
    """Validating constructor from 1-based cup pairs and through endpoints."""
    if n < 0:
        raise DiagramError("n must be non-negative")
    row = ["."] * n
    used = set()

    def claim(x):
        if not 1 <= x <= n:
            raise DiagramError(f"node {x} out of range 1..{n}")
        if x in used:
            raise DiagramError(f"node {x} used twice")
        used.add(x)

    for a, b in cups:
        if a > b:
            a, b = b, a
        if a == b:
            raise DiagramError(f"degenerate cup ({a},{b})")
        claim(a)
        claim(b)
        row[a - 1], row[b - 1] = "(", ")"
    cups = sorted((min(c), max(c)) for c in cups)
    for i, (a, b) in enumerate(cups):
        for c, d in cups[i + 1:]:
            if a < c < b < d:
                raise DiagramError(f"cups ({a},{b}) and ({c},{d}) cross")
    for x in through:
        claim(x)
        if any(a < x < b for a, b in cups):
            raise DiagramError(f"through endpoint {x} lies inside a cup")
        row[x - 1] = "|"
    return HalfDiagram("".join(row))


@lru_cache(maxsize=None)
def _halves(n: int, k: int) -> tuple[HalfDiagram, ...]:
    out = []
    buf = []

    def rec(pos, depth, t):
        left = n - pos
        if depth + (k - t) > left:
            return
        if left == 0:
            out.append(HalfDiagram("".join(buf)))
            return
        # symbol order . ( ) | makes the output canonically sorted
        buf.append(".")
        rec(pos + 1, depth, t)
        buf[-1] = "("
        rec(pos + 1, depth + 1, t)
        if depth:
            buf[-1] = ")"
            rec(pos + 1, depth - 1, t)
        if depth == 0 and t < k:
            buf[-1] = "|"
            rec(pos + 1, depth, t + 1)
        buf.pop()

    rec(0, 0, 0)
    return tuple(out)


def enumerate_halves(n: int, k: int) -> list[HalfDiagram]:
    """All half-diagrams on n nodes with k through endpoints, canonically ordered."""
    if n < 0 or not 0 <= k <= n:
        raise DiagramError(f"need 0 <= k <= n, got n={n}, k={k}")
    return list(_halves(n, k))


@total_ordering
@dataclass(frozen=True, eq=True)
class Diagram:
    top: HalfDiagram
    bottom: HalfDiagram

    def __post_init__(self):
        if self.top.n != self.bottom.n:
            raise DiagramError(f"row lengths differ: {self.top.n} vs {self.bottom.n}")
        if self.top.k != self.bottom.k:
            raise DiagramError(
                f"through strand counts differ: top {self.top.k}, bottom {self.bottom.k}")

    @classmethod
    def of(cls, top: str, bottom: str) -> "Diagram":
        return cls(HalfDiagram(top), HalfDiagram(bottom))

    @property
    def n(self) -> int:
        return self.top.n

    @property
    def k(self) -> int:
        return self.top.k

    @cached_property
    def links(self) -> tuple[int, ...]:
        n = self.n
        out = list(self.top.partners) + [p + n if p >= 0 else -1 for p in self.bottom.partners]
        for a, b in zip(self.top.through, self.bottom.through):
            out[a - 1] = n + b - 1
            out[n + b - 1] = a - 1
        return tuple(out)

    @classmethod
    def from_links(cls, links: Sequence[int], n: int) -> "Diagram":
        rows = []
        for base, same in ((0, lambda p: 0 <= p < n), (n, lambda p: p >= n)):
            row = []
            for i in range(base, base + n):
                p = links[i]
                if p < 0:
                    row.append(".")
                elif same(p):
                    row.append("(" if p > i else ")")
                else:
                    row.append("|")
            rows.append("".join(row))
        return cls(HalfDiagram(rows[0]), HalfDiagram(rows[1]))

    def sort_key(self):
        return (-self.k, self.top.int_code, self.bottom.int_code)

    def __lt__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return (self.n, self.sort_key()) < (other.n, other.sort_key())

    def __str__(self):
        return f"n={self.n} k={self.k} bottom={self.bottom.code} top={self.top.code}"

    @classmethod
    def parse(cls, text: str) -> "Diagram":
        fields = {}
        for part in text.split():
            key, sep, value = part.partition("=")
            if not sep:
                raise DiagramError(f"expected key=value, got {part!r}")
            fields[key] = value
        try:
            d = cls(HalfDiagram(fields["top"]), HalfDiagram(fields["bottom"]))
        except KeyError as exc:
            raise DiagramError(f"missing field {exc.args[0]!r} in {text!r}") from None
        if "n" in fields and int(fields["n"]) != d.n:
            raise DiagramError(f"n={fields['n']} does not match rows of length {d.n}")
        if "k" in fields and int(fields["k"]) != d.k:
            raise DiagramError(f"k={fields['k']} does not match {d.k} through strands")
        return d

    def __mul__(self, other):
        if isinstance(other, Diagram):
            return product(self, other)
        return NotImplemented

    def __pow__(self, e):
        return power(self, e)


@dataclass(frozen=True)
class CompositionResult:
    product: Diagram
    loops: int


def identity(n: int) -> Diagram:
    row = HalfDiagram("|" * n)
    return Diagram(row, row)


def through_count(d: Diagram) -> int:
    return d.k


def enumerate_jcell(n: int, k: int) -> list[Diagram]:
    halves = enumerate_halves(n, k)
    return [Diagram(t, b) for t in halves for b in halves]


def enumerate_monoid(n: int) -> list[Diagram]:
    """Every element of Mo_n, by k = n down to 0, then (top, bottom) order."""
    out = []
    for k in range(n, -1, -1):
        out.extend(enumerate_jcell(n, k))
    return out


def iter_monoid(n: int) -> Iterator[Diagram]:
    for k in range(n, -1, -1):
        halves = _halves(n, k)
        for t in halves:
            for b in halves:
                yield Diagram(t, b)


def compose(d1: Diagram, d2: Diagram) -> CompositionResult:
    """d1 stacked on top of d2, with the number of interior components."""
    if d1.n != d2.n:
        raise DiagramError(f"cannot compose Mo_{d1.n} with Mo_{d2.n}")
    out, loops = kernels.glue(d1.links, d2.links, d1.n)
    return CompositionResult(Diagram.from_links(out, d1.n), int(loops))


def product(d1: Diagram, d2: Diagram) -> Diagram:
    return compose(d1, d2).product


def tensor(d1: Diagram, d2: Diagram) -> Diagram:
    return Diagram(HalfDiagram(d1.top.code + d2.top.code),
                   HalfDiagram(d1.bottom.code + d2.bottom.code))


def star(d: Diagram) -> Diagram:
    return Diagram(d.bottom, d.top)


def generator(n: int, kind: str, i: int) -> Diagram:
    """The generator l_i, t_i or r_i of Mo_n acting on nodes i and i+1.

    l_i joins bottom node i to top node i+1, r_i joins bottom i+1 to top i,
    t_i has a cup on both rows.  Every other node carries a straight strand.
    """
    if not 1 <= i <= n - 1:
        raise DiagramError(f"generator position {i} out of range 1..{n - 1}")
    local = {"l": (".|", "|."), "t": ("()", "()"), "r": ("|.", ".|")}
    if kind not in local:
        raise DiagramError(f"unknown generator kind {kind!r}; expected l, t or r")
    top, bottom = local[kind]
    pre, post = "|" * (i - 1), "|" * (n - i - 1)
    return Diagram.of(pre + top + post, pre + bottom + post)


def generators(n: int) -> list[Diagram]:
    return [generator(n, kind, i) for i in range(1, n) for kind in "ltr"]


def factorize(d: Diagram) -> tuple[HalfDiagram, int, HalfDiagram]:
    """Split d as (bottom half, k, top half): bottom, then id_k, then top."""
    return d.bottom, d.k, d.top


def rebuild(bottom: HalfDiagram, k: int, top: HalfDiagram) -> Diagram:
    d = Diagram(top, bottom)
    if d.k != k:
        raise DiagramError(f"halves carry {d.k} through strands, not {k}")
    return d


def is_idempotent(d: Diagram) -> bool:
    return product(d, d) == d


def _chain(start: int, end: int, top: HalfDiagram, bottom: HalfDiagram) -> bool:
    # bottom-row cap out of start, then alternate top cup / bottom cap until
    # a top cup lands on end
    tp, bp = top.partners, bottom.partners
    x = start - 1
    seen = set()
    while True:
        y = bp[x]
        if y < 0 or y in seen:
            return False
        seen.add(y)
        z = tp[y]
        if z < 0:
            return False
        if z == end - 1:
            return True
        if z in seen:
            return False
        seen.add(z)
        x = z


def is_idempotent_structural(d: Diagram) -> bool:
    """Idempotency read off the picture.

    Each through strand a (top) -> b (bottom) must be straight, or a must be
    linked to b by an alternating chain that leaves a along a bottom cap and
    reaches b along a top cup.
    """
    for a, b in zip(d.top.through, d.bottom.through):
        if a != b and not _chain(a, b, d.top, d.bottom):
            return False
    return True


def power(d: Diagram, e: int) -> Diagram:
    if e < 0:
        raise ValueError("negative exponent")
    result = identity(d.n)
    base = d
    while e:
        if e & 1:
            result = product(result, base)
        e >>= 1
        if e:
            base = product(base, base)
    return result


def power_period(d: Diagram) -> tuple[int, int]:
    """(index, period): the least i >= 1 and p >= 1 with d^(i+p) == d^i."""
    seen = {}
    x = d
    i = 1
    while x not in seen:
        seen[x] = i
        x = product(x, d)
        i += 1
    first = seen[x]
    return first, i - first


@dataclass
class MonoidTable:
    """Dense indexing of Mo_n for kernel-side batch work."""

    n: int
    elements: list[Diagram]
    links: np.ndarray
    code_index: np.ndarray
    offsets: np.ndarray
    sizes: np.ndarray
    _ids: dict = field(default_factory=dict, repr=False)

    def index(self, d: Diagram) -> int:
        k = d.k
        idx = self.code_index
        return int(self.offsets[k] + idx[d.top.int_code] * self.sizes[k] + idx[d.bottom.int_code])

    def product_table(self, rows: slice | None = None) -> np.ndarray:
        """Ids of products; row i is element ``rows[i]`` times every element."""
        left = self.links if rows is None else self.links[rows]
        return kernels.product_table(left, self.links, self.n,
                                     self.code_index, self.offsets, self.sizes)

    def idempotent_mask(self) -> np.ndarray:
        return kernels.idempotent_mask(self.links, self.n)


@lru_cache(maxsize=8)
def monoid_table(n: int) -> MonoidTable:
    elements = enumerate_monoid(n)
    code_index = np.full(4 ** n, -1, dtype=np.int32)
    sizes = np.zeros(n + 1, dtype=np.int64)
    offsets = np.zeros(n + 1, dtype=np.int64)
    acc = 0
    for k in range(n, -1, -1):
        halves = _halves(n, k)
        for j, h in enumerate(halves):
            code_index[h.int_code] = j
        sizes[k] = len(halves)
        offsets[k] = acc
        acc += len(halves) ** 2
    links = np.array([d.links for d in elements], dtype=np.int32).reshape(len(elements), 2 * n)
    return MonoidTable(n, elements, links, code_index, offsets, sizes)
