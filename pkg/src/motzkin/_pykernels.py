"""Pure-Python kernels; the reference path and the fallback when the
compiled extension is missing.

Diagrams on n nodes are ``links`` vectors of length 2n: indices 0..n-1 are
the top row, n..2n-1 the bottom row, and ``links[i]`` is the partner node
or -1 for a free node.
"""
import numpy as np

NAME = "python"

_RANK = {".": 0, "(": 1, ")": 2, "|": 3}


class UnionFind:
    __slots__ = ("parent",)

    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if rx < ry:
                self.parent[ry] = rx
            else:
                self.parent[rx] = ry


def glue(a, b, n):
    """Stack ``a`` on top of ``b``; return (product links, interior components).

    The three rows of the stack are numbered 0..n-1 (top of a), n..2n-1
    (bottom of a = top of b) and 2n..3n-1 (bottom of b).
    """
    uf = UnionFind(3 * n)
    for i in range(2 * n):
        j = a[i]
        if j > i:
            uf.union(i, j)
        j = b[i]
        if j > i:
            uf.union(i + n, j + n)
    outer = {}
    for x in range(n):
        outer.setdefault(uf.find(x), []).append(x)
    for x in range(2 * n, 3 * n):
        outer.setdefault(uf.find(x), []).append(x - n)
    out = [-1] * (2 * n)
    for nodes in outer.values():
        if len(nodes) == 2:
            x, y = nodes
            out[x] = y
            out[y] = x
    loops = len({uf.find(x) for x in range(n, 2 * n)} - outer.keys())
    return tuple(out), loops


def half_code(links, n, row):
    """Base-4 code of one row (0 = top, 1 = bottom); digits . ( ) | = 0 1 2 3."""
    base = row * n
    code = 0
    through = 0
    for i in range(base, base + n):
        p = links[i]
        if p < 0:
            d = 0
        elif (p < n) == (row == 0):
            d = 1 if p > i else 2
        else:
            d = 3
            through += 1
        code = code * 4 + d
    return code, through


def product_table(left, right, n, code_index, offsets, sizes):
    """Element ids of every product ``left[i] * right[j]``.

    ``code_index`` maps a half code to its position within its through-strand
    class; the id of (top, bottom) with k strands is
    ``offsets[k] + index(top) * sizes[k] + index(bottom)``.
    """
    lrows = [tuple(int(x) for x in r) for r in np.asarray(left)]
    rrows = [tuple(int(x) for x in r) for r in np.asarray(right)]
    table = np.empty((len(lrows), len(rrows)), dtype=np.int32)
    for i, a in enumerate(lrows):
        out_row = table[i]
        for j, b in enumerate(rrows):
            prod, _ = glue(a, b, n)
            tc, k = half_code(prod, n, 0)
            bc, _ = half_code(prod, n, 1)
            out_row[j] = offsets[k] + code_index[tc] * sizes[k] + code_index[bc]
    return table


def idempotent_mask(links, n):
    """Boolean vector: is each diagram equal to its own square?"""
    rows = [tuple(int(x) for x in r) for r in np.asarray(links)]
    return np.array([glue(d, d, n)[0] == d for d in rows], dtype=bool)


def rank_mod_p(mat, p):
    """Rank over GF(p) by plain Gaussian elimination on residues."""
    a = [[int(x) % p for x in row] for row in np.asarray(mat)]
    if not a:
        return 0
    m, ncols = len(a), len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p)
        prow = [(x * inv) % p for x in a[r]]
        a[r] = prow
        for i in range(r + 1, m):
            f = a[i][c]
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], prow)]
        r += 1
        if r == m:
            break
    return r
