"""Counting formulas for Motzkin diagrams and the growth curves built on them.

Exact quantities are Python integers throughout.  Curves that run to
n in the thousands are evaluated in natural-log space with ``math.lgamma``;
those values are only ever used for trend checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt, lgamma, log, exp


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero outside ``0 <= b <= a``."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def _log_binom(a: int, b: int) -> float:
    if b < 0 or b > a:
        return -math.inf
    return lgamma(a + 1) - lgamma(b + 1) - lgamma(a - b + 1)


def _logsumexp(values) -> float:
    values = [v for v in values if v != -math.inf]
    if not values:
        return -math.inf
    top = max(values)
    return top + log(sum(exp(v - top) for v in values))


@lru_cache(maxsize=None)
def motzkin_number(m: int) -> int:
    """The m-th Motzkin number, counted as Motzkin paths of length m."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m > 400:
        return sum(binom(m, 2 * t) * binom(2 * t, t) // (t + 1) for t in range(m // 2 + 1))
    return lcell_row(m)[0]


def _ballot_term(n: int, k: int, t: int) -> int:
    # (k+1)/(k+t+1) * C(n, k+2t) * C(k+2t, t); the quotient is always exact.
    num = (k + 1) * binom(k + 2 * t, t)
    q, r = divmod(num, k + t + 1)
    assert r == 0, (n, k, t)
    return q * binom(n, k + 2 * t)


def lcell_size(n: int, k: int) -> int:
    """Number of half-diagrams on ``n`` nodes with ``k`` through strands."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    return sum(_ballot_term(n, k, t) for t in range((n - k) // 2 + 1))


def lcell_row(n: int) -> list[int]:
    """[lcell_size(n, k) for k in 0..n] in one pass.

    Reading a half-diagram left to right as a path (cup opens and through
    endpoints step up, cup closes step down) identifies the cells with
    Motzkin prefixes ending at height k.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    row = [1]
    for _ in range(n):
        nxt = [0] * (len(row) + 1)
        for h, c in enumerate(row):
            nxt[h] += c
            nxt[h + 1] += c
            if h:
                nxt[h - 1] += c
        row = nxt
    return row


def lcell_size_binomial_form(n: int) -> int:
    """The rewritten sum with k = sqrt(n); only defined for perfect squares."""
    s = isqrt(n)
    if s * s != n:
        raise ValueError(f"{n} is not a perfect square; use lcell_size(n, k)")
    total = Fraction(0)
    for t in range(n + 1):
        total += Fraction(s + 1, s + t + 1) * binom(n, t) * binom(n - t, s + t)
    assert total.denominator == 1
    return int(total)


def submatrix_bound(n: int, k: int | None = None) -> int:
    """Size of the full-rank consecutive-strand submatrix (a lower bound for the rank).

    ``k`` defaults to ``isqrt(n)``.
    """
    if k is None:
        k = isqrt(n)
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    m = n - k
    total = 0
    for t in range(m // 2 + 1):
        q, r = divmod(binom(m, 2 * t) * binom(2 * t, t), t + 1)
        assert r == 0
        total += q
    return total


def summand(n: int, t: int, k: int | None = None) -> int:
    """Term ``t`` of the rewritten cell-size sum, ``(k+1)/(k+t+1) C(n,t) C(n-t,k+t)``."""
    if k is None:
        k = isqrt(n)
    return _ballot_term(n, k, t)


def log_summand(n: int, t: int, k: int | None = None) -> float:
    if k is None:
        k = isqrt(n)
    if k + 2 * t > n:
        return -math.inf
    return (log(k + 1) - log(k + t + 1)
            + _log_binom(n, t) + _log_binom(n - t, k + t))


EXACT_PEAK_LIMIT = 600


def peak_t(n: int, k: int | None = None) -> int:
    """Position of the largest summand (smallest t on ties)."""
    if n < 1:
        raise ValueError("n must be positive")
    if k is None:
        k = isqrt(n)
    ts = range((n - k) // 2 + 1)
    if n <= EXACT_PEAK_LIMIT:
        values = [_ballot_term(n, k, t) for t in ts]
    else:
        values = [log_summand(n, t, k) for t in ts]
    best = max(values)
    return values.index(best)


def log_motzkin(m: int) -> float:
    """Natural log of the m-th Motzkin number."""
    if m <= 400:
        return log(motzkin_number(m))
    return _logsumexp(_log_binom(m, 2 * t) + _log_binom(2 * t, t) - log(t + 1)
                      for t in range(m // 2 + 1))


def log_lcell_size(n: int, k: int) -> float:
    if n <= 400:
        return log(lcell_size(n, k))
    return _logsumexp(log_summand(n, t, k) for t in range((n - k) // 2 + 1))


def argmax_cell(n: int) -> int:
    """The k maximising lcell_size(n, k) (smallest k on ties)."""
    sizes = lcell_row(n)
    return sizes.index(max(sizes))


def nth_root_curve(ns) -> list[tuple[int, float]]:
    """Pairs (n, submatrix_bound(n) ** (1/n)), evaluated in log space."""
    return [(n, exp(log_motzkin(n - isqrt(n)) / n)) for n in ns]


def limit_curve(ns) -> list[tuple[int, float]]:
    """The comparison curve 3 / 3**(1/sqrt(n))."""
    return [(n, 3 / 3 ** (1 / math.sqrt(n))) for n in ns]


@dataclass(frozen=True)
class RatioPoint:
    n: int
    ssgapr: float
    gapr_root: float
    faithr: float


def _largest_odd_at_most(k: int) -> int:
    return k if k % 2 else k - 1


def ratio_curves(ns) -> list[RatioPoint]:
    out = []
    for n in ns:
        s = isqrt(n)
        half_size = 0.5 * log_motzkin(2 * n)
        ssgapr = exp(log_lcell_size(n, s) - half_size)
        gapr_root = exp((log_motzkin(n - s) - half_size) / n)
        k_odd = _largest_odd_at_most(s)
        faithr = exp(log_lcell_size(n, k_odd) - half_size) if k_odd >= 1 else math.nan
        out.append(RatioPoint(n, ssgapr, gapr_root, faithr))
    return out


def ssdim_curve(n: int) -> list[tuple[int, int]]:
    return [(k, lcell_size(n, k)) for k in range(n + 1)]


def summand_curve(n: int, t_max: int | None = None) -> list[tuple[int, int]]:
    k = isqrt(n)
    if t_max is None:
        t_max = n
    return [(t, summand(n, t, k) if k + 2 * t <= n else 0) for t in range(t_max + 1)]


def peak_curve(ns) -> list[tuple[int, int, float]]:
    return [(n, peak_t(n), n / 3) for n in ns]
