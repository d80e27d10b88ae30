import json
from math import isqrt

import numpy as np
import pytest

from motzkin import cells
from motzkin.combinatorics import lcell_size, motzkin_number
from motzkin.diagram import Diagram, HalfDiagram, enumerate_monoid, is_idempotent
from motzkin.linalg import GF2, Q, FieldSpec, Matrix01, kernel_vector, left_multiply, rank

from conftest import D, MO3_J1, MO3_J1_ORDER, MO4_J2, MO4_J2_ORDER, MO5_COLS, MO5_ROWS


def reorder(g, order):
    idx = {h.code: i for i, h in enumerate(g.rows)}
    perm = [idx[c] for c in order]
    return g.matrix.permuted(perm, perm).row_strings()


def test_decompose_small():
    dec = cells.decompose(3)
    assert dec.sizes() == [4, 5, 3, 1]
    assert dec.jcell_order() == [3, 2, 1, 0]
    assert cells.decompose(0).sizes() == [1]
    assert cells.decompose(5).size(1) == 30


@pytest.mark.parametrize("n", range(7))
def test_regularity_witnesses(n):
    dec = cells.decompose(n)
    for k, (i, j) in dec.witnesses.items():
        hs = dec.halves[k]
        assert is_idempotent(Diagram(hs[i], hs[j]))


def test_gram_3_1_matches_reference():
    assert reorder(cells.gram_matrix(3, 1), MO3_J1_ORDER) == MO3_J1


def test_gram_4_2_matches_reference():
    assert reorder(cells.gram_matrix(4, 2), MO4_J2_ORDER) == MO4_J2


def test_gram_entries_are_direct_idempotency():
    g = cells.gram_matrix(4, 1)
    for i, t in enumerate(g.rows):
        for j, b in enumerate(g.cols):
            assert g.matrix[i, j] == is_idempotent(Diagram(t, b))


@pytest.mark.parametrize("n", range(7))
def test_gram_k0_all_ones(n):
    g = cells.gram_matrix(n, 0)
    assert g.matrix == Matrix01.ones(*g.shape)
    assert cells.simple_dimension(n, 0) == 1


@pytest.mark.parametrize("n", range(7))
def test_gram_symmetric_under_star(n):
    for k in range(n + 1):
        g = cells.gram_matrix(n, k)
        assert g.rows == g.cols
        assert g.matrix == g.matrix.transpose()


def test_simple_dimension_examples():
    assert cells.simple_dimension(3, 1, Q) == 5
    assert cells.simple_dimension(4, 2, Q) == 8
    with pytest.raises(ValueError):
        cells.simple_dimension(3, 1, FieldSpec(6))
    with pytest.raises(ValueError):
        cells.gram_matrix(3, 4)


@pytest.mark.parametrize("n", range(7))
def test_finite_field_ranks_bounded(n):
    for k in range(n + 1):
        rq = cells.simple_dimension(n, k, Q)
        for p in (2, 3, 5):
            assert cells.simple_dimension(n, k, FieldSpec(p)) <= rq


@pytest.mark.parametrize("n", range(1, 7))
def test_odd_k_full_rank(n):
    for k in range(1, n + 1, 2):
        assert cells.simple_dimension(n, k, Q) == cells.ssdim(n, k)


def test_ssdim():
    assert cells.ssdim(3, 1) == 5
    assert all(cells.ssdim(n, n) == 1 for n in range(8))
    curve = [cells.ssdim(20, k) for k in range(21)]
    assert curve.index(max(curve)) <= isqrt(20)


def test_kernel_witness_4_2():
    g = cells.gram_matrix(4, 2)
    v = kernel_vector(g.matrix, Q)
    assert left_multiply(v, g.matrix) == [0] * 9
    support = {g.rows[i].code: x for i, x in enumerate(v) if x}
    assert set(support) == {"||()", "||..", "()||", "..||"}
    # mirror pairs enter with opposite signs
    assert support["||()"] == -support["||.."] == -support["()||"] == support["..||"]


# consecutive submatrix ------------------------------------------------------

def test_consecutive_5_1():
    c = cells.consecutive_submatrix(5, 1)
    assert c.shape == (9, 9)
    assert {h.code for h in c.rows} == set(MO5_ROWS)
    assert c.rank(Q) == 9


def test_drawn_mo5_block_full_rank():
    g = cells.gram_matrix(5, 1)
    ri = {h.code: i for i, h in enumerate(g.rows)}
    block = g.matrix.submatrix([ri[c] for c in MO5_ROWS], [ri[c] for c in MO5_COLS])
    assert rank(block, Q) == 9


def test_consecutive_edges():
    for n in range(6):
        c = cells.consecutive_submatrix(n, n)
        assert c.matrix == Matrix01.identity(1)
    c = cells.consecutive_submatrix(4, 2)
    assert c.shape == (2, 2) and c.rank(Q) == 2


@pytest.mark.parametrize("n", range(1, 8))
def test_consecutive_full_rank_positive_k(n):
    for k in range(1, n + 1):
        c = cells.consecutive_submatrix(n, k)
        assert c.shape == (motzkin_number(n - k),) * 2
        assert c.rank(Q) == motzkin_number(n - k)


def test_consecutive_k0_is_rank_one():
    # the whole J_0 block is all ones, so no square piece can beat rank 1
    for n in range(2, 7):
        c = cells.consecutive_submatrix(n, 0)
        assert c.shape == (motzkin_number(n),) * 2
        assert c.rank(Q) == 1


# truncation and gaps --------------------------------------------------------

def test_truncate():
    t = cells.truncate(3, 3)
    assert not t.adjoined_unit
    assert t.size() == 51
    t = cells.truncate(3, 1)
    assert t.adjoined_unit
    assert t.size() == 41 == len(t.elements())
    assert D("|..", "..|") in t and D("||.", "||.") not in t
    with pytest.raises(ValueError):
        cells.truncate(3, 4)


@pytest.mark.parametrize("kmax", range(4))
def test_truncation_is_ideal(kmax):
    t = cells.truncate(3, kmax)
    assert t.is_closed()
    assert t.is_ideal()
    # the same by hand
    inside = [d for d in enumerate_monoid(3) if d in t]
    for m in inside:
        for s in enumerate_monoid(3):
            assert m * s in t and s * m in t


def test_gap_examples():
    assert cells.gap(3, 1, Q) == 5
    assert cells.ssgap(3, 3) == 1
    assert cells.gap(3, 1, Q, include_trivial=True) == 1
    assert cells.ssgap(3, 1, include_trivial=True) == 4
    with pytest.raises(ValueError):
        cells.gap(3, 0)
    assert cells.gap(3, 0, include_trivial=True) == 1


@pytest.mark.parametrize("n", range(1, 8))
def test_truncated_gap_dominates(n):
    assert cells.gap(n, isqrt(n), Q) >= cells.gap(n, n, Q)


@pytest.mark.parametrize("n", range(1, 7))
def test_gap_monotone(n):
    for field in (Q, GF2):
        gaps = [cells.gap(n, k, field) for k in range(1, n + 1)]
        assert all(a >= b for a, b in zip(gaps, gaps[1:]))
    ss = [cells.ssgap(n, k) for k in range(1, n + 1)]
    assert all(a >= b for a, b in zip(ss, ss[1:]))


def test_faith_lower_bound():
    assert cells.faith_lower_bound(3, 1) == 5
    assert cells.faith_lower_bound(5, 1) == 30
    assert all(cells.faith_lower_bound(n, n) == 1 for n in (1, 3, 5, 7))
    with pytest.raises(ValueError):
        cells.faith_lower_bound(4, 2)
    with pytest.raises(ValueError):
        cells.faith_lower_bound(3, 5)


# connectedness --------------------------------------------------------------

@pytest.mark.parametrize("n", [4, 5])
def test_well_connected(n):
    r = cells.connectedness(n)
    assert r.units == [0]
    assert (cells.is_null_connected(n), cells.is_left_connected(n), cells.is_right_connected(n)) == (True,) * 3


def test_degenerate_mo1():
    r = cells.connectedness(1)
    assert r.degenerate and r.well_connected


def test_small_n_report():
    # Mo_2 is null-connected but splits into two classes on each side
    r = cells.connectedness(2)
    assert r.null_connected
    assert r.left_classes == r.right_classes == 2


def test_connectedness_by_hand_mo3():
    ms = enumerate_monoid(3)
    e = ms[0]
    nonunits = ms[1:]
    products = {a * b for a in nonunits for b in nonunits}
    assert set(nonunits) <= products
    parent = {d: d for d in nonunits}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a in nonunits:
        for b in nonunits:
            if a * b == a:
                parent[find(a)] = find(b)
    assert len({find(d) for d in nonunits}) == cells.connectedness(3).right_classes


# tables and export ----------------------------------------------------------

def test_apex_table():
    row3 = {r.k: (r.ssdim, r.simple_dimension) for r in cells.apex_table(3)}
    assert row3[1] == (5, 5)
    row4 = {r.k: (r.ssdim, r.simple_dimension) for r in cells.apex_table(4)}
    assert row4[2] == (9, 8)
    for n in range(7):
        for r in cells.apex_table(n, (Q, GF2)):
            if r.k % 2:
                assert r.ssdim == r.rank(Q)
            assert r.rank("GF2") <= r.rank(Q)


def test_gram_json():
    d = json.loads(cells.gram_matrix(3, 1).to_json())
    assert d["n"] == 3 and d["k"] == 1
    assert d["order"] == ["..|", ".|.", "()|", "|..", "|()"]
    assert len(d["rows"]) == 5 and all(len(r) == 5 for r in d["rows"])
    d = cells.consecutive_submatrix(5, 1).to_dict()
    assert "columns" in d


def test_idempotent_counts():
    assert cells.idempotent_counts(3) == [16, 11, 3, 1]
