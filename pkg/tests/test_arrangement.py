from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jumploci.arrangement import (
    C1, C2, NODAL, OTHER, Arrangement, ProjectiveLine, canonical_triple, classify,
    intersection_lattice, parse_arrangement, tutte_polynomial,
)
from jumploci.errors import DuplicateLine, MalformedNumber, ZeroTriple
from jumploci.gallery import c1_corpus, c2_corpus, central, gallery, nodal
from jumploci.linalg import rank

EX3_TEXT = "1 -1 0\n1 0 0\n0 1 0\n1 0 -1\n0 1 -1\n1 1 -2\n0 0 1"

triples = st.tuples(*[st.integers(-9, 9)] * 3).filter(lambda t: t != (0, 0, 0))


# ---------------------------------------------------------------- oracles


def brute_points(arr):
    """Pairwise intersections by Cramer's rule in the chart z=1, or as
    directions at infinity, grouped by checking every line."""
    pts = set()
    for i, j in combinations(range(len(arr)), 2):
        a1, b1, c1 = arr.lines[i].coeffs
        a2, b2, c2 = arr.lines[j].coeffs
        det = a1 * b2 - a2 * b1
        if det != 0:
            pts.add((F(-c1 * b2 + c2 * b1, det), F(-a1 * c2 + a2 * c1, det), F(1)))
        else:
            # parallel in the chart: common direction (b, -a, 0), or both meet z=0 there
            d = (b1, -a1, 0) if (a1, b1) != (0, 0) else (b2, -a2, 0)
            pts.add(tuple(F(v) for v in d))
    out = {}
    for p in pts:
        on = tuple(k for k, ln in enumerate(arr.lines) if sum(F(c) * v for c, v in zip(ln.coeffs, p)) == 0)
        out[canonical_triple(p)] = on
    return out


def brute_tutte(arr, x, y):
    vecs = arr.triples()
    n = len(vecs)
    full = rank(vecs)
    total = 0
    for k in range(n + 1):
        for sub in combinations(range(n), k):
            r = rank([vecs[i] for i in sub]) if sub else 0
            total += (x - 1) ** (full - r) * (y - 1) ** (k - r)
    return total


def brute_bases(arr):
    vecs = arr.triples()
    full = rank(vecs)
    return sum(
        1 for sub in combinations(range(len(vecs)), full)
        if rank([vecs[i] for i in sub]) == full
    )


# ------------------------------------------------------------------ parsing


def test_parse_coordinate_triangle():
    arr = parse_arrangement("1 0 0\n0 1 0\n0 0 1")
    assert [str(ln) for ln in arr] == ["x", "y", "z"]


def test_parse_duplicate_after_scaling():
    with pytest.raises(DuplicateLine):
        parse_arrangement("2 0 0\n1 0 0")


def test_parse_ex3():
    arr = parse_arrangement(EX3_TEXT)
    assert len(arr) == 7
    assert [str(ln) for ln in arr] == ["x-y", "x", "y", "x-z", "y-z", "x+y-2z", "z"]


def test_parse_rationals_comments_blanks():
    arr = parse_arrangement("# header\n\n1/2 1/3 0  # a line\n-2 0 4\n")
    assert arr.triples() == [(3, 2, 0), (1, 0, -2)]


@pytest.mark.parametrize("text,exc", [
    ("0 0 0", ZeroTriple),
    ("1 0 x", MalformedNumber),
    ("1 0", MalformedNumber),
    ("1/0 1 1", MalformedNumber),
    ("# nothing", MalformedNumber),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_arrangement(text)


@given(triples, st.integers(-5, 5).filter(bool))
def test_canonical_idempotent_and_scale_invariant(t, s):
    c = canonical_triple(t)
    assert canonical_triple(c) == c
    assert canonical_triple(tuple(s * v for v in t)) == c
    assert canonical_triple(tuple(F(v, 7) for v in t)) == c


# ------------------------------------------------------------------ lattice


def test_lattice_triangle():
    lat = intersection_lattice(parse_arrangement("1 0 0\n0 1 0\n0 0 1"))
    assert [f.multiplicity for f in lat] == [2, 2, 2]


def test_lattice_pencil():
    lat = intersection_lattice(parse_arrangement("1 0 0\n0 1 0\n1 -1 0"))
    assert len(lat) == 1
    assert lat.flats[0].point.coords == (0, 0, 1)
    assert lat.flats[0].incident == (0, 1, 2)


def test_lattice_ex3_against_brute_force():
    arr = parse_arrangement(EX3_TEXT)
    lat = intersection_lattice(arr)
    got = {f.point.coords: f.incident for f in lat}
    assert got == brute_points(arr)
    assert got[(0, 0, 1)] == (0, 1, 2)
    assert got[(1, 1, 1)] == (0, 3, 4, 5)
    assert got[(0, 1, 0)] == (1, 3, 6)
    assert got[(1, 0, 0)] == (2, 4, 6)
    assert got[(1, 1, 0)] == (0, 6)
    assert got[(1, -1, 0)] == (5, 6)
    affine_double = [p for p, inc in got.items() if p[2] != 0 and len(inc) == 2]
    assert len(affine_double) == 4
    keys = [f.point for f in lat]
    assert keys == sorted(keys)


@settings(max_examples=60, deadline=None)
@given(st.lists(triples, min_size=2, max_size=8, unique_by=canonical_triple))
def test_lattice_pair_count_identity(ts):
    arr = Arrangement.from_triples(ts)
    lat = intersection_lattice(arr)
    n = len(arr)
    assert sum(f.multiplicity * (f.multiplicity - 1) // 2 for f in lat) == n * (n - 1) // 2
    seen = set()
    for f in lat:
        assert f.multiplicity >= 2
        for pair in combinations(f.incident, 2):
            assert pair not in seen
            seen.add(pair)
    assert {f.point.coords: f.incident for f in lat} == brute_points(arr)


# ----------------------------------------------------------- classification


def test_classify_nodal():
    assert classify(nodal(4)).tag == NODAL


def test_classify_ex3():
    info = classify(parse_arrangement(EX3_TEXT))
    assert info.tag == C2
    assert (info.h0, info.hinf) == (0, 6)
    assert str(parse_arrangement(EX3_TEXT).lines[info.h0]) == "x-y"
    assert info.covers == ((0, 6), (1, 4), (2, 3))


def test_classify_other7_has_no_cover():
    arr = gallery("other7")
    pts = brute_points(arr)
    high = [inc for inc in pts.values() if len(inc) >= 3]
    assert sorted(p for p, inc in pts.items() if len(inc) >= 3) == sorted(
        [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1), (1, 1, 0)]
    )
    for pair in combinations(range(len(arr)), 2):
        assert not all(set(pair) & set(inc) for inc in high)
    info = classify(arr)
    assert info.tag == OTHER
    assert info.covers == ()
    assert info.nearest_cover is not None


def test_classify_pencil_is_c1():
    info = classify(central(3))
    assert info.tag == C1
    assert info.covers == ((0,), (1,), (2,))


def _cover_correct(arr):
    info = classify(arr)
    high = [f.incident for f in intersection_lattice(arr) if len(f.incident) >= 3]
    singles = [i for i in range(len(arr)) if all(i in inc for inc in high)]
    pairs = [p for p in combinations(range(len(arr)), 2)
             if all(set(p) & set(inc) for inc in high)]
    if not high:
        assert info.tag == NODAL
    elif singles:
        assert info.tag == C1 and [c[0] for c in info.covers] == singles
    elif pairs:
        assert info.tag == C2 and list(info.covers) == pairs
        assert info.h0 != info.hinf
    else:
        assert info.tag == OTHER


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(*[st.integers(-2, 2)] * 3).filter(lambda t: t != (0, 0, 0)),
                min_size=3, max_size=8, unique_by=canonical_triple))
def test_classify_cover_correct_random(ts):
    _cover_correct(Arrangement.from_triples(ts))


def test_classify_cover_correct_corpora():
    for arr in c1_corpus(10) + c2_corpus(10) + [gallery("other7"), nodal(5)]:
        _cover_correct(arr)


# -------------------------------------------------------------------- Tutte


def test_tutte_pencil():
    t = tutte_polynomial(central(3))
    assert t.coeffs == {(2, 0): 1, (1, 0): 1, (0, 1): 1}
    assert str(t) == "x^2 + x + y"


def test_tutte_general_position():
    assert tutte_polynomial(parse_arrangement("1 0 0\n0 1 0\n0 0 1")).coeffs == {(3, 0): 1}


def test_tutte_ex3_bases_are_noncurrent_triples():
    arr = parse_arrangement(EX3_TEXT)
    noncurrent = sum(1 for tri in combinations(arr.triples(), 3) if rank(list(tri)) == 3)
    assert noncurrent == 28
    assert tutte_polynomial(arr)(1, 1) == noncurrent


@pytest.mark.parametrize("name", ["ex3", "braid", "parallelogram_min", "other7", "central(4)", "nodal(5)"])
def test_tutte_matches_subset_expansion(name):
    arr = gallery(name)
    t = tutte_polynomial(arr)
    for x, y in [(1, 1), (2, 2), (3, 1), (0, 2), (2, -1), (5, 7)]:
        assert t(x, y) == brute_tutte(arr, x, y)
    assert t(1, 1) == brute_bases(arr)
    assert t(2, 2) == 2 ** len(arr)


def test_tutte_order_independent():
    arr = gallery("ex3")
    base = tutte_polynomial(arr)
    for order in [(6, 5, 4, 3, 2, 1, 0), (3, 0, 6, 1, 5, 2, 4)]:
        assert tutte_polynomial(arr, order=order) == base


def test_line_contains_point():
    from jumploci.arrangement import ProjectivePoint
    assert ProjectiveLine((1, -1, 0)).contains(ProjectivePoint((2, 2, 5)))
