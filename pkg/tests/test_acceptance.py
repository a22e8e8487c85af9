"""Acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line with its wall time; the lines are
printed in the terminal summary (see ``conftest.py``) and when the module is
run as a script.  Corpus construction and JIT warm-up happen outside the
timed region.
"""
import time
from collections import Counter
from fractions import Fraction as F
from itertools import combinations

import numpy as np
import pytest

from jumploci import _kernels
from jumploci.arrangement import classify, intersection_lattice, tutte_polynomial
from jumploci.charvar import (
    admissible_witness, c1_product_form, char_components, exp_residues, iter_witnesses,
    local_system_h1, random_local_system, sample_torsion, to_chart, to_projective,
)
from jumploci.gallery import c1_corpus, c2_corpus, central, central_chart_arrangement, gallery, nodal
from jumploci.osalg import aomoto_h1_dim, make_chart, orth_complement
from jumploci.resonance import (
    PARALLELOGRAM, PENCIL, enumerate_components, is_resonant, isotropic, verify_oracle,
)

RESULTS = []


class Criterion:
    def __init__(self, num, title, limit):
        self.num, self.title, self.limit = num, title, limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        dt = time.perf_counter() - self.t0
        ok = exc_type is None and dt < self.limit
        why = ""
        if exc_type is not None:
            why = f" -- {exc_type.__name__}: {exc}"
        elif dt >= self.limit:
            why = f" -- exceeded {self.limit:g}s"
        RESULTS.append(f"{'PASS' if ok else 'FAIL'}  [{self.num:2d}] {self.title} ({dt:.3f}s < {self.limit:g}s){why}")
        if exc_type is None:
            assert dt < self.limit, f"criterion {self.num} took {dt:.3f}s (limit {self.limit}s)"
        return False


def _cover_chart(arr):
    info = classify(arr)
    return make_chart(arr, info.h0 if info.tag == "C1" else info.hinf)


@pytest.fixture(scope="module")
def corpus():
    _kernels.warmup()
    c1 = c1_corpus(10, seed=0)
    c2 = c2_corpus(10, seed=0)
    return [(arr, _cover_chart(arr)) for arr in c1], [(arr, _cover_chart(arr)) for arr in c2]


def _det3(u, v, w):
    return (u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0])
            + u[2] * (v[0] * w[1] - v[1] * w[0]))


def _basis_count(arr):
    return sum(1 for u, v, w in combinations(arr.triples(), 3) if _det3(u, v, w) != 0)


# ---------------------------------------------------------------------------


def test_c01_ex3_reproduction():
    arr = gallery("ex3")
    with Criterion(1, "ex3: 5 components, dims {2,2,2,2,3}, one parallelogram, pairwise {0}", 1.0):
        comps = enumerate_components(arr, make_chart(arr, 6))
        assert len(comps) == 5
        assert Counter(c.dimension for c in comps) == Counter([2, 2, 2, 2, 3])
        assert sum(c.kind == PARALLELOGRAM for c in comps) == 1
        for a, b in combinations(comps, 2):
            assert a.space.intersection(b.space).dim == 0


def test_c02_central_pencil_law():
    rng = np.random.default_rng(0)
    with Criterion(2, "central pencil: h1 = n-2 on sum-zero forms, 0 otherwise (n=3..6)", 1.0):
        for n in (3, 4, 5, 6):
            chart = make_chart(central_chart_arrangement(n), n)
            for _ in range(20):
                while True:
                    a = [int(v) for v in rng.integers(-10, 11, size=n - 1)]
                    a.append(-sum(a))
                    if any(a):
                        break
                assert aomoto_h1_dim(chart, a) == n - 2
            for _ in range(20):
                while True:
                    a = [int(v) for v in rng.integers(-10, 11, size=n)]
                    if sum(a):
                        break
                assert aomoto_h1_dim(chart, a) == 0


def test_c03_nodal_law():
    rng = np.random.default_rng(0)
    with Criterion(3, "nodal: 100 random nonzero forms non-resonant (4..7 lines)", 1.0):
        for n in (4, 5, 6, 7):
            arr = nodal(n)
            assert classify(arr).tag == "Nodal"
            chart = make_chart(arr, n - 1)
            for _ in range(100):
                while True:
                    a = [int(v) for v in rng.integers(-10, 11, size=n - 1)]
                    if any(a):
                        break
                assert not is_resonant(chart, a)


def test_c04_oracle_equivalence(corpus):
    c1, c2 = corpus
    names = {tuple(a.triples()) for a, _ in c2}
    assert tuple(gallery("braid").triples()) in names
    assert tuple(gallery("parallelogram_min").triples()) in names
    assert len(c1) >= 10 and len(c2) >= 10
    with Criterion(4, "oracle == closed form on 10 C1 + 10 C2 arrangements (100 samples, seed 0)", 10.0):
        for arr, chart in c1 + c2:
            rep = verify_oracle(arr, chart, samples=100, seed=0)
            assert rep.ok, rep.failures
            assert all(c.isotropic for c in rep.components)
            for comp in enumerate_components(arr, chart):
                assert isotropic(chart, comp.space)


def test_c05_parallelogram_system():
    arr = gallery("parallelogram_min")
    chart = make_chart(arr, 5)
    with Criterion(5, "parallelogram: generic member has complement dim 2; a_k != a_q drops to 1", 1.0):
        (comp,) = [c for c in enumerate_components(arr, chart) if c.kind == PARALLELOGRAM]
        alpha = list(comp.space.combination([3, -2]))
        assert orth_complement(chart, alpha).dim == 2
        pg = comp.parallelogram
        bent = list(alpha)
        bent[chart.position[pg.k]] += 1
        assert bent[chart.position[pg.k]] != bent[chart.position[pg.q]]
        assert orth_complement(chart, bent).dim == 1


def test_c06_characteristic_correspondence(corpus):
    c1, c2 = corpus
    rng = np.random.default_rng(0)
    with Criterion(6, "exp(component samples) satisfy subtorus relations; C1 product form", 5.0):
        for arr, chart in c1 + c2:
            for comp, cc in zip(enumerate_components(arr, chart), char_components(arr, chart)):
                assert comp.lines == cc.lines
                for _ in range(50):
                    system = exp_residues(to_projective(chart, sample_torsion(comp.space, rng)))
                    assert cc.contains(system)
        for arr, chart in c1:
            ccs = char_components(arr, chart)
            assert sorted(c.support for c in ccs) == c1_product_form(arr, chart)
            assert all(not c.relations and c.dimension == len(c.support) for c in ccs)


def test_c07_constant_dimension():
    arr = gallery("ex3")
    chart = make_chart(arr, 6)
    lat = intersection_lattice(arr)
    rng = np.random.default_rng(0)
    with Criterion(7, "ex3: h1 = 1 on parallelogram subtorus, m-2 on pencils; witness-independent", 5.0):
        comps = enumerate_components(arr, chart)
        ccs = char_components(arr, chart)
        for comp, cc in zip(comps, ccs):
            if comp.kind == PARALLELOGRAM:
                want = 1
            elif comp.kind == PENCIL:
                want = len(comp.lines) - 2
            else:
                continue
            done = 0
            while done < 20:
                system = exp_residues(to_projective(chart, sample_torsion(comp.space, rng)))
                if system.trivial:
                    continue
                assert cc.contains(system)
                assert local_system_h1(arr, chart, system, lat) == want
                dims = {aomoto_h1_dim(chart, to_chart(chart, w))
                        for _, w in zip(range(4), iter_witnesses(arr, system, lat))}
                assert dims == {want}
                done += 1


def test_c08_admissibility(corpus):
    c1, c2 = corpus
    rng = np.random.default_rng(0)
    with Criterion(8, "admissible witness for 100 random torsion systems per corpus arrangement", 5.0):
        for arr, _ in c1 + c2:
            lat = intersection_lattice(arr)
            high = lat.high_points()
            for _ in range(100):
                system = random_local_system(len(arr), rng)
                w = admissible_witness(arr, system, lat).witness.a
                assert sum(w) == 0
                for v, t in zip(w, system.classes):
                    assert (v - t).denominator == 1
                    assert not (v.denominator == 1 and v > 0)
                for f in high:
                    s = sum(w[j] for j in f.incident)
                    assert not (s.denominator == 1 and s > 0)


def test_c09_tutte_oracle(corpus):
    c1, c2 = corpus
    with Criterion(9, "Tutte: T(1,1) = basis count, T(2,2) = 2^n; pencil gives x^2 + x + y", 1.0):
        for arr, _ in c1 + c2:
            t = tutte_polynomial(arr)
            assert t(1, 1) == _basis_count(arr)
            assert t(2, 2) == 2 ** len(arr)
        assert str(tutte_polynomial(central(3))) == "x^2 + x + y"


def test_c10_chart_symmetry():
    with Criterion(10, "C2 chart symmetry for ex3 and braid", 1.0):
        for name in ("ex3", "braid"):
            arr = gallery(name)
            info = classify(arr)
            one = enumerate_components(arr, make_chart(arr, info.hinf), info.h0)
            two = enumerate_components(arr, make_chart(arr, info.h0), info.hinf)
            assert Counter(c.dimension for c in one) == Counter(c.dimension for c in two)
            pgs = lambda cs: sum(c.kind == PARALLELOGRAM for c in cs)
            assert pgs(one) == pgs(two)


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
