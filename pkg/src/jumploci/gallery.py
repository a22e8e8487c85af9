"""Named fixture arrangements and seeded C1/C2 corpora."""
import re
from fractions import Fraction

import numpy as np

from .arrangement import C1, C2, Arrangement, classify
from .errors import DuplicateLine, UnknownFixture

EX3 = [(1, -1, 0), (1, 0, 0), (0, 1, 0), (1, 0, -1), (0, 1, -1), (1, 1, -2), (0, 0, 1)]
BRAID = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1)]
# x=0, x=1, y=0, y=1, y=x and the line at infinity
PARALLELOGRAM_MIN = [(1, 0, 0), (1, 0, -1), (0, 1, 0), (0, 1, -1), (1, -1, 0), (0, 0, 1)]
# x=0, y=0, y=x, y=1, y=x+1, x=1, y=x-1 (no line at infinity)
OTHER7 = [(1, 0, 0), (0, 1, 0), (1, -1, 0), (0, 1, -1), (1, -1, 1), (1, 0, -1), (1, -1, -1)]


def central(n):
    """``n`` lines through (0:0:1): ``y = 0`` and ``x = k*y`` for k = 0..n-2."""
    if n < 1:
        raise UnknownFixture("central(n) needs n >= 1")
    return Arrangement.from_triples([(0, 1, 0)] + [(1, -k, 0) for k in range(n - 1)])


def nodal(n):
    """``n`` lines ``x + k*y + k^2*z = 0``; no three are concurrent."""
    if n < 1:
        raise UnknownFixture("nodal(n) needs n >= 1")
    return Arrangement.from_triples([(1, k, k * k) for k in range(n)])


def central_chart_arrangement(n):
    """``central(n)`` plus a generic line ``z = 0`` placed last."""
    return Arrangement(central(n).lines + Arrangement.from_triples([(0, 0, 1)]).lines)


_FIXED = {
    "ex3": EX3,
    "braid": BRAID,
    "parallelogram_min": PARALLELOGRAM_MIN,
    "other7": OTHER7,
}
_PARAM = re.compile(r"^(central|nodal)\s*[\(:_-]?\s*(\d+)\s*\)?$")


def fixture_names():
    return sorted(_FIXED) + ["central(n)", "nodal(n)"]


def gallery(name):
    key = name.strip().lower()
    if key in _FIXED:
        return Arrangement.from_triples(_FIXED[key])
    m = _PARAM.match(key)
    if m:
        return (central if m.group(1) == "central" else nodal)(int(m.group(2)))
    raise UnknownFixture(f"unknown fixture {name!r}; choose from {fixture_names()}")


# ---------------------------------------------------------------- corpora

_SLOPES = [Fraction(0), None, Fraction(1, 2), Fraction(-1), Fraction(2), Fraction(-1, 3), Fraction(3)]


def _line_through(pt, slope):
    x0, y0 = pt
    if slope is None:
        return (1, 0, -x0)
    # y - y0 = s (x - x0)  ->  s x - y + (y0 - s x0) = 0
    return (slope, -1, y0 - slope * x0)


def _try_build(triples):
    try:
        return Arrangement.from_triples(triples)
    except DuplicateLine:
        return None


def c1_corpus(count=10, seed=0):
    """Affine arrangements with parallel families and only double points,
    closed up by the line at infinity ``z = 0`` (placed first).  The first
    entry is ``central(4)`` plus ``z = 0``."""
    rng = np.random.default_rng(seed)
    out = [central_chart_arrangement(4)]
    while len(out) < count:
        nfam = int(rng.integers(2, 4))
        slopes = rng.choice(len(_SLOPES), size=nfam, replace=False)
        triples = [(0, 0, 1)]
        for si in slopes:
            for _ in range(int(rng.integers(1, 4))):
                off = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 4)))
                triples.append(_line_through((Fraction(0), off), _SLOPES[si]) if _SLOPES[si] is not None
                               else (1, 0, -off))
        arr = _try_build(triples)
        if arr is None:
            continue
        info = classify(arr)
        if info.tag == C1 and (0,) in info.covers:
            out.append(arr)
    return out


def c2_corpus(count=10, seed=0):
    """Pencils of lines through points of the diagonal ``y = x`` with slopes
    from a small set (so parallel sides and parallelograms are common),
    plus ``y = x`` itself, sometimes a parallel to it, and the line at
    infinity last.  The first entries are ex3, braid and parallelogram_min."""
    rng = np.random.default_rng(seed)
    out = [Arrangement.from_triples(EX3), Arrangement.from_triples(BRAID),
           Arrangement.from_triples(PARALLELOGRAM_MIN)]
    slopes = _SLOPES[:5]
    while len(out) < count:
        npts = int(rng.integers(2, 5))
        ts = rng.choice(np.arange(-3, 4), size=npts, replace=False)
        triples = [(1, -1, 0)]
        for t in ts:
            pt = (Fraction(int(t)), Fraction(int(t)))
            for si in rng.choice(len(slopes), size=int(rng.integers(2, 4)), replace=False):
                triples.append(_line_through(pt, slopes[si]))
        if rng.random() < 0.3:
            triples.append((1, -1, int(rng.integers(1, 20))))
        triples.append((0, 0, 1))
        arr = _try_build(triples)
        if arr is None:
            continue
        info = classify(arr)
        if info.tag == C2 and info.covers_with(len(arr) - 1):
            out.append(arr)
    return out
