"""Line arrangements in the rational projective plane.

Lines and points are primitive integer triples with a positive leading entry,
so equality and hashing are exact.  This module also builds the intersection
lattice, sorts arrangements into the nodal / C1 / C2 / other classes, and
computes the Tutte polynomial of the underlying linear matroid.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, lcm

from .errors import DuplicateLine, IndexOutOfRange, MalformedNumber, ZeroTriple


def canonical_triple(values):
    """Primitive integer representative of a nonzero rational triple."""
    fr = [Fraction(v) for v in values]
    if len(fr) != 3:
        raise ValueError("expected three coordinates")
    if all(v == 0 for v in fr):
        raise ZeroTriple("the zero triple does not define a line or point")
    den = lcm(*(v.denominator for v in fr))
    ints = [int(v * den) for v in fr]
    g = reduce(gcd, (abs(v) for v in ints))
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot3(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


@dataclass(frozen=True, order=True)
class ProjectiveLine:
    """The line ``a*x + b*y + c*z = 0``."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", canonical_triple(self.coeffs))

    def contains(self, point):
        return dot3(self.coeffs, point.coords) == 0

    def __str__(self):
        terms = []
        for c, var in zip(self.coeffs, "xyz"):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, mag + var))
        out = "".join(f"{s}{t}" for s, t in terms)
        return out.lstrip("+")


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", canonical_triple(self.coords))

    @property
    def at_infinity(self):
        return self.coords[2] == 0

    def affine(self):
        """Coordinates in the chart ``z = 1``; ``None`` for points at infinity."""
        x, y, z = self.coords
        if z == 0:
            return None
        return (Fraction(x, z), Fraction(y, z))

    def __str__(self):
        return "({}:{}:{})".format(*self.coords)


@dataclass(frozen=True)
class Arrangement:
    lines: tuple

    def __post_init__(self):
        lines = tuple(
            ln if isinstance(ln, ProjectiveLine) else ProjectiveLine(tuple(ln))
            for ln in self.lines
        )
        if not lines:
            raise ValueError("an arrangement needs at least one line")
        seen = {}
        for i, ln in enumerate(lines):
            if ln in seen:
                raise DuplicateLine(
                    f"rows {seen[ln]} and {i} define the same line {ln}"
                )
            seen[ln] = i
        object.__setattr__(self, "lines", lines)

    @classmethod
    def from_triples(cls, triples):
        return cls(tuple(ProjectiveLine(tuple(t)) for t in triples))

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def check_index(self, i):
        if not isinstance(i, int) or not 0 <= i < len(self.lines):
            raise IndexOutOfRange(f"line index {i} out of range 0..{len(self.lines) - 1}")
        return i

    def triples(self):
        return [ln.coeffs for ln in self.lines]

    def to_text(self):
        return "".join("{} {} {}\n".format(*ln.coeffs) for ln in self.lines)


def _parse_number(token, lineno):
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise MalformedNumber(f"line {lineno}: cannot parse {token!r} as a rational") from None


def parse_arrangement(text):
    """Parse the ``.arr`` text format: one triple per row, ``#`` comments."""
    triples = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        tokens = body.split()
        if len(tokens) != 3:
            raise MalformedNumber(f"line {lineno}: expected 3 numbers, got {len(tokens)}")
        values = [_parse_number(t, lineno) for t in tokens]
        if all(v == 0 for v in values):
            raise ZeroTriple(f"line {lineno}: 0 0 0 is not a line")
        triples.append(values)
    if not triples:
        raise MalformedNumber("no lines found")
    return Arrangement.from_triples(triples)


# ------------------------------------------------------------------ lattice


@dataclass(frozen=True)
class Flat:
    point: ProjectivePoint
    incident: tuple

    @property
    def multiplicity(self):
        return len(self.incident)


@dataclass(frozen=True)
class Lattice:
    flats: tuple

    def __len__(self):
        return len(self.flats)

    def __iter__(self):
        return iter(self.flats)

    def high_points(self):
        return [f for f in self.flats if f.multiplicity >= 3]


def intersection_lattice(arr):
    groups = {}
    for i, j in combinations(range(len(arr)), 2):
        pt = ProjectivePoint(cross(arr.lines[i].coeffs, arr.lines[j].coeffs))
        groups.setdefault(pt, set()).update((i, j))
    return Lattice(tuple(Flat(pt, tuple(sorted(groups[pt]))) for pt in sorted(groups)))


# ----------------------------------------------------------- classification

NODAL, C1, C2, OTHER = "Nodal", "C1", "C2", "Other"


@dataclass(frozen=True)
class ClassInfo:
    """Class tag plus every single-line or two-line cover of the high points.

    ``covers`` holds 1-tuples for C1 and sorted pairs for C2, lowest indices
    first.  ``h0``/``hinf`` come from the first cover (for C2, ``hinf`` is the
    higher index).  For class Other, ``nearest_cover`` is the pair of lines
    covering the most high points, for diagnostics only.
    """

    tag: str
    high_points: tuple
    covers: tuple = ()
    h0: int = None
    hinf: int = None
    nearest_cover: tuple = None

    def covers_with(self, line):
        return [c for c in self.covers if line in c]


def _covered(high, lines):
    return all(any(i in f.incident for i in lines) for f in high)


def classify(arr, lattice=None):
    lattice = lattice or intersection_lattice(arr)
    high = tuple(lattice.high_points())
    n = len(arr)
    if not high:
        return ClassInfo(NODAL, high)
    singles = tuple((i,) for i in range(n) if _covered(high, (i,)))
    if singles:
        return ClassInfo(C1, high, singles, h0=singles[0][0])
    pairs = tuple(p for p in combinations(range(n), 2) if _covered(high, p))
    if pairs:
        return ClassInfo(C2, high, pairs, h0=pairs[0][0], hinf=pairs[0][1])
    best = max(
        combinations(range(n), 2),
        key=lambda p: sum(any(i in f.incident for i in p) for f in high),
        default=None,
    )
    return ClassInfo(OTHER, high, nearest_cover=best)


# ------------------------------------------------------------------- Tutte


def rank3(vectors):
    """Rank of a collection of integer 3-vectors."""
    vs = [v for v in vectors if v != (0, 0, 0)]
    if not vs:
        return 0
    v0 = vs[0]
    normal = next((w for w in (cross(v0, v) for v in vs[1:]) if w != (0, 0, 0)), None)
    if normal is None:
        return 1
    return 3 if any(dot3(normal, v) != 0 for v in vs) else 2


@dataclass(frozen=True)
class TuttePolynomial:
    coeffs: dict = field(default_factory=dict)

    def __call__(self, x, y):
        return sum(c * x**i * y**j for (i, j), c in self.coeffs.items())

    evaluate = __call__

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return TuttePolynomial({k: c for k, c in out.items() if c})

    def shift(self, di, dj):
        """Multiply by ``x**di * y**dj``."""
        return TuttePolynomial({(i + di, j + dj): c for (i, j), c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, TuttePolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for (i, j), c in sorted(self.coeffs.items(), key=lambda kv: (-kv[0][0] - kv[0][1], -kv[0][0])):
            mono = "*".join(
                p for p in (
                    "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                    "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                ) if p
            )
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)


def tutte_polynomial(arr, order=None):
    """Deletion-contraction on the linear matroid of the coefficient triples.

    Minors are memoized on ``(remaining elements, closure of contracted set)``,
    which determines the minor up to equality.  ``order`` changes the element
    processing order; the result does not depend on it.
    """
    vecs = arr.triples()
    order = tuple(range(len(vecs))) if order is None else tuple(order)
    everything = range(len(vecs))
    memo = {}

    def closure(contracted):
        base = [vecs[i] for i in contracted]
        r = rank3(base)
        return frozenset(i for i in everything if rank3(base + [vecs[i]]) == r)

    def minor_rank(items, flat):
        base = [vecs[i] for i in flat]
        return rank3(base + [vecs[i] for i in items]) - rank3(base)

    def solve(remaining, flat):
        key = (remaining, flat)
        if key in memo:
            return memo[key]
        if not remaining:
            result = TuttePolynomial({(0, 0): 1})
        else:
            e = next(i for i in order if i in remaining)
            rest = remaining - {e}
            if minor_rank([e], flat) == 0:
                result = solve(rest, flat).shift(0, 1)
            elif minor_rank(rest, flat) < minor_rank(remaining, flat):
                result = solve(rest, closure(flat | {e})).shift(1, 0)
            else:
                result = solve(rest, flat) + solve(rest, closure(flat | {e}))
        memo[key] = result
        return result

    return solve(frozenset(everything), closure(frozenset()))
