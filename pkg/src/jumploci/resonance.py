"""First resonance varieties: pointwise oracle and closed-form components.

The oracle decides membership of a single one-form by an exact rank
computation.  The closed form lists the irreducible components of R_1 for
nodal, C1 and C2 arrangements:

* one *parallel family* component per point at infinity of multiplicity
  >= 3, spanned by the ``w_H`` of the parallel lines;
* one *pencil* component per affine point of multiplicity ``m >= 3``: forms
  supported on the ``m`` lines with zero sum (dimension ``m - 1``);
* one *parallelogram* component per parallelogram with sides in the
  arrangement and diagonal ``H0`` (dimension 2).

:func:`verify_oracle` samples every component and its complement and checks
the two descriptions against each other.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .arrangement import C1, C2, NODAL, classify
from .errors import ChartMismatch, IndexOutOfRange, UnsupportedClass
from .linalg import Subspace
from .osalg import aomoto_h1_dim, is_zero_two_form, wedge

PARALLEL_FAMILY = "parallel_family"
PENCIL = "pencil"
PARALLELOGRAM = "parallelogram"

SAMPLE_BOUND = 10


def is_resonant(chart, alpha, k=1):
    if k < 1:
        raise ValueError("k must be a positive integer")
    return aomoto_h1_dim(chart, alpha) >= k


@dataclass(frozen=True)
class Parallelogram:
    """Sides ``k || l`` and ``p || q``; vertices ``k^p`` and ``l^q`` lie on ``h0``.

    Line fields are projective line indices; ``x`` and ``y`` index
    ``chart.affine_flats``.
    """

    h0: int
    k: int
    l: int
    p: int
    q: int
    x: int
    y: int

    @property
    def lines(self):
        return (self.h0, self.k, self.l, self.p, self.q)

    def relabelings(self):
        k, l, p, q = self.k, self.l, self.p, self.q
        return [(k, l, p, q), (l, k, q, p), (p, q, k, l), (q, p, l, k)]


def _same_family(chart, i, j):
    return any(i in f.incident and j in f.incident for f in chart.infinity_flats)


def parallelograms(chart, h0):
    """All parallelograms with diagonal ``h0``, one per symmetry class."""
    if h0 == chart.hinf or h0 not in chart.position:
        raise IndexOutOfRange(f"h0={h0} is not an affine line of the chart")
    vertices = [
        (idx, f) for idx, f in enumerate(chart.affine_flats)
        if h0 in f.incident and f.multiplicity >= 3
    ]
    seen = set()
    out = []
    for (ix, fx), (iy, fy) in combinations(vertices, 2):
        xs = [i for i in fx.incident if i != h0]
        ys = [i for i in fy.incident if i != h0]
        for k in xs:
            for p in xs:
                if p == k:
                    continue
                for l in ys:
                    if not _same_family(chart, k, l):
                        continue
                    for q in ys:
                        if q == l or not _same_family(chart, p, q):
                            continue
                        pg = Parallelogram(h0, k, l, p, q, ix, iy)
                        key = min(pg.relabelings())
                        if key in seen:
                            continue
                        seen.add(key)
                        out.append(pg)
    return out


@dataclass(frozen=True)
class Component:
    """A linear component of R_1 in affine-position coordinates.

    ``lines`` are projective line indices: the family, the pencil, or
    ``(h0, k, l, p, q)``.  ``flat`` indexes ``chart.infinity_flats`` for a
    family and ``chart.affine_flats`` for a pencil.
    """

    kind: str
    lines: tuple
    space: Subspace
    flat: int = None
    parallelogram: Parallelogram = None

    @property
    def dimension(self):
        return self.space.dim

    def to_json(self):
        out = {
            "kind": self.kind,
            "lines": list(self.lines),
            "dimension": self.dimension,
            "basis": [[f"{v.numerator}/{v.denominator}" for v in row] for row in self.space.basis],
        }
        if self.flat is not None:
            out["flat"] = self.flat
        if self.parallelogram is not None:
            pg = self.parallelogram
            out["parallelogram"] = {
                "h0": pg.h0, "k": pg.k, "l": pg.l, "p": pg.p, "q": pg.q,
                "vertices": [pg.x, pg.y],
            }
        return out


def _unit_rows(n, positions):
    return [[int(i == j) for i in range(n)] for j in positions]


def family_space(chart, positions):
    return Subspace.span(_unit_rows(chart.n, positions), chart.n)


def pencil_space(chart, positions):
    off = [j for j in range(chart.n) if j not in positions]
    eqs = _unit_rows(chart.n, off) + [[int(j in positions) for j in range(chart.n)]]
    return Subspace.kernel(eqs, chart.n)


def parallelogram_space(chart, pg):
    pos = chart.position
    n = chart.n
    h0, k, l, p, q = (pos[i] for i in pg.lines)
    support = {h0, k, l, p, q}
    eqs = _unit_rows(n, [j for j in range(n) if j not in support])

    def row(**coef):
        r = [0] * n
        for j, c in coef.items():
            r[{"h0": h0, "k": k, "l": l, "p": p, "q": q}[j]] += c
        return r

    eqs += [row(h0=1, k=1, p=1), row(k=1, q=-1), row(l=1, p=-1)]
    return Subspace.kernel(eqs, n)


def resolve_h0(arr, chart, h0=None, info=None):
    """Check the chart against the class cover; return the affine ``H0`` or ``None``."""
    info = info or classify(arr)
    if info.tag == NODAL:
        return None
    if info.tag == C1:
        if (chart.hinf,) not in info.covers:
            raise ChartMismatch(
                f"C1 arrangement: line {chart.hinf} does not contain every high point; "
                f"use one of {[c[0] for c in info.covers]} as the line at infinity"
            )
        return None
    if info.tag == C2:
        partners = [c[0] if c[1] == chart.hinf else c[1] for c in info.covers_with(chart.hinf)]
        if not partners:
            raise ChartMismatch(
                f"C2 arrangement: line {chart.hinf} is not part of a cover {list(info.covers)}"
            )
        if h0 is None:
            return partners[0]
        if h0 not in partners:
            raise ChartMismatch(f"lines ({h0}, {chart.hinf}) do not cover the high points")
        return h0
    raise UnsupportedClass(
        f"closed-form components need a nodal, C1 or C2 arrangement (got {info.tag})"
    )


def enumerate_components(arr, chart, h0=None):
    h0 = resolve_h0(arr, chart, h0)
    comps = []
    for idx, f in enumerate(chart.infinity_flats):
        if f.multiplicity >= 3:
            fam = chart.parallel_families[idx]
            comps.append(Component(
                PARALLEL_FAMILY, tuple(i for i in f.incident if i != chart.hinf),
                family_space(chart, fam), flat=idx,
            ))
    for idx, f in enumerate(chart.affine_flats):
        if f.multiplicity >= 3:
            comps.append(Component(
                PENCIL, f.incident, pencil_space(chart, chart.affine_incidence[idx]), flat=idx,
            ))
    if h0 is not None:
        for pg in parallelograms(chart, h0):
            comps.append(Component(
                PARALLELOGRAM, pg.lines, parallelogram_space(chart, pg), parallelogram=pg,
            ))
    return comps


@dataclass
class ResonanceK:
    components: list
    origin: bool

    @property
    def origin_only(self):
        return self.origin and not self.components


def resonance_k(arr, chart, k, h0=None):
    """Components of dimension > k, plus whether the origin lies in R_k."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    comps = [c for c in enumerate_components(arr, chart, h0) if c.dimension > k]
    return ResonanceK(comps, origin=k <= chart.n)


def in_union(components, alpha):
    return any(c.space.contains(alpha) for c in components)


# -------------------------------------------------------------- verification


@dataclass
class ComponentCheck:
    kind: str
    lines: tuple
    dimension: int
    samples: int
    all_resonant: bool
    isotropic: bool


@dataclass
class VerificationReport:
    seed: int
    samples: int
    components: list = field(default_factory=list)
    outside_tested: int = 0
    outside_rejected: int = 0
    all_nonresonant: bool = True
    pairwise_zero: bool = True
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return (
            self.all_nonresonant
            and self.pairwise_zero
            and all(c.all_resonant and c.isotropic for c in self.components)
        )

    def to_json(self):
        return {
            "seed": self.seed,
            "samples": self.samples,
            "ok": self.ok,
            "components": [vars(c) | {"lines": list(c.lines)} for c in self.components],
            "outside_tested": self.outside_tested,
            "outside_rejected": self.outside_rejected,
            "all_nonresonant": self.all_nonresonant,
            "pairwise_zero": self.pairwise_zero,
            "failures": self.failures,
        }


def sample_point(space, rng, bound=SAMPLE_BOUND):
    """Random nonzero integer combination of the RREF basis."""
    while True:
        coeffs = rng.integers(-bound, bound + 1, size=space.dim)
        if coeffs.any():
            return space.combination([int(c) for c in coeffs])


def isotropic(chart, space):
    return all(
        is_zero_two_form(wedge(chart, u, v))
        for u, v in combinations(space.basis, 2)
    )


def verify_oracle(arr, chart, samples=100, seed=0, h0=None, bound=SAMPLE_BOUND):
    if samples < 1:
        raise ValueError("samples must be >= 1")
    comps = enumerate_components(arr, chart, h0)
    rng = np.random.default_rng(seed)
    report = VerificationReport(seed=seed, samples=samples)
    for c in comps:
        ok = True
        for _ in range(samples):
            alpha = sample_point(c.space, rng, bound)
            if not is_resonant(chart, alpha, 1):
                ok = False
                report.failures.append({"kind": "component_point_not_resonant",
                                        "lines": list(c.lines), "alpha": [str(v) for v in alpha]})
                break
        report.components.append(ComponentCheck(
            c.kind, c.lines, c.dimension, samples, ok, isotropic(chart, c.space),
        ))
    for _ in range(samples):
        alpha = tuple(Fraction(int(v)) for v in rng.integers(-bound, bound + 1, size=chart.n))
        if not any(alpha) or in_union(comps, alpha):
            report.outside_rejected += 1
            continue
        report.outside_tested += 1
        if is_resonant(chart, alpha, 1):
            report.all_nonresonant = False
            report.failures.append({"kind": "outside_point_resonant",
                                    "alpha": [str(v) for v in alpha]})
            break
    for a, b in combinations(comps, 2):
        if a.space.intersection(b.space).dim != 0:
            report.pairwise_zero = False
            report.failures.append({"kind": "components_intersect",
                                    "lines": [list(a.lines), list(b.lines)]})
    return report
