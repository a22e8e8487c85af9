"""Rank-one local systems and characteristic varieties.

A torsion character is stored as residue classes ``t_j`` in ``[0, 1)``, one
per projective line, with ``sum(t_j)`` an integer (the monodromy product is
one).  Its cohomology ``H^1(M, L)`` is computed through the Aomoto complex at
an admissible lift of the classes to residues (no residue and no sum at a
point of multiplicity >= 3 is a positive integer).
"""
from dataclasses import dataclass
from fractions import Fraction

from .arrangement import C1, _parse_number, classify, intersection_lattice
from .errors import DimensionMismatch, InputError, SearchExhausted, SumNonzero
from .osalg import aomoto_h1_dim
from .resonance import PARALLELOGRAM, PENCIL, enumerate_components


def _frac_mod1(v):
    return v - (v.numerator // v.denominator)


@dataclass(frozen=True)
class LocalSystem:
    classes: tuple

    def __post_init__(self):
        cl = tuple(Fraction(v) for v in self.classes)
        if any(not 0 <= v < 1 for v in cl):
            raise InputError("local system classes must lie in [0, 1)")
        if sum(cl).denominator != 1:
            raise SumNonzero("local system classes must sum to an integer")
        object.__setattr__(self, "classes", cl)

    @classmethod
    def reduce(cls, values):
        """Reduce arbitrary rationals mod 1."""
        return cls(tuple(_frac_mod1(Fraction(v)) for v in values))

    @property
    def trivial(self):
        return not any(self.classes)

    def __len__(self):
        return len(self.classes)


@dataclass(frozen=True)
class ProjectiveResidues:
    a: tuple

    def __post_init__(self):
        a = tuple(Fraction(v) for v in self.a)
        if sum(a) != 0:
            raise SumNonzero("projective residues must sum to zero")
        object.__setattr__(self, "a", a)


def exp_residues(a):
    if not isinstance(a, ProjectiveResidues):
        a = ProjectiveResidues(tuple(a))
    return LocalSystem.reduce(a.a)


def to_projective(chart, alpha):
    """Affine-position residues -> residues on all lines (``hinf`` takes minus the sum)."""
    alpha = chart.check(alpha)
    out = [Fraction(0)] * (chart.n + 1)
    for pos, line in enumerate(chart.affine_lines):
        out[line] = alpha[pos]
    out[chart.hinf] = -sum(alpha)
    return ProjectiveResidues(tuple(out))


def to_chart(chart, residues):
    a = residues.a if isinstance(residues, ProjectiveResidues) else tuple(residues)
    return tuple(Fraction(a[line]) for line in chart.affine_lines)


def parse_local_system(text, arr=None):
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        values.extend(_parse_number(tok, lineno) for tok in raw.split("#", 1)[0].split())
    if arr is not None and len(values) != len(arr):
        raise DimensionMismatch(f"local system has {len(values)} classes, arrangement has {len(arr)} lines")
    return LocalSystem(tuple(values))


# ------------------------------------------------------------ admissibility


def _positive_integer(v):
    return v.denominator == 1 and v > 0


@dataclass(frozen=True)
class AdmissibilityReport:
    witness: ProjectiveResidues
    pencil_sums: dict

    def to_json(self):
        return {
            "witness": [str(v) for v in self.witness.a],
            "pencil_sums": {str(k): str(v) for k, v in self.pencil_sums.items()},
        }


def check_admissible(arr, system, residues, lattice=None):
    """Every admissibility condition for ``residues`` as a lift of ``system``."""
    lattice = lattice or intersection_lattice(arr)
    a = residues.a
    if len(a) != len(system) or sum(a) != 0:
        return False
    if any(_frac_mod1(v) != t for v, t in zip(a, system.classes)):
        return False
    if any(_positive_integer(v) for v in a):
        return False
    return not any(
        _positive_integer(sum(a[j] for j in f.incident)) for f in lattice.high_points()
    )


def iter_witnesses(arr, system, lattice=None):
    """Admissible lifts in lexicographic order of the per-line shifts.

    Lines ``j >= 1`` start at ``t_j - 1`` (or 0 when ``t_j = 0``) and may be
    shifted by +1; line 0 absorbs the sum.  Each point of multiplicity >= 3 is
    checked as soon as the lines determining its sum are fixed.
    """
    lattice = lattice or intersection_lattice(arr)
    t = system.classes
    n = len(arr)
    if len(t) != n:
        raise DimensionMismatch(f"local system has {len(t)} classes, arrangement has {n} lines")
    if n == 1:
        if t[0] == 0:
            yield ProjectiveResidues((Fraction(0),))
        return
    base = [Fraction(0)] + [v - 1 if v else Fraction(0) for v in t[1:]]
    high = lattice.high_points()
    # flat sum through line 0 equals minus the sum over the lines off the flat
    due = {j: [] for j in range(1, n)}
    for f in high:
        if 0 in f.incident:
            rest = [j for j in range(1, n) if j not in f.incident]
            key = max(rest) if rest else n - 1
            due[key].append((f, False))
        else:
            due[max(f.incident)].append((f, True))

    a = list(base)

    def flat_ok(f, direct):
        if direct:
            s = sum(a[j] for j in f.incident)
        else:
            s = -sum(a[j] for j in range(1, n) if j not in f.incident)
        return not _positive_integer(s)

    def rec(j):
        if j == n:
            a[0] = -sum(a[1:])
            if not _positive_integer(a[0]):
                yield ProjectiveResidues(tuple(a))
            return
        shifts = (0, 1) if t[j] else (0,)
        for s in shifts:
            a[j] = base[j] + s
            if all(flat_ok(f, direct) for f, direct in due[j]):
                yield from rec(j + 1)
        a[j] = base[j]

    yield from rec(1)


def admissible_witness(arr, system, lattice=None):
    lattice = lattice or intersection_lattice(arr)
    for w in iter_witnesses(arr, system, lattice):
        if not check_admissible(arr, system, w, lattice):
            raise AssertionError("witness search produced an inadmissible lift")
        sums = {f.point: sum(w.a[j] for j in f.incident) for f in lattice.high_points()}
        return AdmissibilityReport(w, sums)
    raise SearchExhausted(f"no admissible lift of {system.classes} in the search box")


def local_system_h1(arr, chart, system, lattice=None):
    if system.trivial:
        return aomoto_h1_dim(chart, (0,) * chart.n)
    report = admissible_witness(arr, system, lattice)
    return aomoto_h1_dim(chart, to_chart(chart, report.witness))


# ---------------------------------------------------- characteristic varieties


@dataclass(frozen=True)
class CharComponent:
    """Subtorus ``{lambda : lambda_j = 1 off support, prod lambda^e = 1 per relation}``.

    ``support`` lists the affine lines allowed to carry nontrivial monodromy
    (the class at ``hinf`` is fixed by the product-one condition).
    ``relations`` are integer exponent vectors over all projective lines.
    """

    kind: str
    lines: tuple
    support: tuple
    relations: tuple
    dimension: int
    hinf: int

    def contains(self, system):
        t = system.classes
        if any(t[j] != 0 for j in range(len(t)) if j != self.hinf and j not in self.support):
            return False
        return all(
            sum(e * v for e, v in zip(rel, t)).denominator == 1 for rel in self.relations
        )

    def to_json(self):
        return {
            "kind": self.kind,
            "lines": list(self.lines),
            "support": list(self.support),
            "relations": [list(r) for r in self.relations],
            "dimension": self.dimension,
        }


def char_components(arr, chart, h0=None):
    n = len(arr)
    out = []
    for comp in enumerate_components(arr, chart, h0):
        if comp.kind == PENCIL:
            rels = (tuple(int(j in comp.lines) for j in range(n)),)
        elif comp.kind == PARALLELOGRAM:
            pg = comp.parallelogram
            rels = (
                tuple((j == pg.h0) + (j == pg.k) + (j == pg.p) for j in range(n)),
                tuple((j == pg.k) - (j == pg.q) for j in range(n)),
                tuple((j == pg.l) - (j == pg.p) for j in range(n)),
            )
        else:
            rels = ()
        support = tuple(sorted(j for j in comp.lines if j != chart.hinf))
        out.append(CharComponent(comp.kind, comp.lines, support, rels, comp.dimension, chart.hinf))
    return out


def c1_product_form(arr, chart):
    """Supports of the subtori for a C1 arrangement charted at its cover line.

    Returns the parallel families of size >= 2 in the order of their first
    line; after renumbering the lines family by family each subtorus is a
    coordinate block ``(C*)^{|family|}`` with 1 elsewhere.
    """
    info = classify(arr)
    if info.tag != C1:
        raise InputError("product form applies to C1 arrangements")
    fams = [
        tuple(i for i in f.incident if i != chart.hinf)
        for f in chart.infinity_flats if f.multiplicity >= 3
    ]
    return sorted(fams)


def sample_torsion(space, rng, max_den=30):
    """A point of ``space`` with random rational coordinates on its basis."""
    while True:
        coeffs = [
            Fraction(int(rng.integers(-max_den, max_den + 1)), int(rng.integers(2, max_den + 1)))
            for _ in range(space.dim)
        ]
        if any(coeffs):
            return space.combination(coeffs)


def random_local_system(n, rng, max_den=12):
    """Uniformly drawn torsion character on ``n`` lines."""
    t = [Fraction(int(rng.integers(0, d)), d) for d in rng.integers(1, max_den + 1, size=n - 1)]
    return LocalSystem.reduce([-sum(t)] + t)
