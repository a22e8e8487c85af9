"""Degree <= 2 Orlik-Solomon algebra of an affine chart and the Aomoto complex.

A chart sends one line ``hinf`` to infinity.  The remaining ``n`` lines give
the generators ``w_0 .. w_{n-1}`` of degree one (indexed by *affine position*,
i.e. position in ``Chart.affine_lines``).  Degree two splits over the affine
flats; for a flat with incident positions ``i0 < i1 < ...`` the basis is
``w_i0 ^ w_j`` for ``j != i0``, and the other products are rewritten through
``w_i ^ w_j = w_i0 ^ w_j - w_i0 ^ w_i``.  Parallel lines multiply to zero.

Everything is exact: one-forms are vectors of ``Fraction``.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm

import numpy as np

from . import _kernels
from .arrangement import _parse_number, intersection_lattice
from .errors import DimensionMismatch
from .linalg import Subspace, as_fraction_vector, integer_row, nullspace


@dataclass(frozen=True)
class Chart:
    arrangement: object
    hinf: int
    affine_lines: tuple
    affine_flats: tuple
    infinity_flats: tuple

    @property
    def n(self):
        return len(self.affine_lines)

    @cached_property
    def position(self):
        """Projective line index -> affine position."""
        return {line: pos for pos, line in enumerate(self.affine_lines)}

    def to_positions(self, lines):
        return tuple(self.position[i] for i in lines if i != self.hinf)

    @cached_property
    def affine_incidence(self):
        """Per affine flat, the sorted affine positions of its lines."""
        return tuple(self.to_positions(f.incident) for f in self.affine_flats)

    @cached_property
    def parallel_families(self):
        """Per infinity flat, the affine positions of the parallel lines through it."""
        return tuple(self.to_positions(f.incident) for f in self.infinity_flats)

    @cached_property
    def b2(self):
        return sum(len(inc) - 1 for inc in self.affine_incidence)

    @cached_property
    def _kernel_data(self):
        inc = np.zeros((len(self.affine_flats), self.n), dtype=np.int8)
        row_flat, row_line = [], []
        for x, positions in enumerate(self.affine_incidence):
            inc[x, list(positions)] = 1
            for j in positions[1:]:
                row_flat.append(x)
                row_line.append(j)
        return inc, np.array(row_flat, dtype=np.int64), np.array(row_line, dtype=np.int64)

    def parallel(self, i, j):
        """True when affine positions ``i`` and ``j`` are parallel lines."""
        return any(i in fam and j in fam for fam in self.parallel_families)

    def check(self, form):
        form = as_fraction_vector(form)
        if len(form) != self.n:
            raise DimensionMismatch(f"one-form has {len(form)} entries, chart has {self.n} lines")
        return form


def make_chart(arr, hinf, lattice=None):
    arr.check_index(hinf)
    lattice = lattice or intersection_lattice(arr)
    affine_lines = tuple(i for i in range(len(arr)) if i != hinf)
    affine, infinity = [], []
    for f in lattice:
        (infinity if hinf in f.incident else affine).append(f)
    return Chart(arr, hinf, affine_lines, tuple(affine), tuple(infinity))


def wedge(chart, alpha, beta):
    """``alpha ^ beta`` as one coefficient tuple per affine flat.

    For a flat ``x`` the coefficient of ``w_i0 ^ w_j`` is
    ``S_a(x) b_j - a_j S_b(x)``, where ``S_a(x)`` sums ``alpha`` over ``x``;
    this is the rewritten form of ``sum_{i<j in x} (a_i b_j - a_j b_i) w_i w_j``.
    """
    a = chart.check(alpha)
    b = chart.check(beta)
    out = []
    for positions in chart.affine_incidence:
        sa = sum(a[i] for i in positions)
        sb = sum(b[i] for i in positions)
        out.append(tuple(sa * b[j] - a[j] * sb for j in positions[1:]))
    return tuple(out)


def is_zero_two_form(form):
    return all(v == 0 for block in form for v in block)


def cup_matrix(chart, alpha):
    """Matrix (b2 x n) of ``beta -> alpha ^ beta``; column ``j`` is ``alpha ^ w_j``."""
    a = chart.check(alpha)
    if chart.b2 == 0:
        return []
    den = lcm(*(v.denominator for v in a))
    m = _kernels.cup_matrix(*chart._kernel_data, [int(v * den) for v in a])
    return [[Fraction(int(v), den) for v in row] for row in m]


def cup_rank(chart, alpha):
    """Rank of :func:`cup_matrix`, computed on the integer kernel."""
    a = chart.check(alpha)
    if chart.b2 == 0:
        return 0
    return _kernels.cup_rank(*chart._kernel_data, integer_row(a))


def aomoto_h1_dim(chart, alpha):
    """``dim H^1`` of the complex ``(A, alpha ^)`` in degree one."""
    a = chart.check(alpha)
    if all(v == 0 for v in a):
        return chart.n
    return chart.n - cup_rank(chart, a) - 1


def orth_complement(chart, alpha):
    """``{beta : alpha ^ beta = 0}`` as an RREF subspace."""
    a = chart.check(alpha)
    if chart.b2 == 0:
        return Subspace.full(chart.n)
    return Subspace.span(nullspace(cup_matrix(chart, a), chart.n), chart.n)


def parse_one_form(text, chart=None):
    """Whitespace-separated rationals in affine position order."""
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        values.extend(_parse_number(tok, lineno) for tok in raw.split("#", 1)[0].split())
    values = tuple(values)
    return chart.check(values) if chart is not None else values
