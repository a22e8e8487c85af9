"""Exact rational linear algebra over ``fractions.Fraction``.

Matrices are lists of rows.  Subspaces are kept as reduced row-echelon bases,
which makes equality a plain comparison.
"""
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import lcm

import numpy as np

from . import _kernels


def as_fraction_vector(values):
    return tuple(Fraction(v) for v in values)


def rref(rows, ncols):
    """Reduced row-echelon form; returns ``(nonzero_rows, pivot_columns)``."""
    m = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [v / piv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def nullspace(rows, ncols):
    """Basis of ``{v : M v = 0}``, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def integer_row(values):
    """Clear the denominators of a rational vector."""
    fr = [Fraction(v) for v in values]
    den = lcm(*(v.denominator for v in fr)) if fr else 1
    return [int(v * den) for v in fr]


def rank(rows, ncols=None):
    """Exact rank of a rational matrix via the integer kernel."""
    rows = [integer_row(r) for r in rows]
    if not rows:
        return 0
    width = len(rows[0]) if ncols is None else ncols
    if width == 0:
        return 0
    return _kernels.rank(np.array(rows, dtype=object))


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of Q^ambient with a canonical RREF basis."""

    basis: tuple
    ambient: int

    @classmethod
    def span(cls, vectors, ambient):
        red, _ = rref(vectors, ambient)
        return cls(tuple(red), ambient)

    @classmethod
    def kernel(cls, rows, ambient):
        return cls.span(nullspace(rows, ambient), ambient)

    @classmethod
    def zero(cls, ambient):
        return cls((), ambient)

    @classmethod
    def full(cls, ambient):
        return cls.span(
            [[int(i == j) for j in range(ambient)] for i in range(ambient)], ambient
        )

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return self.dim

    @cached_property
    def _equations(self):
        return tuple(nullspace(self.basis, self.ambient))

    def annihilator(self):
        """Rows whose common kernel is this subspace."""
        return list(self._equations)

    def contains(self, v):
        v = as_fraction_vector(v)
        if len(v) != self.ambient:
            raise ValueError("vector length does not match ambient dimension")
        return all(dot(row, v) == 0 for row in self._equations)

    def __contains__(self, v):
        return self.contains(v)

    def intersection(self, other):
        self._check(other)
        eqs = list(self.annihilator()) + list(other.annihilator())
        return Subspace.kernel(eqs, self.ambient)

    def sum(self, other):
        self._check(other)
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient)

    def issubspace(self, other):
        self._check(other)
        return all(other.contains(v) for v in self.basis)

    def combination(self, coeffs):
        """The vector ``sum(coeffs[i] * basis[i])``."""
        out = [Fraction(0)] * self.ambient
        for c, row in zip(coeffs, self.basis):
            if c:
                for j, v in enumerate(row):
                    out[j] += c * v
        return tuple(out)

    def _check(self, other):
        if other.ambient != self.ambient:
            raise ValueError("subspaces live in different ambient spaces")
