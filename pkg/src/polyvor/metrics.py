"""Finite metric spaces on the states {1, ..., n+1}.

Cost matrices are stored as exact rationals (`fractions.Fraction`) so that
everything computed from them downstream -- ball vertices, tangency
parameters, cell counts -- stays exact.  Floats are accepted as input and
converted to their exact binary value.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction


class MetricError(ValueError):
    """Base class for cost-matrix validation failures."""


class NotSymmetric(MetricError):
    def __init__(self, i, j):
        self.indices = (i, j)
        super().__init__(f"entry ({i},{j}) differs from entry ({j},{i})")


class NonzeroDiagonal(MetricError):
    def __init__(self, i):
        self.indices = (i,)
        super().__init__(f"diagonal entry ({i},{i}) is not zero")


class NonpositiveOffDiagonal(MetricError):
    def __init__(self, i, j):
        self.indices = (i, j)
        super().__init__(f"off-diagonal entry ({i},{j}) is not positive")


class TriangleViolation(MetricError):
    def __init__(self, i, j, k):
        self.indices = (i, j, k)
        super().__init__(f"d({i},{j}) > d({i},{k}) + d({k},{j})")


@dataclass(frozen=True)
class FiniteMetric:
    """A metric on {1, ..., n+1}, stored as a symmetric matrix of Fractions.

    Hashable, so derived structures (unit balls, facet functionals) can be
    cached per metric.  Index with 0-based pairs: ``d[i, j]``.
    """

    entries: tuple

    @property
    def n_states(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        """Dimension of the ambient simplex: number of states minus one."""
        return len(self.entries) - 1

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def as_lists(self):
        return [list(row) for row in self.entries]


def validate_metric(matrix) -> FiniteMetric:
    """Check metric axioms on a square matrix and return a FiniteMetric.

    Entries may be ints, Fractions, floats or "p/q" strings.  Checks run
    in a fixed order (diagonal, symmetry, positivity, triangle) and the
    raised error carries the offending 1-based indices.
    """
    rows = [list(r) for r in matrix]
    k = len(rows)
    if k < 2 or any(len(r) != k for r in rows):
        raise MetricError("cost matrix must be square with at least 2 states")
    m = [[Fraction(x) for x in r] for r in rows]
    for i in range(k):
        if m[i][i] != 0:
            raise NonzeroDiagonal(i + 1)
    for i in range(k):
        for j in range(i + 1, k):
            if m[i][j] != m[j][i]:
                raise NotSymmetric(i + 1, j + 1)
            if m[i][j] <= 0:
                raise NonpositiveOffDiagonal(i + 1, j + 1)
    for i in range(k):
        for j in range(k):
            for l in range(k):
                if m[i][j] > m[i][l] + m[l][j]:
                    raise TriangleViolation(i + 1, j + 1, l + 1)
    return FiniteMetric(tuple(tuple(row) for row in m))


def random_metric(n_states: int, seed: int, scale=1) -> FiniteMetric:
    """Random valid metric on ``n_states`` points, deterministic per seed.

    Draws small random rationals for the off-diagonal entries and repairs
    triangle violations with a shortest-path (Floyd-Warshall) closure,
    which preserves symmetry and positivity.  Rational entries keep exact
    equalities reachable, so boundary strata of downstream counts do occur.
    """
    if n_states < 2:
        raise MetricError("need at least 2 states")
    scale = Fraction(scale)
    if scale <= 0:
        raise MetricError("scale must be positive")
    rng = random.Random(seed)
    k = n_states
    m = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            w = Fraction(rng.randint(1, 24), rng.randint(1, 4)) * scale
            m[i][j] = m[j][i] = w
    for l in range(k):
        for i in range(k):
            for j in range(k):
                if i == j:
                    continue
                via = m[i][l] + m[l][j]
                if via < m[i][j]:
                    m[i][j] = via
    return FiniteMetric(tuple(tuple(row) for row in m))
