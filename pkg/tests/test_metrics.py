"""Metric container and validation tests."""

from fractions import Fraction

import numpy as np
import pytest

from polyvor import (
    FiniteMetric,
    MetricError,
    NonpositiveOffDiagonal,
    NonzeroDiagonal,
    NotSymmetric,
    TriangleViolation,
    validate_metric,
)
from polyvor.metrics import random_metric


def test_validate_examples(metrics):
    for d in metrics.values():
        assert isinstance(d, FiniteMetric)
        assert d.n_states == 3
        for row in d.entries:
            for v in row:
                assert isinstance(v, Fraction)


def test_string_rational_entries():
    d = validate_metric([[0, "1/2"], ["1/2", 0]])
    assert d[0, 1] == Fraction(1, 2)


def test_non_square_rejected():
    with pytest.raises(MetricError):
        validate_metric([[0, 1], [1, 0], [1, 1]])
    with pytest.raises(MetricError):
        validate_metric([[0]])


def test_indexing_and_symmetry_access(metrics):
    d = metrics["two_cell"]
    assert d[0, 1] == 2
    assert d[1, 0] == 2
    assert d[0, 2] == 3
    assert d[1, 2] == 4
    assert d.n_states == 3
    assert d.n == 2


def test_nonzero_diagonal():
    with pytest.raises(NonzeroDiagonal) as exc:
        validate_metric([[1, 1, 1], [1, 0, 1], [1, 1, 0]])
    assert exc.value.indices == (1,)


def test_not_symmetric():
    with pytest.raises(NotSymmetric) as exc:
        validate_metric([[0, 1, 1], [2, 0, 1], [1, 1, 0]])
    assert exc.value.indices == (1, 2)


def test_nonpositive_off_diagonal():
    with pytest.raises(NonpositiveOffDiagonal) as exc:
        validate_metric([[0, 0, 1], [0, 0, 1], [1, 1, 0]])
    assert exc.value.indices == (1, 2)


def test_triangle_violation_reports_1_based_triple():
    # d(1,3) = 3 > d(1,2) + d(2,3) = 2
    with pytest.raises(TriangleViolation) as exc:
        validate_metric([[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    assert exc.value.indices == (1, 3, 2)
    assert isinstance(exc.value, MetricError)


def test_errors_are_metric_errors():
    for bad, err in (
        ([[0, -1], [-1, 0]], NonpositiveOffDiagonal),
        ([[0, 1], [2, 0]], NotSymmetric),
    ):
        with pytest.raises(err):
            validate_metric(bad)


def test_random_metric_is_valid_and_deterministic():
    rng = np.random.default_rng(4821)
    for _ in range(50):
        seed = int(rng.integers(0, 10_000))
        for n in (2, 3, 4):
            d = random_metric(n, seed)
            again = random_metric(n, seed)
            assert d.entries == again.entries
            assert validate_metric(d.as_lists()).entries == d.entries
            for i in range(n):
                for j in range(n):
                    assert isinstance(d[i, j], Fraction)
                    assert d[i, j] == d[j, i]


def test_random_metric_scale():
    d = random_metric(3, 7)
    scaled = random_metric(3, 7, scale=Fraction(3))
    for i in range(3):
        for j in range(3):
            assert scaled[i, j] == 3 * d[i, j]


def test_metric_hashable(metrics):
    seen = {metrics["unit"]: "a", metrics["line"]: "b"}
    assert seen[validate_metric([[0, 1, 1], [1, 0, 1], [1, 1, 0]])] == "a"
