import statistics

import numpy as np
import pytest

from boostfuse.errors import ArgumentError, DegenerateSeriesError
from boostfuse.features.pearson import classify_strength, pearson, try_pearson
from boostfuse.schema.report.correlation import Strength


@pytest.mark.parametrize(
    ('x', 'y', 'expected'),
    [
        ([1, 2, 3], [2, 4, 6], 1.0),
        ([1, 2, 3], [3, 2, 1], -1.0),
        ([1, 2, 3, 4], [1, 3, 2, 4], 0.8),
    ],
)
def test_pearson_examples(x: list[int], y: list[int], expected: float) -> None:
    assert pearson(x, y) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize(
    ('x', 'y'),
    [
        ([5, 5, 5], [1, 2, 3]),
        ([1, 2, 3], [4, 4, 4]),
        ([1], [2]),
    ],
)
def test_degenerate_series(x: list[int], y: list[int]) -> None:
    with pytest.raises(DegenerateSeriesError):
        pearson(x, y)
    assert try_pearson(x, y) is None


def test_length_mismatch() -> None:
    with pytest.raises(ArgumentError):
        pearson([1, 2, 3], [1, 2])


@pytest.mark.parametrize('seed', range(10))
def test_matches_statistics_module(seed: int) -> None:
    rng = np.random.default_rng(seed)
    x = rng.normal(size=50)
    y = 0.3 * x + rng.normal(size=50)

    expected = statistics.correlation(x.tolist(), y.tolist())

    assert pearson(x, y) == pytest.approx(expected, abs=1e-12)


def test_symmetric_affine_and_order_invariant() -> None:
    rng = np.random.default_rng(7)
    x = rng.normal(size=30)
    y = rng.normal(size=30)

    r = pearson(x, y)

    assert pearson(y, x) == pytest.approx(r, abs=1e-12)
    assert pearson(4.0 * x + 3.0, y) == pytest.approx(r, abs=1e-12)
    assert pearson(-2.0 * x, y) == pytest.approx(-r, abs=1e-12)

    order = rng.permutation(30)
    assert pearson(x[order], y[order]) == pytest.approx(r, abs=1e-12)


def test_stays_within_unit_interval() -> None:
    x = np.linspace(0.1, 0.3, 7) * 1e8
    r = pearson(x, 3.0 * x)

    assert -1.0 <= r <= 1.0


@pytest.mark.parametrize(
    ('r', 'strength'),
    [
        (0.51, Strength.strong),
        (-0.9, Strength.strong),
        (0.5, Strength.moderate),
        (0.4, Strength.moderate),
        (-0.31, Strength.moderate),
        (-0.3, Strength.weak),
        (0.3, Strength.weak),
        (0.0, Strength.weak),
    ],
)
def test_classify_strength(r: float, strength: Strength) -> None:
    assert classify_strength(r) is strength
