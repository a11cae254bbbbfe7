import numpy as np
import pytest

from tests.synthetic import integer_instance, regression_matrix

from boostfuse.boosting.binning import BinnedMatrix
from boostfuse.boosting.exact import find_best_split
from boostfuse.boosting.histogram import (
    Histogram,
    best_split_from_histogram,
    build_histogram,
)
from boostfuse.boosting.objective import Gradients
from boostfuse.errors import ArgumentError
from boostfuse.schema.config.train import TrainConfig


@pytest.fixture()
def binned() -> BinnedMatrix:
    return BinnedMatrix.from_matrix(regression_matrix(2, n=300, m=3), 16)


@pytest.fixture()
def grads(binned: BinnedMatrix) -> Gradients:
    rng = np.random.default_rng(2)
    n = binned.matrix.n_rows
    return Gradients(g=rng.normal(size=n), h=rng.uniform(0.5, 1.0, size=n))


def n_bins(binned: BinnedMatrix) -> tuple[int, ...]:
    return tuple(
        binned.mapper.n_bins(j) for j in range(binned.mapper.n_features)
    )


def test_single_row(binned: BinnedMatrix, grads: Gradients) -> None:
    hist = build_histogram(
        np.array([7]), grads, binned.bins, n_bins(binned)
    )

    assert np.all((hist.count != 0).sum(axis=1) == 1)
    for feature in range(3):
        code = binned.bins[7, feature]
        assert hist.sum_g[feature, code] == grads.g[7]
        assert hist.count[feature, code] == 1


def test_union_is_entrywise_sum(
    binned: BinnedMatrix, grads: Gradients
) -> None:
    rows = np.random.default_rng(9).permutation(binned.matrix.n_rows)
    first, second = np.sort(rows[:120]), np.sort(rows[120:])
    widths = n_bins(binned)

    union = build_histogram(np.arange(300), grads, binned.bins, widths)
    parts = build_histogram(first, grads, binned.bins, widths)
    parts = parts + build_histogram(second, grads, binned.bins, widths)

    assert np.array_equal(parts.count, union.count)
    np.testing.assert_allclose(parts.sum_g, union.sum_g, atol=1e-9)
    np.testing.assert_allclose(parts.sum_h, union.sum_h, atol=1e-9)


def test_sibling_by_subtraction(
    binned: BinnedMatrix, grads: Gradients
) -> None:
    widths = n_bins(binned)
    rows = np.arange(binned.matrix.n_rows)
    left_rows, right_rows = rows[rows % 3 == 0], rows[rows % 3 != 0]

    parent = build_histogram(rows, grads, binned.bins, widths)
    left = build_histogram(left_rows, grads, binned.bins, widths)
    right = build_histogram(right_rows, grads, binned.bins, widths)
    derived = parent - left

    assert np.array_equal(derived.count, right.count)
    np.testing.assert_allclose(derived.sum_g, right.sum_g, atol=1e-9)
    assert parent.totals(1)[2] == 300


def test_empty_rows(binned: BinnedMatrix, grads: Gradients) -> None:
    with pytest.raises(ArgumentError):
        build_histogram(
            np.array([], dtype=np.intp), grads, binned.bins, n_bins(binned)
        )


def test_two_bin_gain() -> None:
    hist = Histogram(
        sum_g=np.array([[2.0, -2.0]]),
        sum_h=np.array([[1.0, 1.0]]),
        count=np.array([[1, 1]]),
        n_bins=(2,),
    )

    split = best_split_from_histogram(hist, 0.0, 0.0, 1)

    assert split is not None
    assert (split.feature, split.bin, split.gain) == (0, 0, 4.0)


def test_zero_gradients_do_not_split(binned: BinnedMatrix) -> None:
    n = binned.matrix.n_rows
    zero = Gradients(g=np.zeros(n), h=np.ones(n))
    hist = build_histogram(np.arange(n), zero, binned.bins, n_bins(binned))

    assert best_split_from_histogram(hist, 0.0, 0.0, 1) is None


def test_empty_bins_are_not_boundaries() -> None:
    hist = Histogram(
        sum_g=np.array([[-2.0, 0.0, 2.0]]),
        sum_h=np.array([[1.0, 0.0, 1.0]]),
        count=np.array([[1, 0, 1]]),
        n_bins=(3,),
    )

    split = best_split_from_histogram(hist, 0.0, 0.0, 1)

    assert split is not None
    assert split.bin == 0


@pytest.mark.parametrize('seed', range(50))
def test_agrees_with_exact_search_on_fine_bins(seed: int) -> None:
    matrix, grads = integer_instance(seed)
    config = TrainConfig()
    binned = BinnedMatrix.from_matrix(matrix, 255)
    hist = build_histogram(
        np.arange(matrix.n_rows), grads, binned.bins, n_bins(binned)
    )

    from_hist = best_split_from_histogram(
        hist,
        config.l2_penalty,
        config.leaf_penalty,
        config.min_samples_leaf,
        binned.mapper,
    )
    exact = find_best_split(np.arange(matrix.n_rows), grads, matrix, config)

    if exact is None:
        assert from_hist is None
        return
    assert from_hist is not None
    assert (from_hist.feature, from_hist.threshold) == (
        exact.feature,
        exact.threshold,
    )
    assert from_hist.gain == pytest.approx(exact.gain, abs=1e-9)
