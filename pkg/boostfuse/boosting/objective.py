"""Squared loss and the regularised second-order tree objective.

For a leaf with gradient sum G and hessian sum H the optimal weight is
-G / (H + mu) and its contribution to the objective is
-1/2 * G**2 / (H + mu) + gamma.
"""
from typing import NamedTuple, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from boostfuse.errors import SingularityError

FloatArray = npt.NDArray[np.float64]


class GradPair(NamedTuple):
    g: float
    h: float


class Gradients(NamedTuple):
    g: FloatArray
    h: FloatArray


def squared_loss(y: npt.ArrayLike, yhat: npt.ArrayLike) -> float:
    residual = np.asarray(y, dtype=np.float64) - np.asarray(
        yhat, dtype=np.float64
    )
    return float(0.5 * np.sum(residual * residual))


def loss_grad(y: float, yhat: float) -> GradPair:
    return GradPair(g=yhat - y, h=1.0)


def loss_gradients(y: FloatArray, yhat: FloatArray) -> Gradients:
    return Gradients(g=yhat - y, h=np.ones_like(y))


def _check_denominator(h: float, mu: float) -> float:
    denominator = h + mu
    if not denominator > 0:
        raise SingularityError(f'H + mu must be positive, got {denominator}')
    return denominator


def leaf_weight(g: float, h: float, mu: float) -> float:
    return -g / _check_denominator(h, mu)


def leaf_objective(
    leaves: Sequence[Tuple[float, float]], mu: float, gamma: float
) -> float:
    score = sum(g * g / _check_denominator(h, mu) for g, h in leaves)
    return -0.5 * score + gamma * len(leaves)


def split_gain(
    g_left: float,
    h_left: float,
    g_right: float,
    h_right: float,
    mu: float,
    gamma: float,
) -> float:
    left = g_left * g_left / _check_denominator(h_left, mu)
    right = g_right * g_right / _check_denominator(h_right, mu)
    g_parent = g_left + g_right
    parent = g_parent * g_parent / _check_denominator(h_left + h_right, mu)
    return 0.5 * (left + right - parent) - gamma


def split_gains(
    g_left: FloatArray,
    h_left: FloatArray,
    g_total: float,
    h_total: float,
    mu: float,
    gamma: float,
) -> FloatArray:
    """Vectorised ``split_gain`` over candidate prefixes of one leaf.

    Callers only pass candidates leaving at least one row per side, so every
    denominator is positive when mu > 0 or hessians are positive.
    """
    g_right = g_total - g_left
    h_right = h_total - h_left
    parent = g_total * g_total / _check_denominator(h_total, mu)
    with np.errstate(divide='ignore', invalid='ignore'):
        gains = 0.5 * (
            g_left * g_left / (h_left + mu)
            + g_right * g_right / (h_right + mu)
            - parent
        ) - gamma
    return np.where((h_left + mu > 0) & (h_right + mu > 0), gains, -np.inf)
