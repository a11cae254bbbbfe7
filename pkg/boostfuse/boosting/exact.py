"""Exact greedy learner: every midpoint between consecutive distinct feature
values of a node is a split candidate."""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
import numpy.typing as npt

from boostfuse.boosting.model import BoostModel
from boostfuse.boosting.objective import (
    Gradients,
    leaf_weight,
    loss_gradients,
    split_gains,
    squared_loss,
)
from boostfuse.boosting.tree import RegTree, TreeBuilder, midpoint
from boostfuse.ingest.matrix import DataMatrix
from boostfuse.metrics import TREES_BUILT
from boostfuse.schema.config.train import TrainConfig
from boostfuse.utils.decorator import measure_latency
from boostfuse.utils.memory import allocate, release
from boostfuse.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

IndexArray = npt.NDArray[np.intp]


@dataclass(frozen=True)
class SplitCandidate:
    feature: int
    threshold: float
    gain: float
    # last bin on the left side, histogram splits only
    bin: Optional[int] = None


def better(
    best: Optional[SplitCandidate], candidate: Optional[SplitCandidate]
) -> Optional[SplitCandidate]:
    # strict comparison keeps the earlier (lower feature) candidate on ties
    if candidate is None:
        return best
    if best is None or candidate.gain > best.gain:
        return candidate
    return best


def presort_columns(matrix: DataMatrix) -> IndexArray:
    """Row order of every feature column, computed once per training run."""
    return np.argsort(matrix.rows, axis=0, kind='stable')


def _feature_best_split(
    feature: int,
    ordered_rows: IndexArray,
    grads: Gradients,
    matrix: DataMatrix,
    config: TrainConfig,
) -> Optional[SplitCandidate]:
    values = matrix.rows[ordered_rows, feature]
    n = values.shape[0]
    g_prefix = np.cumsum(grads.g[ordered_rows])
    h_prefix = np.cumsum(grads.h[ordered_rows])

    left_count = np.arange(1, n)
    valid = (
        (values[1:] != values[:-1])
        & (left_count >= config.min_samples_leaf)
        & (n - left_count >= config.min_samples_leaf)
    )
    if not valid.any():
        return None

    gains = split_gains(
        g_prefix[:-1],
        h_prefix[:-1],
        float(g_prefix[-1]),
        float(h_prefix[-1]),
        config.l2_penalty,
        config.leaf_penalty,
    )
    gains = np.where(valid, gains, -np.inf)
    position = int(np.argmax(gains))
    gain = float(gains[position])
    if not gain > 0:
        return None
    return SplitCandidate(
        feature=feature,
        threshold=midpoint(
            float(values[position]), float(values[position + 1])
        ),
        gain=gain,
    )


def find_best_split(
    rows: IndexArray,
    grads: Gradients,
    matrix: DataMatrix,
    config: TrainConfig,
    block: Optional[IndexArray] = None,
) -> Optional[SplitCandidate]:
    """Best positive-gain split of ``rows``, or None (pre-pruning).

    Ties go to the lower feature index, then the lower threshold.
    """
    rows = np.asarray(rows, dtype=np.intp)
    if rows.shape[0] < 2:
        return None

    in_node: Optional[npt.NDArray[np.bool_]] = None
    if block is not None:
        in_node = np.zeros(matrix.n_rows, dtype=np.bool_)
        in_node[rows] = True

    def search(feature: int) -> Optional[SplitCandidate]:
        if block is not None and in_node is not None:
            order = block[:, feature]
            ordered_rows = order[in_node[order]]
        else:
            ordered_rows = rows[
                np.argsort(matrix.rows[rows, feature], kind='stable')
            ]
        return _feature_best_split(
            feature, ordered_rows, grads, matrix, config
        )

    best: Optional[SplitCandidate] = None
    for candidate in ordered_map(search, range(matrix.n_features)):
        best = better(best, candidate)
    return best


def can_split(n_rows: int, depth: int, config: TrainConfig) -> bool:
    depth_ok = config.max_depth is None or depth < config.max_depth
    return depth_ok and n_rows >= 2 * config.min_samples_leaf


def node_weight(rows: IndexArray, grads: Gradients, mu: float) -> float:
    return leaf_weight(
        float(np.sum(grads.g[rows])), float(np.sum(grads.h[rows])), mu
    )


def build_tree(
    rows: IndexArray,
    grads: Gradients,
    matrix: DataMatrix,
    config: TrainConfig,
    block: Optional[IndexArray] = None,
) -> RegTree:
    builder = TreeBuilder()
    stack: List[Tuple[int, IndexArray, int]] = [
        (builder.reserve(), np.sort(np.asarray(rows, dtype=np.intp)), 0)
    ]
    while stack:
        node, node_rows, depth = stack.pop()
        split = None
        if can_split(node_rows.shape[0], depth, config):
            split = find_best_split(node_rows, grads, matrix, config, block)
        if split is None:
            builder.set_leaf(
                node, node_weight(node_rows, grads, config.l2_penalty)
            )
            continue

        logger.debug(
            'Split node %d on feature %d at %r, gain %r',
            node,
            split.feature,
            split.threshold,
            split.gain,
        )
        go_left = matrix.rows[node_rows, split.feature] <= split.threshold
        left, right = builder.set_split(
            node, split.feature, split.threshold, split.gain
        )
        stack.append((right, node_rows[~go_left], depth + 1))
        stack.append((left, node_rows[go_left], depth + 1))
    return builder.build()


def initial_score(matrix: DataMatrix, config: TrainConfig) -> float:
    return 0.0 if config.zero_base_score else float(np.mean(matrix.target))


@measure_latency(method_name='train', stage='exact')
def train(
    matrix: DataMatrix, config: Optional[TrainConfig] = None
) -> BoostModel:
    config = config or TrainConfig()
    y = matrix.target
    base_score = initial_score(matrix, config)
    rows = np.arange(matrix.n_rows, dtype=np.intp)

    block = presort_columns(matrix)
    buffers = block.nbytes + 2 * y.nbytes
    allocate(buffers)

    trees: List[RegTree] = []
    tree_sum = np.zeros_like(y)
    prediction = np.full_like(y, base_score)
    losses = [squared_loss(y, prediction)]
    try:
        for round_ in range(config.num_trees):
            grads = loss_gradients(y, prediction)
            tree = build_tree(rows, grads, matrix, config, block)
            allocate(tree.nbytes)
            trees.append(tree)
            TREES_BUILT.labels(learner='exact').inc()

            tree_sum += tree.predict(matrix.rows)
            prediction = base_score + config.learning_rate * tree_sum
            losses.append(squared_loss(y, prediction))
            logger.debug(
                'exact round %d: %d leaves, loss %r',
                round_,
                tree.num_leaves,
                losses[-1],
            )
    finally:
        release(buffers)

    return BoostModel(
        base_score=base_score,
        trees=tuple(trees),
        learning_rate=config.learning_rate,
        feature_names=matrix.feature_names,
        train_loss=tuple(losses),
    )
