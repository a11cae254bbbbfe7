"""Best-first (leaf-wise) growth over histogram statistics.

Every live leaf carries its best split; the leaf with the highest gain is
split next, earliest-created leaf first on ties. Growth stops at
``max_leaves``, when no leaf has a positive gain, or when every remaining
leaf sits at ``max_depth``.
"""
import heapq
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
import numpy.typing as npt

from boostfuse.boosting.binning import BinnedMatrix
from boostfuse.boosting.exact import SplitCandidate, can_split, node_weight
from boostfuse.boosting.histogram import (
    Histogram,
    best_split_from_histogram,
    build_histogram,
)
from boostfuse.boosting.objective import Gradients
from boostfuse.boosting.tree import RegTree, TreeBuilder
from boostfuse.schema.config.train import LeafWiseConfig
from boostfuse.utils.memory import allocate, release

logger = logging.getLogger(__name__)

IndexArray = npt.NDArray[np.intp]


@dataclass(frozen=True)
class SplitEvent:
    node: int
    feature: int
    threshold: float
    bin: int
    gain: float
    depth: int


@dataclass
class _Leaf:
    node: int
    rows: IndexArray
    depth: int
    created: int
    split: Optional[SplitCandidate] = None
    hist: Optional[Histogram] = None


@dataclass
class LeafWiseGrower:
    binned: BinnedMatrix
    grads: Gradients
    config: LeafWiseConfig
    history: List[SplitEvent] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._builder = TreeBuilder()
        self._created = 0
        self._n_bins = tuple(
            self.binned.mapper.n_bins(j)
            for j in range(self.binned.mapper.n_features)
        )

    def _histogram(self, rows: IndexArray) -> Histogram:
        hist = build_histogram(
            rows, self.grads, self.binned.bins, self._n_bins
        )
        allocate(hist.nbytes)
        return hist

    def _drop(self, hist: Optional[Histogram]) -> None:
        if hist is not None:
            release(hist.nbytes)

    def _leaf(
        self,
        node: int,
        rows: IndexArray,
        depth: int,
        hist: Optional[Histogram] = None,
    ) -> _Leaf:
        leaf = _Leaf(node=node, rows=rows, depth=depth, created=self._created)
        self._created += 1
        if not can_split(rows.shape[0], depth, self.config):
            self._drop(hist)
            return leaf

        if hist is None:
            hist = self._histogram(rows)
        leaf.split = best_split_from_histogram(
            hist,
            self.config.l2_penalty,
            self.config.leaf_penalty,
            self.config.min_samples_leaf,
            self.binned.mapper,
        )
        if self.config.histogram_subtraction and leaf.split is not None:
            leaf.hist = hist
        else:
            self._drop(hist)
        return leaf

    def _children_histograms(
        self, parent: _Leaf, left_rows: IndexArray, right_rows: IndexArray
    ) -> Tuple[Optional[Histogram], Optional[Histogram]]:
        if parent.hist is None:
            return None, None
        # build the smaller child, derive its sibling from the parent
        if left_rows.shape[0] <= right_rows.shape[0]:
            left = self._histogram(left_rows)
            right = parent.hist - left
            allocate(right.nbytes)
        else:
            right = self._histogram(right_rows)
            left = parent.hist - right
            allocate(left.nbytes)
        self._drop(parent.hist)
        parent.hist = None
        return left, right

    def grow(self) -> RegTree:
        rows = np.arange(self.binned.matrix.n_rows, dtype=np.intp)
        root = self._leaf(self._builder.reserve(), rows, 0)
        finished: List[_Leaf] = []
        heap: List[Tuple[float, int, _Leaf]] = []

        def push(leaf: _Leaf) -> None:
            if leaf.split is None:
                finished.append(leaf)
            else:
                heapq.heappush(heap, (-leaf.split.gain, leaf.created, leaf))

        push(root)
        n_leaves = 1
        while heap and n_leaves < self.config.max_leaves:
            _, _, leaf = heapq.heappop(heap)
            split = leaf.split
            assert split is not None and split.bin is not None

            go_left = (
                self.binned.bins[leaf.rows, split.feature] <= split.bin
            )
            left_rows, right_rows = leaf.rows[go_left], leaf.rows[~go_left]
            left_node, right_node = self._builder.set_split(
                leaf.node, split.feature, split.threshold, split.gain
            )
            self.history.append(
                SplitEvent(
                    node=leaf.node,
                    feature=split.feature,
                    threshold=split.threshold,
                    bin=split.bin,
                    gain=split.gain,
                    depth=leaf.depth,
                )
            )
            logger.debug(
                'Leaf-wise split of node %d on feature %d, gain %r',
                leaf.node,
                split.feature,
                split.gain,
            )
            left_hist, right_hist = self._children_histograms(
                leaf, left_rows, right_rows
            )
            push(self._leaf(left_node, left_rows, leaf.depth + 1, left_hist))
            push(
                self._leaf(right_node, right_rows, leaf.depth + 1, right_hist)
            )
            n_leaves += 1

        for _, _, leaf in heap:
            self._drop(leaf.hist)
            finished.append(leaf)
        for leaf in finished:
            self._builder.set_leaf(
                leaf.node,
                node_weight(leaf.rows, self.grads, self.config.l2_penalty),
            )
        return self._builder.build()


def grow_leaf_wise(
    binned: BinnedMatrix, grads: Gradients, config: LeafWiseConfig
) -> RegTree:
    return LeafWiseGrower(binned, grads, config).grow()
