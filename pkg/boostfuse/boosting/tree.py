from dataclasses import dataclass, field
from typing import List

import numpy as np
import numpy.typing as npt

from boostfuse.errors import ArgumentError

FloatArray = npt.NDArray[np.float64]
IndexArray = npt.NDArray[np.intp]

LEAF = -1
NODE_ARRAYS = ('feature', 'threshold', 'left', 'right', 'value', 'gain')


@dataclass(frozen=True)
class RegTree:
    """Binary regression tree stored as parallel node arrays.

    Node 0 is the root. For a split node ``feature >= 0`` and rows with
    ``x[feature] <= threshold`` go to ``left``; for a leaf ``feature`` is
    LEAF and ``value`` holds its weight. ``gain`` is the split gain
    recorded at growth time (0 for leaves).
    """

    feature: IndexArray
    threshold: FloatArray
    left: IndexArray
    right: IndexArray
    value: FloatArray
    gain: FloatArray

    def __post_init__(self) -> None:
        for name in NODE_ARRAYS:
            getattr(self, name).setflags(write=False)

    @property
    def n_nodes(self) -> int:
        return int(self.feature.shape[0])

    @property
    def num_leaves(self) -> int:
        return len(self.leaves())

    def is_leaf(self, node: int) -> bool:
        return bool(self.feature[node] == LEAF)

    def leaves(self) -> List[int]:
        found, stack = [], [0]
        while stack:
            node = stack.pop()
            if self.is_leaf(node):
                found.append(node)
            else:
                stack.extend((int(self.right[node]), int(self.left[node])))
        return found

    def depth(self) -> int:
        deepest, stack = 0, [(0, 0)]
        while stack:
            node, level = stack.pop()
            if self.is_leaf(node):
                deepest = max(deepest, level)
            else:
                stack.append((int(self.left[node]), level + 1))
                stack.append((int(self.right[node]), level + 1))
        return deepest

    def predict_row(self, row: npt.ArrayLike) -> float:
        x = np.asarray(row, dtype=np.float64)
        node = 0
        while not self.is_leaf(node):
            if x[self.feature[node]] <= self.threshold[node]:
                node = int(self.left[node])
            else:
                node = int(self.right[node])
        return float(self.value[node])

    def apply(self, rows: FloatArray) -> IndexArray:
        """Leaf node id reached by every row."""
        if rows.ndim != 2:
            raise ArgumentError('Expected a 2-d array of rows')
        node = np.zeros(rows.shape[0], dtype=np.intp)
        active = np.flatnonzero(self.feature[node] != LEAF)
        while active.size:
            at = node[active]
            go_left = rows[active, self.feature[at]] <= self.threshold[at]
            node[active] = np.where(go_left, self.left[at], self.right[at])
            active = active[self.feature[node[active]] != LEAF]
        return node

    def predict(self, rows: FloatArray) -> FloatArray:
        return self.value[self.apply(rows)]

    @property
    def nbytes(self) -> int:
        return sum(getattr(self, name).nbytes for name in NODE_ARRAYS)


@dataclass
class TreeBuilder:
    feature: List[int] = field(default_factory=list)
    threshold: List[float] = field(default_factory=list)
    left: List[int] = field(default_factory=list)
    right: List[int] = field(default_factory=list)
    value: List[float] = field(default_factory=list)
    gain: List[float] = field(default_factory=list)

    def reserve(self) -> int:
        self.feature.append(LEAF)
        self.threshold.append(0.0)
        self.left.append(LEAF)
        self.right.append(LEAF)
        self.value.append(0.0)
        self.gain.append(0.0)
        return len(self.feature) - 1

    def set_leaf(self, node: int, weight: float) -> None:
        self.feature[node] = LEAF
        self.left[node] = self.right[node] = LEAF
        self.value[node] = weight
        self.gain[node] = 0.0

    def set_split(
        self,
        node: int,
        feature: int,
        threshold: float,
        gain: float,
    ) -> tuple[int, int]:
        left, right = self.reserve(), self.reserve()
        self.feature[node] = feature
        self.threshold[node] = threshold
        self.left[node] = left
        self.right[node] = right
        self.value[node] = 0.0
        self.gain[node] = gain
        return left, right

    def build(self) -> RegTree:
        return RegTree(
            feature=np.array(self.feature, dtype=np.intp),
            threshold=np.array(self.threshold, dtype=np.float64),
            left=np.array(self.left, dtype=np.intp),
            right=np.array(self.right, dtype=np.intp),
            value=np.array(self.value, dtype=np.float64),
            gain=np.array(self.gain, dtype=np.float64),
        )


def midpoint(low: float, high: float) -> float:
    """Threshold separating two consecutive distinct values, ``low`` left."""
    middle = (low + high) / 2
    # adjacent floats can round up onto ``high``
    return middle if middle < high else low
