from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
import numpy.typing as npt

from boostfuse.boosting.tree import RegTree
from boostfuse.errors import ArgumentError

FloatArray = npt.NDArray[np.float64]


@dataclass(frozen=True)
class BoostModel:
    """Additive model: base_score + learning_rate * sum of tree outputs."""

    base_score: float
    trees: Tuple[RegTree, ...]
    learning_rate: float
    feature_names: Tuple[str, ...]
    # 1/2 * sum of squared residuals after each round, index 0 = base score
    train_loss: Tuple[float, ...] = field(default=(), compare=False)

    def _check_width(self, width: int) -> None:
        if width != len(self.feature_names):
            raise ArgumentError(
                f'Row has {width} values, model expects '
                f'{len(self.feature_names)}'
            )

    def predict(self, row: npt.ArrayLike) -> float:
        x = np.asarray(row, dtype=np.float64)
        if x.ndim != 1:
            raise ArgumentError('predict expects a single row')
        self._check_width(x.shape[0])
        total = 0.0
        for tree in self.trees:
            total += tree.predict_row(x)
        return self.base_score + self.learning_rate * total

    def predict_batch(self, rows: npt.ArrayLike) -> FloatArray:
        x = np.asarray(rows, dtype=np.float64)
        if x.ndim != 2:
            raise ArgumentError('predict_batch expects a 2-d array')
        self._check_width(x.shape[1])
        total = np.zeros(x.shape[0], dtype=np.float64)
        for tree in self.trees:
            total += tree.predict(x)
        return self.base_score + self.learning_rate * total

    @property
    def nbytes(self) -> int:
        return sum(tree.nbytes for tree in self.trees)


def predict(model: BoostModel, row: npt.ArrayLike) -> float:
    return model.predict(row)
