import logging
from typing import List, Optional

import numpy as np

from boostfuse.boosting.binning import BinnedMatrix
from boostfuse.boosting.exact import initial_score
from boostfuse.boosting.leafwise import grow_leaf_wise
from boostfuse.boosting.model import BoostModel
from boostfuse.boosting.objective import loss_gradients, squared_loss
from boostfuse.boosting.tree import RegTree
from boostfuse.ingest.matrix import DataMatrix
from boostfuse.metrics import TREES_BUILT
from boostfuse.schema.config.train import LeafWiseConfig
from boostfuse.utils.decorator import measure_latency
from boostfuse.utils.memory import allocate, release

logger = logging.getLogger(__name__)


@measure_latency(method_name='train_hist', stage='hist')
def train_hist(
    matrix: DataMatrix, config: Optional[LeafWiseConfig] = None
) -> BoostModel:
    """Same boosting loop as the exact learner, trees grown leaf-wise over
    binned features."""
    config = config or LeafWiseConfig()
    y = matrix.target
    base_score = initial_score(matrix, config)

    binned = BinnedMatrix.from_matrix(matrix, config.bin_count)
    buffers = binned.bins.nbytes + 2 * y.nbytes
    allocate(buffers)
    logger.debug(
        'Binned %d features into at most %d bins',
        matrix.n_features,
        binned.mapper.max_bins,
    )

    trees: List[RegTree] = []
    tree_sum = np.zeros_like(y)
    prediction = np.full_like(y, base_score)
    losses = [squared_loss(y, prediction)]
    try:
        for round_ in range(config.num_trees):
            grads = loss_gradients(y, prediction)
            tree = grow_leaf_wise(binned, grads, config)
            allocate(tree.nbytes)
            trees.append(tree)
            TREES_BUILT.labels(learner='hist').inc()

            tree_sum += tree.predict(matrix.rows)
            prediction = base_score + config.learning_rate * tree_sum
            losses.append(squared_loss(y, prediction))
            logger.debug(
                'hist round %d: %d leaves, loss %r',
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
