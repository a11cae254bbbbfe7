"""Versioned JSON model document.

Floats are written by orjson in shortest round-trip form, so a reloaded
model predicts bit-identically. Key order is fixed and nothing
time-dependent is stored, so saving the same model twice yields the same
bytes.
"""
import logging
from typing import IO, Any, Dict, List, Union

import numpy as np
import orjson
from pydantic import ValidationError

from boostfuse.boosting.model import BoostModel
from boostfuse.boosting.tree import LEAF, RegTree
from boostfuse.ensemble.fusion import EnsembleModel
from boostfuse.errors import (
    MalformedDocumentError,
    ModelVersionError,
    TruncatedStreamError,
)
from boostfuse.schema.model.document import (
    BoostModelDocument,
    FusionWeights,
    LeafNodeDocument,
    Learner,
    ModelDocument,
    NodeDocument,
)
from conf.config import settings

logger = logging.getLogger(__name__)

Predictor = Union[BoostModel, EnsembleModel]


def _tree_nodes(tree: RegTree) -> List[Dict[str, Any]]:
    nodes: List[Dict[str, Any]] = []
    for node in range(tree.n_nodes):
        if tree.feature[node] == LEAF:
            nodes.append({'weight': float(tree.value[node])})
        else:
            nodes.append(
                {
                    'feature': int(tree.feature[node]),
                    'threshold': float(tree.threshold[node]),
                    'left': int(tree.left[node]),
                    'right': int(tree.right[node]),
                    'gain': float(tree.gain[node]),
                }
            )
    return nodes


def _boost_model(model: BoostModel) -> Dict[str, Any]:
    return {
        'base_score': float(model.base_score),
        'learning_rate': float(model.learning_rate),
        'trees': [_tree_nodes(tree) for tree in model.trees],
    }


def dump_document(
    model: Predictor,
    learner: Learner = Learner.exact,
    target_name: str = 'target',
) -> bytes:
    document: Dict[str, Any] = {'version': settings.MODEL_FORMAT_VERSION}
    if isinstance(model, EnsembleModel):
        document.update(
            learner=Learner.ensemble.value,
            feature_names=list(model.feature_names),
            target_name=model.target_name,
            models=[
                _boost_model(model.model_exact),
                _boost_model(model.model_hist),
            ],
            weights={
                'w_exact': model.weights.w_exact,
                'w_hist': model.weights.w_hist,
            },
            holdout_mae_exact=model.holdout_mae_exact,
            holdout_mae_hist=model.holdout_mae_hist,
        )
    else:
        document.update(
            learner=learner.value,
            feature_names=list(model.feature_names),
            target_name=target_name,
            models=[_boost_model(model)],
        )
    return orjson.dumps(
        document, option=orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE
    )


def save_document(
    model: Predictor,
    sink: IO[bytes],
    learner: Learner = Learner.exact,
    target_name: str = 'target',
) -> None:
    sink.write(dump_document(model, learner, target_name))


def save_model(model: EnsembleModel, sink: IO[bytes]) -> None:
    save_document(model, sink)


def _tree(nodes: List[NodeDocument]) -> RegTree:
    n = len(nodes)
    if n == 0:
        raise MalformedDocumentError('Tree without nodes')
    feature = np.full(n, LEAF, dtype=np.intp)
    threshold = np.zeros(n, dtype=np.float64)
    left = np.full(n, LEAF, dtype=np.intp)
    right = np.full(n, LEAF, dtype=np.intp)
    value = np.zeros(n, dtype=np.float64)
    gain = np.zeros(n, dtype=np.float64)
    for i, node in enumerate(nodes):
        if isinstance(node, LeafNodeDocument):
            value[i] = node.weight
            continue
        if not (i < node.left < n and i < node.right < n):
            raise MalformedDocumentError(f'Node {i} has bad child indices')
        feature[i] = node.feature
        threshold[i] = node.threshold
        left[i] = node.left
        right[i] = node.right
        gain[i] = node.gain
    return RegTree(
        feature=feature,
        threshold=threshold,
        left=left,
        right=right,
        value=value,
        gain=gain,
    )


def _model(
    document: BoostModelDocument, feature_names: List[str]
) -> BoostModel:
    trees = tuple(_tree(nodes) for nodes in document.trees)
    for tree in trees:
        if (tree.feature >= len(feature_names)).any():
            raise MalformedDocumentError('Split on an unknown feature')
    return BoostModel(
        base_score=document.base_score,
        trees=trees,
        learning_rate=document.learning_rate,
        feature_names=tuple(feature_names),
    )


def parse_document(data: bytes) -> ModelDocument:
    text = data.strip()
    if not text:
        raise MalformedDocumentError('Empty model document')
    if text.startswith(b'{') and not text.endswith(b'}'):
        raise TruncatedStreamError('Model document ends prematurely')
    try:
        raw = orjson.loads(text)
    except orjson.JSONDecodeError as exc:
        raise MalformedDocumentError(f'Invalid JSON: {exc}') from None
    if not isinstance(raw, dict) or 'version' not in raw:
        raise MalformedDocumentError('Document has no version tag')
    if raw['version'] != settings.MODEL_FORMAT_VERSION:
        raise ModelVersionError(
            f'Unsupported model version {raw["version"]!r}, '
            f'expected {settings.MODEL_FORMAT_VERSION!r}'
        )
    try:
        return ModelDocument.model_validate(raw)
    except ValidationError as exc:
        raise MalformedDocumentError(str(exc)) from None


def model_from_document(document: ModelDocument) -> Predictor:
    models = [_model(m, document.feature_names) for m in document.models]

    if document.learner is not Learner.ensemble:
        if len(models) != 1:
            raise MalformedDocumentError('Single learner with two models')
        return models[0]

    if (
        len(models) != 2
        or document.weights is None
        or document.holdout_mae_exact is None
        or document.holdout_mae_hist is None
    ):
        raise MalformedDocumentError('Incomplete ensemble document')
    return EnsembleModel(
        model_exact=models[0],
        model_hist=models[1],
        weights=FusionWeights(
            w_exact=document.weights.w_exact, w_hist=document.weights.w_hist
        ),
        holdout_mae_exact=document.holdout_mae_exact,
        holdout_mae_hist=document.holdout_mae_hist,
        target_name=document.target_name,
    )


def load_document(source: IO[bytes]) -> Predictor:
    return model_from_document(parse_document(source.read()))


def load_model(source: IO[bytes]) -> EnsembleModel:
    model = load_document(source)
    if not isinstance(model, EnsembleModel):
        raise MalformedDocumentError('Document holds a single learner')
    return model
