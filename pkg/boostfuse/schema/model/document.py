import enum
from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Learner(str, enum.Enum):
    exact = 'exact'
    hist = 'hist'
    ensemble = 'ensemble'


class FusionWeights(BaseModel):
    model_config = ConfigDict(frozen=True)

    w_exact: float = Field(ge=0, le=1)
    w_hist: float = Field(ge=0, le=1)

    @model_validator(mode='after')
    def check_sum(self) -> 'FusionWeights':
        if abs(self.w_exact + self.w_hist - 1.0) > 1e-12:
            raise ValueError('Fusion weights must sum to 1')
        return self


class SplitNodeDocument(BaseModel):
    model_config = ConfigDict(extra='forbid')

    feature: int = Field(ge=0)
    threshold: float
    left: int = Field(ge=0)
    right: int = Field(ge=0)
    gain: float = 0.0


class LeafNodeDocument(BaseModel):
    model_config = ConfigDict(extra='forbid')

    weight: float


NodeDocument = Union[SplitNodeDocument, LeafNodeDocument]


class BoostModelDocument(BaseModel):
    model_config = ConfigDict(extra='forbid')

    base_score: float
    learning_rate: float = Field(gt=0, le=1)
    trees: List[List[NodeDocument]]


class ModelDocument(BaseModel):
    model_config = ConfigDict(extra='forbid')

    version: str
    learner: Learner
    feature_names: List[str]
    target_name: str
    models: List[BoostModelDocument] = Field(min_length=1, max_length=2)
    weights: Optional[FusionWeights] = None
    holdout_mae_exact: Optional[float] = None
    holdout_mae_hist: Optional[float] = None
