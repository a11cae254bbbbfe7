from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class TrainConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    num_trees: int = Field(default=7, ge=0)
    learning_rate: float = Field(default=0.3, gt=0, le=1)
    l2_penalty: float = Field(default=1.0, ge=0)
    leaf_penalty: float = Field(default=0.0, ge=0)
    # None grows without a depth cap
    max_depth: Optional[int] = Field(default=6, ge=1)
    min_samples_leaf: int = Field(default=1, ge=1)
    seed: int = 0
    zero_base_score: bool = False


class LeafWiseConfig(TrainConfig):
    max_leaves: int = Field(default=31, ge=2)
    bin_count: int = Field(default=255, ge=2, le=65536)
    histogram_subtraction: bool = False
