import enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class AccuracyMetric(str, enum.Enum):
    r_squared = 'r_squared'
    band_accuracy = 'band_accuracy'


class Metrics(BaseModel):
    model_config = ConfigDict(frozen=True)

    mae: float = Field(ge=0)
    rmse: float = Field(ge=0)
    # None when the actuals are constant
    r_squared: Optional[float] = None
    band_accuracy: float = Field(ge=0, le=1)
    band: float = Field(gt=0)
    n: int = Field(ge=1)

    @property
    def r_squared_defined(self) -> bool:
        return self.r_squared is not None

    def accuracy(self, metric: AccuracyMetric) -> Optional[float]:
        if metric is AccuracyMetric.r_squared:
            return self.r_squared
        return self.band_accuracy


class MetricSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    mae: float
    rmse: float
    # over folds where r squared is defined; None if none were
    r_squared: Optional[float] = None
    band_accuracy: float


class CVResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    fold_metrics: List[Metrics]
    mean_metrics: MetricSummary
    std_metrics: MetricSummary
    fold_assignment: List[int]
    seed: int

    def fold_sizes(self) -> Dict[int, int]:
        sizes: Dict[int, int] = {}
        for fold in self.fold_assignment:
            sizes[fold] = sizes.get(fold, 0) + 1
        return sizes


class ComparisonRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    model_name: str
    accuracy_metric: AccuracyMetric
    accuracy: Optional[float] = None
    peak_memory_estimate: int = Field(ge=0)
    train_time: float = Field(ge=0, description='milliseconds')
    metrics: Metrics
