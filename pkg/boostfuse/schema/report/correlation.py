import enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class Strength(str, enum.Enum):
    strong = 'Strong'
    moderate = 'Moderate'
    weak = 'Weak'


class CorrelationEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    feature: str
    r: Optional[float] = Field(default=None, ge=-1 - 1e-12, le=1 + 1e-12)
    strength: Optional[Strength] = None
    n: int
    degenerate: bool = False
    indirectly_relevant: bool = False

    def flags(self) -> List[str]:
        flags = []
        if self.degenerate:
            flags.append('degenerate')
        if self.indirectly_relevant:
            flags.append('indirectly_relevant')
        return flags


class SecondOrderLink(BaseModel):
    model_config = ConfigDict(frozen=True)

    feature: str
    # None when the pair is degenerate
    r: Optional[float] = None


class CorrelationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    target: str
    entries: List[CorrelationEntry]
    second_order: Dict[str, List[SecondOrderLink]] = {}

    def entry(self, feature: str) -> CorrelationEntry:
        for entry in self.entries:
            if entry.feature == feature:
                return entry
        raise KeyError(feature)

    def with_strength(self, strength: Strength) -> List[CorrelationEntry]:
        return [e for e in self.entries if e.strength is strength]
