import datetime as dt
from typing import Annotated, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

FiniteFloat = Annotated[float, Field(allow_inf_nan=False)]
NonNegativeFloat = Annotated[float, Field(ge=0, allow_inf_nan=False)]

DAILY_FIELDS: Tuple[str, ...] = (
    'host_daily_power',
    'chiller_pump_daily_power',
    'cooling_tower_daily_power',
    'room_daily_electricity',
    'system_daily_cooling',
)

MINUTELY_FIELDS: Tuple[str, ...] = (
    'instantaneous_active_power',
    'daily_cumulative_electricity',
    'yearly_cumulative_electricity',
    'yearly_mean_cop',
)


class MinutelyRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    timestamp: dt.datetime
    instantaneous_active_power: FiniteFloat
    daily_cumulative_electricity: FiniteFloat
    yearly_cumulative_electricity: FiniteFloat
    yearly_mean_cop: FiniteFloat


class DailyRecordBase(BaseModel):
    model_config = ConfigDict(frozen=True)

    date: dt.date
    extra: Dict[str, FiniteFloat] = {}


class DailyRecord(DailyRecordBase):
    host_daily_power: NonNegativeFloat
    chiller_pump_daily_power: NonNegativeFloat
    cooling_tower_daily_power: NonNegativeFloat
    room_daily_electricity: NonNegativeFloat
    system_daily_cooling: NonNegativeFloat

    def value(self, name: str) -> float:
        if name in DAILY_FIELDS:
            return float(getattr(self, name))
        return self.extra[name]

    def has(self, name: str) -> bool:
        return name in DAILY_FIELDS or name in self.extra


# Daily record rebuilt from gateway minutes: only the fields the gateway
# reports are known.
class PartialDailyRecord(DailyRecordBase):
    host_daily_power: Optional[NonNegativeFloat] = None
    chiller_pump_daily_power: Optional[NonNegativeFloat] = None
    cooling_tower_daily_power: Optional[NonNegativeFloat] = None
    room_daily_electricity: Optional[NonNegativeFloat] = None
    system_daily_cooling: Optional[NonNegativeFloat] = None


class ColumnSchema(BaseModel):
    """Canonical field name -> header string of the source file.

    Fields left out of ``aliases`` are looked up under their own name.
    Alias keys that are not canonical fields declare extended columns.
    """

    model_config = ConfigDict(frozen=True)

    date_column: str = 'date'
    aliases: Dict[str, str] = {}

    def header_for(self, name: str) -> str:
        return self.aliases.get(name, name)

    def extended_aliases(self) -> Dict[str, str]:
        return {
            name: header
            for name, header in self.aliases.items()
            if name not in DAILY_FIELDS and name != 'date'
        }
