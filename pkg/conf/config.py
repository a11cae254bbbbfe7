import os
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix='BOOSTFUSE_')

    # BOOSTFUSE_THREADS, None -> hardware parallelism
    THREADS: Optional[int] = None

    LOG_LEVEL: str = 'INFO'
    LOG_FORMAT: str = '%(asctime)s %(levelname)s %(name)s: %(message)s'

    BAND: float = 0.1
    HOLDOUT_FRACTION: float = 0.2
    MODEL_FORMAT_VERSION: str = 'boostfuse-model/1'

    def worker_count(self) -> int:
        if self.THREADS is not None and self.THREADS > 0:
            return self.THREADS
        return os.cpu_count() or 1


settings = Settings()
