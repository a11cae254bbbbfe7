import time
from functools import wraps
from typing import Callable, ParamSpec, TypeVar

from boostfuse.metrics import STAGE_LATENCY

P = ParamSpec('P')
R = TypeVar('R')


# Decorator measuring the wall time of a pipeline stage
def measure_latency(
    method_name: str, stage: str
) -> Callable[[Callable[P, R]], Callable[P, R]]:
    def decorator(func: Callable[P, R]) -> Callable[P, R]:
        @wraps(func)
        def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
            start_time = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                process_time = time.perf_counter() - start_time
                STAGE_LATENCY.labels(
                    method=method_name, stage=stage
                ).observe(process_time)

        return wrapper

    return decorator
