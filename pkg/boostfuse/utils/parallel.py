from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from conf.config import settings

T = TypeVar('T')
R = TypeVar('R')


def ordered_map(
    fn: Callable[[T], R],
    items: Iterable[T],
    max_workers: Optional[int] = None,
) -> List[R]:
    """Map ``fn`` over ``items`` on a thread pool, results in input order.

    Callers reduce the returned list sequentially, so the outcome does not
    depend on how many workers ran.
    """
    work = list(items)
    workers = min(max_workers or settings.worker_count(), len(work))
    if workers <= 1:
        return [fn(item) for item in work]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, work))
