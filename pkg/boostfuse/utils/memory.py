"""Buffer accounting used for the peak-memory column of model comparisons.

Learners report the buffers they keep alive (sorted column blocks, binned
matrices, histograms, gradients, finished trees). The numbers are an
estimate, not an OS measurement, so they are deterministic across platforms.
"""
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, List

_lock = threading.Lock()
_scopes: List['AllocationCounter'] = []


@dataclass
class AllocationCounter:
    current: int = 0
    peak: int = 0

    def add(self, nbytes: int) -> None:
        self.current += nbytes
        self.peak = max(self.peak, self.current)

    def remove(self, nbytes: int) -> None:
        self.current = max(0, self.current - nbytes)


@contextmanager
def allocation_scope() -> Iterator[AllocationCounter]:
    counter = AllocationCounter()
    with _lock:
        _scopes.append(counter)
    try:
        yield counter
    finally:
        with _lock:
            _scopes.remove(counter)


def allocate(nbytes: int) -> None:
    with _lock:
        for counter in _scopes:
            counter.add(nbytes)


def release(nbytes: int) -> None:
    with _lock:
        for counter in _scopes:
            counter.remove(nbytes)
