"""복잡도 계약 계측 (테스트용 프로브)"""

import weakref
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Iterator, Optional

import numpy as np


class Probe:
    """
    활성화된 동안 알고리즘의 자원 사용량을 모은다

    - live_cells / peak_cells: track()으로 등록된 DP 버퍼 중 아직 살아 있는 셀 수와 그 최댓값.
      버퍼가 해제(참조 0)되는 시점에 live_cells에서 빠진다.
    - comparisons: KMP 스캔 단계의 심볼 비교 횟수 (누적)
    """

    def __init__(self):
        self.live_cells = 0
        self.peak_cells = 0
        self.comparisons = 0

    def acquire(self, count: int) -> None:
        self.live_cells += count
        if self.live_cells > self.peak_cells:
            self.peak_cells = self.live_cells

    def release(self, count: int) -> None:
        self.live_cells -= count


_active: ContextVar[Optional[Probe]] = ContextVar("s2s_probe", default=None)


@contextmanager
def probe() -> Iterator[Probe]:
    current = Probe()
    token = _active.set(current)
    try:
        yield current
    finally:
        _active.reset(token)


def track(array: np.ndarray) -> np.ndarray:
    """활성 프로브에 배열의 셀 수를 더하고, 배열이 해제될 때 뺀다"""
    current = _active.get()
    if current is None:
        return array
    current.acquire(array.size)
    weakref.finalize(array, current.release, array.size)
    return array


def add_comparisons(count: int) -> None:
    current = _active.get()
    if current is not None:
        current.comparisons += count
