# src/common/parallel.py
"""격자 스윕용 순서 보존 병렬 map"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

from tqdm import tqdm

from .settings import settings

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Iterable[T], desc: str = None) -> list[R]:
    """fn 을 items 에 적용 (입력 순서 유지)

    Args:
        fn: 순수 함수 (공유 가변 상태 없음)
        items: 입력 목록
        desc: tqdm 진행률 표시 라벨 (None 이면 표시 안 함)

    Returns:
        입력 순서대로 정렬된 결과 리스트
    """
    items = list(items)
    show = bool(desc) and settings.verbose and len(items) > 1

    if settings.threads <= 1 or len(items) <= 1:
        return [fn(item) for item in tqdm(items, desc=desc, disable=not show, leave=False)]

    with ThreadPoolExecutor(max_workers=settings.threads) as pool:
        return list(tqdm(pool.map(fn, items), total=len(items), desc=desc, disable=not show, leave=False))
