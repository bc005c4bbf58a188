"""Range partitioning and process fan-out for the brute-force searches."""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, TypeVar

from src.config import settings
from src.utils.logger import log

T = TypeVar("T")
R = TypeVar("R")


def chunked_range(
    start: int, stop: int, size: Optional[int] = None
) -> List[Tuple[int, int]]:
    """Split the half-open interval [start, stop) into consecutive chunks.

    Args:
        start: First value (inclusive)
        stop: Last value (exclusive)
        size: Chunk length, defaults to ``settings.parallel_chunk_size``

    Returns:
        List of (chunk_start, chunk_stop) pairs covering the interval in order
    """
    size = size or settings.parallel_chunk_size
    return [(lo, min(lo + size, stop)) for lo in range(start, stop, size)]


def parallel_map(
    func: Callable[[T], R],
    items: Sequence[T],
    workers: Optional[int] = None,
) -> List[R]:
    """Apply ``func`` to every item, optionally across worker processes.

    Results come back in input order whatever the schedule, so callers that
    merge them get deterministic output. ``func`` must be a picklable
    module-level function when more than one worker is used.

    Args:
        func: Function applied to each item
        items: Work items (typically chunks from :func:`chunked_range`)
        workers: Process count, defaults to ``settings.oracle_workers``

    Returns:
        List of results aligned with ``items``
    """
    if workers is None:
        workers = settings.oracle_workers if settings.parallel_enabled else 1
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    log.debug(f"Fanning out {len(items)} chunks across {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))


def flatten(results: Iterable[Iterable[T]]) -> List[T]:
    """Concatenate per-chunk result lists."""
    return [item for chunk in results for item in chunk]
