"""Ordered parallel map over corpus records."""
import asyncio
import itertools
from typing import AsyncIterator, Callable, Iterable, Optional, TypeVar

from src.entity_hallucination.config import settings
from src.entity_hallucination.utils.logger import logger

T = TypeVar("T")
R = TypeVar("R")


async def map_ordered(
    items: Iterable[T],
    worker: Callable[[T], R],
    jobs: int = 1,
    batch_size: Optional[int] = None,
) -> AsyncIterator[tuple[T, R]]:
    """Run ``worker`` over ``items`` in threads and yield results in input order.

    At most ``jobs`` workers run at once. Items are pulled in batches of
    ``batch_size`` (default from settings) so a corpus is never fully loaded.

    Args:
        items: Input items, consumed lazily
        worker: Synchronous per-item function; must not share mutable state
        jobs: Maximum number of concurrent workers
        batch_size: Items per gather round

    Yields:
        (item, result) pairs in the order of ``items``
    """
    semaphore = asyncio.Semaphore(jobs)
    batch_size = batch_size or settings.batch_size

    async def run_one(item: T) -> R:
        async with semaphore:
            return await asyncio.to_thread(worker, item)

    done = 0
    for batch in itertools.batched(items, batch_size):
        results = await asyncio.gather(*(run_one(item) for item in batch))
        done += len(batch)
        logger.debug(f"Processed {done} records")
        for item, result in zip(batch, results):
            yield item, result
