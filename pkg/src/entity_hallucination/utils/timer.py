"""Run timing for corpus passes."""
import time

from src.entity_hallucination.utils.logger import logger


class ScopeTimer:
    """Context manager timing one pass over a corpus.

    Usage:
        with ScopeTimer("Filtering train.jsonl") as timer:
            for record in records:
                ...
                timer.tick()
    """

    def __init__(self, description: str):
        """Initialize timer with description.

        Args:
            description: Human-readable description of the pass
        """
        self.description = description
        self.records = 0
        self.start_time: float = 0
        self.end_time: float = 0

    def __enter__(self) -> "ScopeTimer":
        self.start_time = time.perf_counter()
        return self

    def tick(self, n: int = 1) -> None:
        """Count processed records."""
        self.records += n

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        """Stop timer and log duration and throughput."""
        self.end_time = time.perf_counter()
        if not self.records:
            logger.info(f"{self.description} took {self.duration:.2f} seconds")
            return
        rate = self.records / self.duration if self.duration > 0 else float("inf")
        logger.info(
            f"{self.description} took {self.duration:.2f} seconds "
            f"({self.records} records, {rate:.1f} records/s)"
        )

    @property
    def duration(self) -> float:
        """Elapsed seconds (up to now while the scope is still open)."""
        end = self.end_time or time.perf_counter()
        return end - self.start_time
