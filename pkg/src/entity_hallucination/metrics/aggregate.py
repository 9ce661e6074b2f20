"""Macro aggregation of per-record scores."""
import math
from typing import Any, Optional, Sequence

from src.entity_hallucination.config import DEFAULT_SYSTEM_LABEL
from src.entity_hallucination.matching.policy import MatchPolicy
from src.entity_hallucination.metrics.schemas import ALL_METRICS, MetricReport, RecordScores
from src.entity_hallucination.utils.safety import InvalidArgumentError, RecordError


def aggregate(
    per_record: Sequence[RecordScores],
    policy: Optional[MatchPolicy] = None,
    errors: Sequence[RecordError] = (),
    meta: Optional[dict[str, Any]] = None,
    system: str = DEFAULT_SYSTEM_LABEL,
) -> MetricReport:
    """Corpus report: per-metric mean of defined values, as percentages.

    Records where a metric is UNDEFINED are skipped for that metric and tallied
    in ``undefined_counts``. Sums are exactly rounded, so the result does not
    depend on record order.

    Raises:
        InvalidArgumentError: if ``per_record`` is empty
    """
    if not per_record:
        raise InvalidArgumentError("cannot aggregate an empty list of record scores")

    aggregate_values: dict[str, Optional[float]] = {}
    undefined_counts: dict[str, int] = {}
    for metric in ALL_METRICS:
        defined = [v for v in (r.value(metric) for r in per_record) if v is not None]
        undefined_counts[metric] = len(per_record) - len(defined)
        aggregate_values[metric] = (
            math.fsum(defined) / len(defined) * 100 if defined else None
        )

    return MetricReport(
        meta=meta or {},
        system=system,
        policy_echo=policy or MatchPolicy(),
        aggregate=aggregate_values,
        undefined_counts=undefined_counts,
        per_record=list(per_record),
        errors=list(errors),
    )
