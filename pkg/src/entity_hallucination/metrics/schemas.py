"""Pydantic schemas for per-record scores and corpus reports.

Ratios are in [0, 1]; ``None`` marks an UNDEFINED value (zero denominator).
"""

from typing import Annotated, Any, Optional

from pydantic import BaseModel, Field

from src.entity_hallucination.config import DEFAULT_SYSTEM_LABEL
from src.entity_hallucination.matching.policy import MatchPolicy
from src.entity_hallucination.utils.safety import RecordError

ENTITY_METRICS: tuple[str, ...] = (
    "prec_s_u", "prec_s_nu",
    "prec_t_u", "prec_t_nu",
    "recall_t_u", "recall_t_nu",
    "f1_t_u", "f1_t_nu",
)
ROUGE_METRICS: tuple[str, ...] = ("rouge1_f", "rouge2_f", "rougeL_f", "rougeLsum_f")
ALL_METRICS: tuple[str, ...] = ROUGE_METRICS + ENTITY_METRICS

Ratio = Optional[Annotated[float, Field(ge=0.0, le=1.0)]]


class EntityCounts(BaseModel):
    """Entity counts behind one counting variant."""

    n_h: int = Field(description="N(h): entities in the hypothesis")
    n_t: Optional[int] = Field(default=None, description="N(t): entities in the target")
    n_h_s: int = Field(description="N(h∩s): hypothesis entities matched in the source")
    n_h_t: Optional[int] = Field(default=None, description="N(h∩t), hypothesis to target direction")
    n_t_h: Optional[int] = Field(default=None, description="N(t∩h), target to hypothesis direction")


class RecordScores(BaseModel):
    """All metric values of one record."""

    record_id: str

    prec_s_u: Ratio = None
    prec_s_nu: Ratio = None
    prec_t_u: Ratio = None
    prec_t_nu: Ratio = None
    recall_t_u: Ratio = None
    recall_t_nu: Ratio = None
    f1_t_u: Ratio = None
    f1_t_nu: Ratio = None

    rouge1_f: Ratio = None
    rouge2_f: Ratio = None
    rougeL_f: Ratio = None
    rougeLsum_f: Ratio = None

    counts_u: EntityCounts
    counts_nu: EntityCounts

    def value(self, metric: str) -> Ratio:
        return getattr(self, metric)


class MetricReport(BaseModel):
    """Per-record scores plus macro-averaged corpus percentages."""

    meta: dict[str, Any] = Field(default_factory=dict, description="Toolkit version and config echo")
    system: str = Field(default=DEFAULT_SYSTEM_LABEL, description="Row label of the scored system")
    policy_echo: MatchPolicy
    aggregate: dict[str, Optional[float]] = Field(
        description="Mean of defined per-record values x 100; None when no record defines the metric"
    )
    undefined_counts: dict[str, int] = Field(description="Records skipped per metric")
    per_record: list[RecordScores]
    errors: list[RecordError] = Field(default_factory=list)


class ComparisonReport(BaseModel):
    """Reports of several systems scored on the same corpus, in row order."""

    meta: dict[str, Any] = Field(default_factory=dict, description="Toolkit version and config echo")
    systems: list[MetricReport] = Field(min_length=1)
