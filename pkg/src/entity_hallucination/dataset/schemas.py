"""Pydantic schemas for corpus records and the outcomes of corpus transforms."""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


# ============================================
# Corpus Records
# ============================================

class CorpusRecord(BaseModel):
    """One article-summary pair, optionally with a generated summary.

    Fields the toolkit does not know are carried through unchanged.
    """

    model_config = ConfigDict(extra="allow")

    id: str = Field(min_length=1, description="Unique record key")
    source: str = Field(description="Article text")
    target: str = Field(default="", description="Reference summary text")
    hypothesis: Optional[str] = Field(default=None, description="Generated summary text")

    entities_source: Optional[list[str]] = Field(default=None, description="Annotated source entities")
    entities_target: Optional[list[str]] = Field(default=None, description="Annotated target entities")
    entities_hypothesis: Optional[list[str]] = Field(default=None, description="Annotated hypothesis entities")

    original_target: Optional[str] = Field(
        default=None, description="Target before JAENS augmentation"
    )

    def to_json(self) -> str:
        """Compact single-line JSON; absent optional fields are omitted."""
        return self.model_dump_json(exclude_none=True)


# ============================================
# Cleaning and Length Budgets
# ============================================

class CleaningPolicy(BaseModel):
    """Which removal classes ``clean_text`` applies (all on by default)."""

    model_config = ConfigDict(frozen=True)

    lowercase: bool = True
    remove_citations: bool = True
    remove_symbols: bool = True
    remove_punctuation: bool = True
    remove_numerals: bool = True


class LengthAction(str, Enum):
    """What happens to a record outside the length budgets."""

    TRUNCATE = "truncate"
    """Cut over-long source/target to budget; flag short targets."""

    DROP = "drop"
    FLAG = "flag"
    """Keep the record unchanged and only report it."""


class LengthPolicy(BaseModel):
    """Whitespace-token budgets for sources and targets."""

    model_config = ConfigDict(frozen=True)

    max_source_tokens: int = Field(default=8192, gt=0)
    max_target_tokens: int = Field(default=512, gt=0)
    min_target_tokens: int = Field(default=100, gt=0)
    action: LengthAction = LengthAction.TRUNCATE

    @model_validator(mode="after")
    def _min_not_above_max(self) -> "LengthPolicy":
        if self.min_target_tokens > self.max_target_tokens:
            raise ValueError(
                f"min_target_tokens ({self.min_target_tokens}) exceeds "
                f"max_target_tokens ({self.max_target_tokens})"
            )
        return self


class LengthOutcome(BaseModel):
    """Result of the structure and length checks for one record."""

    record_id: str
    record: Optional[CorpusRecord] = Field(default=None, description="None when dropped")
    flags: list[str] = Field(default_factory=list)

    @property
    def kept(self) -> bool:
        return self.record is not None

    def audit_entry(self) -> dict:
        return {"record_id": self.record_id, "record_kept": self.kept, "flags": self.flags}


# ============================================
# Filtering
# ============================================

class FilterReason(str, Enum):
    """Why a filter changed or removed a record."""

    SENTENCE_FILTER = "sentence-filter"
    PREC_THRESHOLD = "prec-threshold"
    EMPTY_AFTER_FILTER = "empty-after-filter"


class DroppedSentence(BaseModel):
    """A target sentence removed by the sentence filter."""

    index: int = Field(ge=0)
    offending_keys: list[str] = Field(description="Entities of the sentence not found in the source")


class FilterOutcome(BaseModel):
    """Audit entry of one record passing through a filter."""

    record_id: str
    kept_sentence_indices: list[int] = Field(default_factory=list)
    dropped_sentences: list[DroppedSentence] = Field(default_factory=list)
    record_kept: bool = True
    reason: Optional[FilterReason] = None
    flags: list[str] = Field(default_factory=list)
    unlocated_annotations: list[str] = Field(
        default_factory=list,
        description="Sentence filter only: annotated target entities absent from the target text",
    )
    prec_s: dict[str, Optional[float]] = Field(
        default_factory=dict, description="Pair filter only: target prec_s per counting variant"
    )

    @property
    def dropped_sentence_indices(self) -> list[int]:
        return [d.index for d in self.dropped_sentences]


# ============================================
# JAENS
# ============================================

class JaensTarget(BaseModel):
    """Entity chain, separator token and summary of a JAENS training target."""

    model_config = ConfigDict(frozen=True)

    entity_chain: tuple[str, ...] = ()
    separator: str = Field(min_length=1)
    summary: str

    def serialize(self) -> str:
        """``"e1, e2, ..., ek SEP summary"``; ``"SEP summary"`` for an empty chain."""
        head = ", ".join(self.entity_chain)
        prefix = f"{head} {self.separator}" if head else self.separator
        return f"{prefix} {self.summary}"


# ============================================
# Statistics
# ============================================

class Distribution(BaseModel):
    """Summary statistics of one per-record quantity."""

    mean: float
    median: float
    min: float
    max: float
    q1: float
    q3: float


class CorpusStats(BaseModel):
    """Corpus-level statistics."""

    record_count: int
    target_sentences: Distribution
    source_tokens_mean: float
    target_tokens_mean: float
    target_entities_u: Distribution
    target_entities_nu: Distribution
