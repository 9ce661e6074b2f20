"""Match policy and matching enums."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from src.entity_hallucination.entities.schemas import CountMode

__all__ = ["CountMode", "Direction", "MatchPolicy", "TargetMatchMode"]


class TargetMatchMode(str, Enum):
    """How hypothesis entities are compared with the reference summary."""

    EXACT_KEY = "exact-key"
    """Canonical key membership in the other side's key set."""

    PARTIAL_TEXT = "partial-text"
    """Partial n-gram matching against the other side's text."""


class Direction(str, Enum):
    """What an inventory is intersected with."""

    VS_TEXT = "vs-text"
    VS_KEYS = "vs-keys"


class MatchPolicy(BaseModel):
    """Matching switches; frozen for the duration of a run and echoed in reports."""

    model_config = ConfigDict(frozen=True)

    unigram_stopword_block: bool = Field(
        default=True, description="Single-token components may not be stop words"
    )
    target_match_mode: TargetMatchMode = Field(
        default=TargetMatchMode.EXACT_KEY, description="Hypothesis-vs-reference comparison"
    )
    numeric_unigram_block: bool = Field(
        default=False, description="Single-token components may not be purely numeric"
    )
