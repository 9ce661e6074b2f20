"""Pydantic schemas for entity mentions and per-document inventories."""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator


class CountMode(str, Enum):
    """How entity occurrences are counted."""

    U = "u"
    """Unique canonical keys: repeated mentions count once."""

    NU = "nu"
    """Every mention counts."""


class MentionSpan(BaseModel):
    """Location of an extracted mention in its document."""

    model_config = ConfigDict(frozen=True)

    sentence_index: int = Field(ge=0, description="Index into the document's sentence ranges")
    token_start: int = Field(ge=0, description="First token (document-wide index)")
    token_end: int = Field(ge=1, description="One past the last token")


class EntityMention(BaseModel):
    """One entity occurrence.

    ``span`` is None for ingested annotations, which carry no offsets.
    """

    model_config = ConfigDict(frozen=True)

    surface: str = Field(description="Original text of the mention")
    tokens: tuple[str, ...] = Field(min_length=1, description="Normalized tokens")
    span: Optional[MentionSpan] = None

    @field_validator("tokens")
    @classmethod
    def _tokens_non_empty(cls, value: tuple[str, ...]) -> tuple[str, ...]:
        if any(not token for token in value):
            raise ValueError("mention tokens must be non-empty strings")
        return value

    @computed_field  # type: ignore[prop-decorator]
    @property
    def key(self) -> str:
        """Canonical key: tokens joined by single spaces."""
        return " ".join(self.tokens)


class EntityInventory(BaseModel):
    """Entities of one document in list (NU) and set (U) views."""

    model_config = ConfigDict(frozen=True)

    mentions: tuple[EntityMention, ...] = ()

    @property
    def keys(self) -> frozenset[str]:
        """Distinct canonical keys."""
        return frozenset(m.key for m in self.mentions)

    def ordered_keys(self) -> list[str]:
        """Distinct keys in first-occurrence order."""
        return list(dict.fromkeys(m.key for m in self.mentions))

    def count(self, mode: CountMode) -> int:
        """Number of entities under ``mode``."""
        return len(self.keys) if mode == CountMode.U else len(self.mentions)

    def is_empty(self) -> bool:
        return not self.mentions

    def to_summary(self) -> dict:
        """Serializable view used by the ``extract`` command."""
        return {
            "mentions": [m.key for m in self.mentions],
            "keys": self.ordered_keys(),
            "count_nu": self.count(CountMode.NU),
            "count_u": self.count(CountMode.U),
        }
