"""Text cleaning and record structure/length checks."""
import re
from typing import Optional

from src.entity_hallucination.dataset.schemas import (
    CleaningPolicy,
    CorpusRecord,
    LengthAction,
    LengthOutcome,
)
from src.entity_hallucination.utils.logger import logger
from src.entity_hallucination.utils.safety import InvalidArgumentError

_PUNCTUATION_CHARS = r""".,;:!?'"()\[\]{}\-/\\…‘’“”–—"""

# Bracketed integer markers: [12], [1, 2], [3-5], (3)
_CITATION = re.compile(r"[\[(]\s*\d+(?:\s*[,–-]\s*\d+)*\s*[\])]")
_SYMBOL_RUN = re.compile(rf"(?:(?![{_PUNCTUATION_CHARS}])[^\w\s]|_)+")
_PUNCTUATION = re.compile(rf"[{_PUNCTUATION_CHARS}]+")
_NUMERAL = re.compile(r"(?<!\w)\d+(?:[.,]\d+)*(?!\w)")


def _remove_citations(text: str) -> str:
    # nested markers like "[(1)]" only disappear after repeated passes
    while True:
        stripped = _CITATION.sub(" ", text)
        if stripped == text:
            return text
        text = stripped


def _clean_once(text: str, policy: CleaningPolicy) -> str:
    if policy.lowercase:
        text = text.lower()
    if policy.remove_citations:
        text = _remove_citations(text)
    if policy.remove_symbols:
        text = _SYMBOL_RUN.sub(" ", text)
    if policy.remove_punctuation:
        text = _PUNCTUATION.sub(" ", text)
    if policy.remove_numerals:
        text = _NUMERAL.sub(" ", text)
    return " ".join(text.split())


def clean_text(raw: str, policy: Optional[CleaningPolicy] = None) -> str:
    """Normalize article or summary text for training.

    Steps, each switchable through ``policy``: lowercase, citation markers,
    symbol runs, punctuation, numeral tokens, whitespace collapse. Removed
    text is replaced by a space. The steps repeat until nothing changes, so
    the result is a fixed point and cleaning twice equals cleaning once.

    Examples:
        clean_text("Skin Cancer [12] is RARE.")  # "skin cancer is rare"
        clean_text("p = 0.05")                   # "p"
    """
    policy = policy or CleaningPolicy()
    text = raw
    while True:
        cleaned = _clean_once(text, policy)
        if cleaned == text:
            return cleaned
        text = cleaned


def clean_record(record: CorpusRecord, policy: Optional[CleaningPolicy] = None) -> CorpusRecord:
    """Record with cleaned source, target and (if present) hypothesis."""
    update = {
        "source": clean_text(record.source, policy),
        "target": clean_text(record.target, policy),
    }
    if record.hypothesis is not None:
        update["hypothesis"] = clean_text(record.hypothesis, policy)
    return record.model_copy(update=update)


def enforce_length(
    record: CorpusRecord,
    max_source_tokens: int = 8192,
    max_target_tokens: int = 512,
    min_target_tokens: int = 100,
    action: LengthAction = LengthAction.TRUNCATE,
) -> LengthOutcome:
    """Apply presence checks and whitespace-token budgets to one record.

    A record with an empty source or target is dropped (flagged only with
    ``action=flag``). Over-long texts are truncated, dropped or flagged; a
    target below the minimum is flagged, or dropped with ``action=drop``.

    Raises:
        InvalidArgumentError: if a budget is not positive or min exceeds max
    """
    if min(max_source_tokens, max_target_tokens, min_target_tokens) <= 0:
        raise InvalidArgumentError("length budgets must be positive")
    if min_target_tokens > max_target_tokens:
        raise InvalidArgumentError(
            f"min target length {min_target_tokens} exceeds max target length {max_target_tokens}"
        )

    flags: list[str] = []
    if not record.source.strip():
        flags.append("missing-source")
    if not record.target.strip():
        flags.append("missing-target")
    if flags and action != LengthAction.FLAG:
        return LengthOutcome(record_id=record.id, record=None, flags=flags)

    source_tokens = record.source.split()
    target_tokens = record.target.split()
    update: dict[str, str] = {}
    drop = False

    if len(source_tokens) > max_source_tokens:
        flags.append("long-source")
        if action == LengthAction.TRUNCATE:
            update["source"] = " ".join(source_tokens[:max_source_tokens])
        drop = drop or action == LengthAction.DROP

    if len(target_tokens) > max_target_tokens:
        flags.append("long-target")
        if action == LengthAction.TRUNCATE:
            update["target"] = " ".join(target_tokens[:max_target_tokens])
        drop = drop or action == LengthAction.DROP

    if target_tokens and len(target_tokens) < min_target_tokens:
        flags.append("short-target")
        drop = drop or action == LengthAction.DROP

    if drop:
        logger.debug(f"Record {record.id} dropped by length check: {flags}")
        return LengthOutcome(record_id=record.id, record=None, flags=flags)

    kept = record.model_copy(update=update) if update else record
    return LengthOutcome(record_id=record.id, record=kept, flags=flags)
