"""JAENS targets: summary-worthy entities, a separator token, then the summary."""
from typing import NamedTuple

from src.entity_hallucination.dataset.schemas import CorpusRecord, JaensTarget
from src.entity_hallucination.entities.extractors import EntityExtractor, record_annotations
from src.entity_hallucination.utils.safety import InvalidArgumentError, SeparatorCollisionError


class JaensSplit(NamedTuple):
    """Parsed generated text."""

    entity_chain: list[str]
    summary: str
    separator_found: bool


def _check_separator(separator: str) -> None:
    if not separator or any(ch.isspace() for ch in separator) or "," in separator:
        raise InvalidArgumentError(
            f"separator must be a non-empty token without whitespace or commas, got {separator!r}"
        )


def jaens_augment(record: CorpusRecord, extractor: EntityExtractor, separator: str) -> JaensTarget:
    """Build the JAENS target of a training record.

    The chain holds the distinct canonical keys of the target's entities in
    first-occurrence order.

    Raises:
        InvalidArgumentError: if the separator is not a single token
        SeparatorCollisionError: if the separator occurs in an entity key or the summary
    """
    _check_separator(separator)
    annotations = record_annotations(extractor, record, "entities_target")
    chain = tuple(extractor.extract(record.target, annotations).ordered_keys())
    if separator in record.target or any(separator in key for key in chain):
        raise SeparatorCollisionError(separator, [record.id])
    return JaensTarget(entity_chain=chain, separator=separator, summary=record.target)


def augment_record(record: CorpusRecord, extractor: EntityExtractor, separator: str) -> CorpusRecord:
    """Record whose target is the serialized JAENS target; the old one moves to ``original_target``."""
    target = jaens_augment(record, extractor, separator)
    return record.model_copy(update={"target": target.serialize(), "original_target": record.target})


def jaens_split(generated: str, separator: str) -> JaensSplit:
    """Split generated text into entity chain and summary at the first separator.

    Chain entries are comma-separated and trimmed. Exactly one space after the
    separator is dropped. Without a separator the chain is empty, the whole
    text is the summary and ``separator_found`` is False.
    """
    _check_separator(separator)
    position = generated.find(separator)
    if position < 0:
        return JaensSplit(entity_chain=[], summary=generated, separator_found=False)

    head = generated[:position]
    summary = generated[position + len(separator):]
    if summary.startswith(" "):
        summary = summary[1:]
    chain = [entry.strip() for entry in head.split(",") if entry.strip()]
    return JaensSplit(entity_chain=chain, summary=summary, separator_found=True)
