"""Entity extraction: stop-word chunking or ingestion of external annotations.

Metric and filter code only ever sees ``EntityInventory``; which extractor
produced it is a per-run choice.
"""
from typing import Any, Optional, Protocol, Sequence

from src.entity_hallucination.entities.schemas import (
    CountMode,
    EntityInventory,
    EntityMention,
    MentionSpan,
)
from src.entity_hallucination.textproc.stopwords import StopwordSet
from src.entity_hallucination.textproc.tokenizer import TokenizedText, tokenize, tokens_of
from src.entity_hallucination.utils.logger import logger
from src.entity_hallucination.utils.safety import MissingFieldError


def extract_heuristic(text: TokenizedText, stopwords: StopwordSet) -> EntityInventory:
    """Candidate entities as maximal runs of non-stop-word tokens.

    Runs never cross sentence boundaries. Mentions come out in document order.

    Example:
        [the, skin, cancer, is, rare] with {the, is} -> "skin cancer", "rare"
    """
    mentions: list[EntityMention] = []

    for sentence_index, (start, end) in enumerate(text.sentence_bounds):
        run_start: Optional[int] = None
        for position in range(start, end + 1):
            is_boundary = position == end or text.tokens[position] in stopwords
            if not is_boundary:
                if run_start is None:
                    run_start = position
                continue
            if run_start is not None:
                mentions.append(
                    EntityMention(
                        surface=" ".join(text.surfaces[run_start:position]),
                        tokens=text.tokens[run_start:position],
                        span=MentionSpan(
                            sentence_index=sentence_index,
                            token_start=run_start,
                            token_end=position,
                        ),
                    )
                )
                run_start = None

    return EntityInventory(mentions=tuple(mentions))


def ingest_annotations(entity_strings: Sequence[str]) -> EntityInventory:
    """Inventory from externally computed entity strings.

    Strings are normalized and tokenized; those that normalize to nothing are
    dropped. Order and duplicates are preserved.
    """
    mentions = []
    for raw in entity_strings:
        tokens = tokens_of(raw)
        if not tokens:
            logger.debug(f"Dropping annotation that normalizes to empty: {raw!r}")
            continue
        mentions.append(EntityMention(surface=raw, tokens=tuple(tokens)))
    return EntityInventory(mentions=tuple(mentions))


def inventory_count(inventory: EntityInventory, mode: CountMode) -> int:
    """|keys| for U, |mentions| for NU."""
    return inventory.count(mode)


def _contains_run(haystack: Sequence[str], needle: Sequence[str]) -> bool:
    width = len(needle)
    return any(
        tuple(haystack[i:i + width]) == tuple(needle)
        for i in range(len(haystack) - width + 1)
    )


def locate_annotations(
    annotations: Sequence[str], sentences: Sequence[str]
) -> tuple[list[str], list[str]]:
    """Split annotation strings into those found in some sentence and the rest.

    An annotation is found when its normalized tokens occur as a contiguous
    run of one sentence. Order and duplicates are preserved on both sides;
    annotations that normalize to nothing count as not found.
    """
    sentence_tokens = [tokens_of(sentence) for sentence in sentences]
    found: list[str] = []
    missing: list[str] = []
    for raw in annotations:
        tokens = tokens_of(raw)
        if tokens and any(_contains_run(candidate, tokens) for candidate in sentence_tokens):
            found.append(raw)
        else:
            missing.append(raw)
    return found, missing


# ============================================
# Extractor Seam
# ============================================

class EntityExtractor(Protocol):
    """Anything that turns a text (plus optional annotations) into inventories."""

    uses_annotations: bool

    def extract(self, text: str, annotations: Optional[Sequence[str]] = None) -> EntityInventory:
        """Inventory of a whole document."""
        ...

    def extract_sentences(
        self, sentences: Sequence[str], annotations: Optional[Sequence[str]] = None
    ) -> list[EntityInventory]:
        """One inventory per sentence, in order."""
        ...


class HeuristicExtractor:
    """Stop-word chunking extractor; annotations are ignored."""

    uses_annotations = False

    def __init__(self, stopwords: StopwordSet):
        self.stopwords = stopwords

    def extract(self, text: str, annotations: Optional[Sequence[str]] = None) -> EntityInventory:
        return extract_heuristic(tokenize(text), self.stopwords)

    def extract_sentences(
        self, sentences: Sequence[str], annotations: Optional[Sequence[str]] = None
    ) -> list[EntityInventory]:
        return [self.extract(sentence) for sentence in sentences]


class AnnotationExtractor:
    """Extractor backed by per-record annotation lists."""

    uses_annotations = True

    def __init__(self, field_name: str = "entities"):
        self.field_name = field_name

    def _require(self, annotations: Optional[Sequence[str]]) -> Sequence[str]:
        if annotations is None:
            raise MissingFieldError(self.field_name)
        return annotations

    def extract(self, text: str, annotations: Optional[Sequence[str]] = None) -> EntityInventory:
        return ingest_annotations(self._require(annotations))

    def extract_sentences(
        self, sentences: Sequence[str], annotations: Optional[Sequence[str]] = None
    ) -> list[EntityInventory]:
        """Assign each annotation to every sentence containing its tokens."""
        inventory = ingest_annotations(self._require(annotations))
        per_sentence: list[EntityInventory] = []
        located: set[str] = set()

        for sentence in sentences:
            sentence_tokens = tokens_of(sentence)
            found = tuple(
                m for m in inventory.mentions if _contains_run(sentence_tokens, m.tokens)
            )
            located.update(m.key for m in found)
            per_sentence.append(EntityInventory(mentions=found))

        unlocated = inventory.keys - located
        if unlocated:
            logger.debug(f"{len(unlocated)} annotation(s) not located in any sentence")
        return per_sentence


def build_extractor(kind: str, stopwords: StopwordSet) -> EntityExtractor:
    """Extractor for a CLI choice ('heuristic' or 'annotations')."""
    if kind == "annotations":
        return AnnotationExtractor()
    return HeuristicExtractor(stopwords)


def record_annotations(extractor: EntityExtractor, record: Any, field_name: str) -> Optional[list[str]]:
    """Annotation list ``field_name`` of a record, as the extractor needs it.

    Raises:
        MissingFieldError: if the extractor reads annotations and the record has none
    """
    annotations = getattr(record, field_name, None)
    if extractor.uses_annotations and annotations is None:
        raise MissingFieldError(field_name, getattr(record, "id", ""))
    return annotations
