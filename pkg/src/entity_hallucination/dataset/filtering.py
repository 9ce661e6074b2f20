"""Entity-based corpus filtering.

Two strategies remove entity hallucinations from training data:

* sentence filtering drops every reference-summary sentence that mentions an
  entity not found in the article, and the whole pair once nothing is left;
* pair filtering drops a pair whose reference summary scores prec_s below a
  threshold against its article.
"""
from typing import Optional, Sequence

from src.entity_hallucination.dataset.schemas import (
    CorpusRecord,
    DroppedSentence,
    FilterOutcome,
    FilterReason,
)
from src.entity_hallucination.entities.extractors import (
    EntityExtractor,
    locate_annotations,
    record_annotations,
)
from src.entity_hallucination.entities.schemas import CountMode
from src.entity_hallucination.matching.matcher import entity_matches_text
from src.entity_hallucination.matching.policy import MatchPolicy
from src.entity_hallucination.metrics.entity_metrics import precision_source
from src.entity_hallucination.textproc.sentences import split_sentences
from src.entity_hallucination.textproc.stopwords import StopwordSet
from src.entity_hallucination.textproc.tokenizer import tokenize
from src.entity_hallucination.utils.logger import logger
from src.entity_hallucination.utils.safety import InvalidArgumentError, MissingFieldError

UNDEFINED_PREC_FLAG = "undefined-prec-s"
UNLOCATED_ANNOTATION_FLAG = "unlocated-annotation"


def _require_target(record: CorpusRecord) -> None:
    if not record.target.strip():
        raise MissingFieldError("target", record.id)


def filter_sentences(
    record: CorpusRecord,
    extractor: EntityExtractor,
    stopwords: StopwordSet,
    policy: Optional[MatchPolicy] = None,
) -> tuple[CorpusRecord, FilterOutcome]:
    """Keep only target sentences whose entities all occur in the source.

    The new target is the kept sentences joined by single spaces; an
    untouched record is returned as is. When no sentence survives the record
    is marked as not kept. Annotated target entities are pruned to those
    located in kept sentences, so annotations that appear nowhere in the
    target are removed even when every sentence is kept; they are listed in
    the outcome and flagged.

    Raises:
        MissingFieldError: if the target is empty, or annotations are required and absent
    """
    policy = policy or MatchPolicy()
    _require_target(record)

    source = tokenize(record.source)
    sentences = split_sentences(record.target)
    annotations = record_annotations(extractor, record, "entities_target")
    inventories = extractor.extract_sentences(sentences, annotations)

    verdicts: dict[str, bool] = {}
    kept: list[int] = []
    dropped: list[DroppedSentence] = []

    for index, inventory in enumerate(inventories):
        offending: list[str] = []
        for mention in inventory.mentions:
            if mention.key not in verdicts:
                verdicts[mention.key] = entity_matches_text(mention, source, stopwords, policy)
            if not verdicts[mention.key] and mention.key not in offending:
                offending.append(mention.key)
        if offending:
            dropped.append(DroppedSentence(index=index, offending_keys=offending))
        else:
            kept.append(index)

    update: dict = {}
    if dropped:
        update["target"] = " ".join(sentences[i] for i in kept)

    unlocated: list[str] = []
    if record.entities_target is not None:
        retained, removed = locate_annotations(record.entities_target, [sentences[i] for i in kept])
        if removed:
            update["entities_target"] = retained
        _, unlocated = locate_annotations(record.entities_target, sentences)
        if unlocated:
            logger.debug(f"Record {record.id}: pruned {len(unlocated)} annotation(s) absent from the target")

    if not update:
        return record, FilterOutcome(record_id=record.id, kept_sentence_indices=kept)

    record_kept = bool(kept)
    reason = None
    if dropped:
        reason = FilterReason.SENTENCE_FILTER if record_kept else FilterReason.EMPTY_AFTER_FILTER
    outcome = FilterOutcome(
        record_id=record.id,
        kept_sentence_indices=kept,
        dropped_sentences=dropped,
        record_kept=record_kept,
        reason=reason,
        flags=[UNLOCATED_ANNOTATION_FLAG] if unlocated else [],
        unlocated_annotations=unlocated,
    )
    logger.debug(
        f"Record {record.id}: kept {len(kept)}/{len(sentences)} target sentences"
    )
    return record.model_copy(update=update), outcome


def filter_pairs(
    record: CorpusRecord,
    extractor: EntityExtractor,
    stopwords: StopwordSet,
    policy: Optional[MatchPolicy] = None,
    threshold: float = 1.0,
    modes: Sequence[CountMode] = (CountMode.NU,),
) -> FilterOutcome:
    """Keep the pair iff target prec_s against the source reaches ``threshold``.

    With several counting variants every variant must pass. A target without
    entities has UNDEFINED prec_s: the pair is kept and flagged.

    Raises:
        InvalidArgumentError: if ``threshold`` is outside [0, 1] or no variant is given
        MissingFieldError: if the target is empty, or annotations are required and absent
    """
    if not 0.0 <= threshold <= 1.0:
        raise InvalidArgumentError(f"threshold must be in [0, 1], got {threshold}")
    if not modes:
        raise InvalidArgumentError("at least one counting variant is required")
    policy = policy or MatchPolicy()
    _require_target(record)

    target_entities = extractor.extract(
        record.target, record_annotations(extractor, record, "entities_target")
    )
    source = tokenize(record.source)
    scores = {
        mode.value: precision_source(target_entities, source, mode, stopwords, policy)
        for mode in modes
    }

    defined = [value for value in scores.values() if value is not None]
    flags = [UNDEFINED_PREC_FLAG] if len(defined) < len(scores) else []
    record_kept = all(value >= threshold for value in defined)

    return FilterOutcome(
        record_id=record.id,
        kept_sentence_indices=list(range(len(split_sentences(record.target)))),
        record_kept=record_kept,
        reason=None if record_kept else FilterReason.PREC_THRESHOLD,
        flags=flags,
        prec_s=scores,
    )
