"""Scoring of one corpus record: entity metrics in both variants plus ROUGE."""
from typing import Optional

from src.entity_hallucination.dataset.jaens import jaens_split
from src.entity_hallucination.dataset.schemas import CorpusRecord
from src.entity_hallucination.entities.extractors import EntityExtractor, record_annotations
from src.entity_hallucination.entities.schemas import CountMode
from src.entity_hallucination.matching.policy import MatchPolicy
from src.entity_hallucination.metrics.entity_metrics import entity_scores
from src.entity_hallucination.metrics.rouge import rouge_l, rouge_lsum, rouge_n
from src.entity_hallucination.metrics.schemas import RecordScores
from src.entity_hallucination.textproc.stopwords import StopwordSet
from src.entity_hallucination.textproc.tokenizer import TokenizedText, tokenize
from src.entity_hallucination.utils.safety import MissingFieldError

DEFAULT_HYPOTHESIS_FIELD = "hypothesis"


def _sentences(text: TokenizedText) -> list[tuple[str, ...]]:
    return [text.sentence_tokens(i) for i in range(text.sentence_count)]


def score_record(
    record: CorpusRecord,
    extractor: EntityExtractor,
    stopwords: StopwordSet,
    policy: Optional[MatchPolicy] = None,
    jaens_separator: Optional[str] = None,
    hypothesis_field: str = DEFAULT_HYPOTHESIS_FIELD,
) -> RecordScores:
    """All per-record metrics of a scored record.

    The generated summary is read from ``hypothesis_field``, so one corpus can
    carry the outputs of several systems. Its annotations come from
    ``entities_<field>``. With ``jaens_separator`` the hypothesis is split
    first and only its summary part is scored. An empty target leaves the
    target metrics and ROUGE undefined.

    Raises:
        MissingFieldError: if the record has no text in ``hypothesis_field``, or lacks annotations the extractor needs
    """
    policy = policy or MatchPolicy()
    hypothesis_raw = getattr(record, hypothesis_field, None)
    if not isinstance(hypothesis_raw, str):
        raise MissingFieldError(hypothesis_field, record.id)

    if jaens_separator is not None:
        hypothesis_raw = jaens_split(hypothesis_raw, jaens_separator).summary

    source = tokenize(record.source)
    hypothesis = tokenize(hypothesis_raw)
    h = extractor.extract(hypothesis_raw, record_annotations(extractor, record, f"entities_{hypothesis_field}"))

    has_target = bool(record.target.strip())
    target = tokenize(record.target) if has_target else None
    t = (
        extractor.extract(record.target, record_annotations(extractor, record, "entities_target"))
        if has_target else None
    )

    values: dict[str, Optional[float]] = {}
    counts = {}
    for mode in (CountMode.U, CountMode.NU):
        mode_values, counts[mode] = entity_scores(h, hypothesis, source, t, target, mode, stopwords, policy)
        values.update(mode_values)

    if target is not None:
        values["rouge1_f"] = rouge_n(hypothesis.tokens, target.tokens, 1)
        values["rouge2_f"] = rouge_n(hypothesis.tokens, target.tokens, 2)
        values["rougeL_f"] = rouge_l(hypothesis.tokens, target.tokens)
        values["rougeLsum_f"] = rouge_lsum(_sentences(hypothesis), _sentences(target))

    return RecordScores(
        record_id=record.id,
        counts_u=counts[CountMode.U],
        counts_nu=counts[CountMode.NU],
        **values,
    )
