"""prec_s, prec_t, recall_t and F1_t in unique (U) and non-unique (NU) variants.

    prec_s   = N(h∩s) / N(h)
    prec_t   = N(h∩t) / N(h)     hypothesis mentions checked against the target
    recall_t = N(t∩h) / N(t)     target mentions checked against the hypothesis
    F1_t     = 2 * prec_t * recall_t / (prec_t + recall_t)

A zero denominator gives None (UNDEFINED) rather than 0 or 1.
"""
from typing import Optional

from src.entity_hallucination.entities.schemas import CountMode, EntityInventory
from src.entity_hallucination.matching.matcher import intersection_count
from src.entity_hallucination.matching.policy import Direction, MatchPolicy
from src.entity_hallucination.metrics.schemas import EntityCounts
from src.entity_hallucination.textproc.stopwords import StopwordSet
from src.entity_hallucination.textproc.tokenizer import TokenizedText
from src.entity_hallucination.utils.safety import InvalidArgumentError


def _ratio(numerator: int, denominator: int) -> Optional[float]:
    return numerator / denominator if denominator > 0 else None


def _source_hits(
    h: EntityInventory, source: TokenizedText, mode: CountMode, stopwords: StopwordSet, policy: MatchPolicy
) -> int:
    """N(h∩s)."""
    return intersection_count(h, mode, Direction.VS_TEXT, stopwords, policy, y_text=source)


def _key_hits(
    x: EntityInventory,
    y: EntityInventory,
    y_text: Optional[TokenizedText],
    mode: CountMode,
    stopwords: StopwordSet,
    policy: MatchPolicy,
) -> int:
    """Mentions of ``x`` matched against the other side's keys (or its text for partial matching)."""
    return intersection_count(x, mode, Direction.VS_KEYS, stopwords, policy, y_text=y_text, y_keys=y.keys)


def precision_source(
    h: EntityInventory,
    source: TokenizedText,
    mode: CountMode,
    stopwords: StopwordSet,
    policy: MatchPolicy,
) -> Optional[float]:
    """Share of hypothesis entities found in the source."""
    return _ratio(_source_hits(h, source, mode, stopwords, policy), h.count(mode))


def precision_target(
    h: EntityInventory,
    t: EntityInventory,
    t_text: Optional[TokenizedText],
    mode: CountMode,
    stopwords: StopwordSet,
    policy: MatchPolicy,
) -> Optional[float]:
    """Share of hypothesis entities found in the target."""
    return _ratio(_key_hits(h, t, t_text, mode, stopwords, policy), h.count(mode))


def recall_target(
    h: EntityInventory,
    h_text: Optional[TokenizedText],
    t: EntityInventory,
    mode: CountMode,
    stopwords: StopwordSet,
    policy: MatchPolicy,
) -> Optional[float]:
    """Share of target entities found in the hypothesis."""
    return _ratio(_key_hits(t, h, h_text, mode, stopwords, policy), t.count(mode))


def f1_target(prec: float, rec: float) -> float:
    """Harmonic mean of precision and recall; 0 when both are 0.

    Raises:
        InvalidArgumentError: if either input is undefined or outside [0, 1]
    """
    for name, value in (("precision", prec), ("recall", rec)):
        if value is None or not 0.0 <= value <= 1.0:
            raise InvalidArgumentError(f"{name} must be a ratio in [0, 1], got {value!r}")
    if prec + rec == 0:
        return 0.0
    return 2 * prec * rec / (prec + rec)


def entity_scores(
    h: EntityInventory,
    h_text: TokenizedText,
    source: TokenizedText,
    t: Optional[EntityInventory],
    t_text: Optional[TokenizedText],
    mode: CountMode,
    stopwords: StopwordSet,
    policy: MatchPolicy,
) -> tuple[dict[str, Optional[float]], EntityCounts]:
    """All four metrics and their counts for one variant.

    Target metrics stay None when no target is available.
    """
    suffix = mode.value
    n_h = h.count(mode)
    n_h_s = _source_hits(h, source, mode, stopwords, policy)
    values: dict[str, Optional[float]] = {
        f"prec_s_{suffix}": _ratio(n_h_s, n_h),
        f"prec_t_{suffix}": None,
        f"recall_t_{suffix}": None,
        f"f1_t_{suffix}": None,
    }
    counts = EntityCounts(n_h=n_h, n_h_s=n_h_s)
    if t is None:
        return values, counts

    n_t = t.count(mode)
    n_h_t = _key_hits(h, t, t_text, mode, stopwords, policy)
    n_t_h = _key_hits(t, h, h_text, mode, stopwords, policy)
    prec = _ratio(n_h_t, n_h)
    rec = _ratio(n_t_h, n_t)
    values[f"prec_t_{suffix}"] = prec
    values[f"recall_t_{suffix}"] = rec
    if prec is not None and rec is not None:
        values[f"f1_t_{suffix}"] = f1_target(prec, rec)
    counts = EntityCounts(n_h=n_h, n_t=n_t, n_h_s=n_h_s, n_h_t=n_h_t, n_t_h=n_t_h)
    return values, counts
