"""Entity-to-text and entity-to-entity matching.

A component of an entity is any contiguous run of its tokens. An entity
matches a document when some component occurs as a contiguous run of the
document's tokens. Single-token components are subject to the stop-word and
numeric blocks of the policy.
"""
from typing import AbstractSet, Callable, Optional

from src.entity_hallucination.entities.schemas import CountMode, EntityInventory, EntityMention
from src.entity_hallucination.matching.policy import Direction, MatchPolicy, TargetMatchMode
from src.entity_hallucination.textproc.stopwords import StopwordSet
from src.entity_hallucination.textproc.tokenizer import TokenizedText
from src.entity_hallucination.utils.safety import InvalidArgumentError


def _unigram_blocked(token: str, stopwords: StopwordSet, policy: MatchPolicy) -> bool:
    if policy.unigram_stopword_block and token in stopwords:
        return True
    return policy.numeric_unigram_block and token.isdigit()


def entity_matches_text(
    entity: EntityMention,
    doc: TokenizedText,
    stopwords: StopwordSet,
    policy: MatchPolicy,
) -> bool:
    """True iff some component of ``entity`` occurs in ``doc``.

    Components are tried longest first; the search stops at the first hit.

    Raises:
        InvalidArgumentError: if the entity has no tokens
    """
    tokens = entity.tokens
    if not tokens:
        raise InvalidArgumentError("cannot match an entity without tokens")

    for n in range(min(len(tokens), len(doc)), 0, -1):
        present = doc.ngram_set(n)
        for start in range(len(tokens) - n + 1):
            component = tokens[start:start + n]
            if n == 1 and _unigram_blocked(component[0], stopwords, policy):
                continue
            if component in present:
                return True
    return False


def intersection_count(
    x: EntityInventory,
    mode: CountMode,
    direction: Direction,
    stopwords: StopwordSet,
    policy: MatchPolicy,
    y_text: Optional[TokenizedText] = None,
    y_keys: Optional[AbstractSet[str]] = None,
) -> int:
    """N(x ∩ y) for one inventory against a text or another inventory's keys.

    NU counts every matching mention of ``x``; U counts distinct keys of ``x``
    with a matching mention. Against keys, membership is exact unless the
    policy asks for partial matching against ``y_text``.

    Raises:
        InvalidArgumentError: if the side required by ``direction`` is missing
    """
    match = _matcher(direction, stopwords, policy, y_text, y_keys)
    if x.is_empty():
        return 0

    verdicts: dict[str, bool] = {}
    count = 0
    for mention in x.mentions:
        seen = mention.key in verdicts
        if not seen:
            verdicts[mention.key] = match(mention)
        if not verdicts[mention.key]:
            continue
        if mode == CountMode.NU or not seen:
            count += 1
    return count


def _matcher(
    direction: Direction,
    stopwords: StopwordSet,
    policy: MatchPolicy,
    y_text: Optional[TokenizedText],
    y_keys: Optional[AbstractSet[str]],
) -> Callable[[EntityMention], bool]:
    partial = direction == Direction.VS_TEXT or policy.target_match_mode == TargetMatchMode.PARTIAL_TEXT
    if partial:
        if y_text is None:
            raise InvalidArgumentError(f"{direction.value} matching needs the other side's text")
        doc = y_text
        return lambda mention: entity_matches_text(mention, doc, stopwords, policy)

    if y_keys is None:
        raise InvalidArgumentError("key matching needs the other side's entity keys")
    keys = y_keys
    return lambda mention: mention.key in keys
