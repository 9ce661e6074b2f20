"""Token normalization, tokenization and n-grams.

Every downstream module (extraction, matching, metrics, filtering) runs over
the token stream produced here, so the rules must stay deterministic.
"""
import re
from dataclasses import dataclass, field
from typing import Sequence

from src.entity_hallucination.textproc.sentences import split_sentences
from src.entity_hallucination.utils.safety import InvalidArgumentError

# Anything that is not a letter, digit or hyphen; underscore counts as punctuation
_NON_TOKEN_CHARS = re.compile(r"[^\w-]|_")
_HYPHEN_RUNS = re.compile(r"-{2,}")

NGram = tuple[str, ...]


def normalize_token(raw: str) -> str:
    """Normalize one whitespace-free piece of text for matching.

    Lowercases, removes punctuation and symbols, keeps digits and intra-word
    hyphens. May return an empty string.

    Examples:
        normalize_token("Cancer,")       # "cancer"
        normalize_token("non-melanoma")  # "non-melanoma"
        normalize_token("(2)")           # "2"
    """
    lowered = raw.lower()
    kept = _NON_TOKEN_CHARS.sub("", lowered)
    kept = _HYPHEN_RUNS.sub("-", kept)
    return kept.strip("-")


@dataclass(frozen=True)
class TokenizedText:
    """Normalized token stream of a document with sentence boundaries.

    ``sentence_bounds`` are half-open token ranges; sentences without any
    token are not represented.
    """

    tokens: tuple[str, ...]
    surfaces: tuple[str, ...]
    sentence_bounds: tuple[tuple[int, int], ...]
    raw_len: int
    _ngram_cache: dict[int, frozenset[NGram]] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def sentence_count(self) -> int:
        return len(self.sentence_bounds)

    def sentence_tokens(self, index: int) -> tuple[str, ...]:
        """Tokens of the sentence at ``index``."""
        start, end = self.sentence_bounds[index]
        return self.tokens[start:end]

    def ngram_set(self, n: int) -> frozenset[NGram]:
        """All contiguous n-grams of the whole token stream (cached)."""
        cached = self._ngram_cache.get(n)
        if cached is None:
            cached = frozenset(ngrams(self.tokens, n))
            self._ngram_cache[n] = cached
        return cached


def _normalize_pieces(text: str) -> tuple[list[str], list[str]]:
    tokens: list[str] = []
    surfaces: list[str] = []
    for piece in text.split():
        token = normalize_token(piece)
        if token:
            tokens.append(token)
            surfaces.append(piece)
    return tokens, surfaces


def tokenize(raw: str) -> TokenizedText:
    """Split text into normalized tokens and sentence ranges.

    Pieces are whitespace-separated and normalized with ``normalize_token``;
    pieces that normalize to nothing are dropped. Stop words stay in the
    stream. Sentence ranges follow ``split_sentences``.
    """
    tokens: list[str] = []
    surfaces: list[str] = []
    bounds: list[tuple[int, int]] = []

    for sentence in split_sentences(raw):
        sentence_tokens, sentence_surfaces = _normalize_pieces(sentence)
        if not sentence_tokens:
            continue
        start = len(tokens)
        tokens.extend(sentence_tokens)
        surfaces.extend(sentence_surfaces)
        bounds.append((start, len(tokens)))

    return TokenizedText(
        tokens=tuple(tokens),
        surfaces=tuple(surfaces),
        sentence_bounds=tuple(bounds),
        raw_len=len(raw),
    )


def tokens_of(raw: str) -> list[str]:
    """Normalized token stream only, without sentence bookkeeping."""
    return _normalize_pieces(raw)[0]


def ngrams(tokens: Sequence[str], n: int) -> list[NGram]:
    """Contiguous n-grams of ``tokens`` in order.

    Raises:
        InvalidArgumentError: if ``n`` is smaller than 1
    """
    if n < 1:
        raise InvalidArgumentError(f"n-gram size must be positive, got {n}")
    return [tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1)]
