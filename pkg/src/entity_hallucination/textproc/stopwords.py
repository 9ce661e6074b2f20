"""Stop-word sets used by extraction and matching.

The built-in list is the common 179-word English list (as shipped with NLTK),
stored in normalized form. Apostrophes disappear during normalization, so
"it's" and "its" collapse and 178 distinct entries remain. The list is
enumerated in docs/STOPWORDS.md.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from src.entity_hallucination.textproc.tokenizer import normalize_token
from src.entity_hallucination.utils.logger import logger

STOPWORDS_VERSION = "1"

_BUILTIN_ENGLISH = """
i me my myself we our ours ourselves you you're you've you'll you'd your yours
yourself yourselves he him his himself she she's her hers herself it it's its
itself they them their theirs themselves what which who whom this that that'll
these those am is are was were be been being have has had having do does did
doing a an the and but if or because as until while of at by for with about
against between into through during before after above below to from up down
in out on off over under again further then once here there when where why how
all any both each few more most other some such no nor not only own same so
than too very s t can will just don don't should should've now d ll m o re ve y
ain aren aren't couldn couldn't didn didn't doesn doesn't hadn hadn't hasn
hasn't haven haven't isn isn't ma mightn mightn't mustn mustn't needn needn't
shan shan't shouldn shouldn't wasn wasn't weren weren't won won't wouldn
wouldn't
"""


@dataclass(frozen=True)
class StopwordSet:
    """Immutable set of normalized stop words."""

    words: frozenset[str]

    def __contains__(self, token: object) -> bool:
        return token in self.words

    def __len__(self) -> int:
        return len(self.words)

    @classmethod
    def from_words(cls, words: Iterable[str]) -> "StopwordSet":
        """Build a set from raw words, normalizing each and dropping empties."""
        normalized = (normalize_token(w) for w in words)
        return cls(frozenset(w for w in normalized if w))

    @classmethod
    def default(cls) -> "StopwordSet":
        """The built-in English list."""
        return _DEFAULT

    @classmethod
    def from_file(cls, path: Path) -> "StopwordSet":
        """Load an override list: one token per line, '#' starts a comment."""
        words = []
        with open(path, encoding="utf-8") as f:
            for line in f:
                content = line.split("#", 1)[0].strip()
                if content:
                    words.append(content)
        stopwords = cls.from_words(words)
        logger.info(f"Loaded {len(stopwords)} stop words from {path}")
        return stopwords


_DEFAULT = StopwordSet.from_words(_BUILTIN_ENGLISH.split())


def load_stopwords(path: Optional[Path] = None) -> StopwordSet:
    """Stop words from ``path`` when given, else the built-in list."""
    if path is None:
        return StopwordSet.default()
    return StopwordSet.from_file(path)
