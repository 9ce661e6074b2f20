"""ROUGE-1/2/L/LSum F1 over already-normalized token streams.

Scoring is delegated to ``rouge_score``; the toolkit's own tokenization is
kept by passing pre-tokenized text through a whitespace tokenizer. No
stemming, single reference.
"""
from typing import Sequence

from rouge_score import rouge_scorer, scoring, tokenizers

from src.entity_hallucination.utils.safety import InvalidArgumentError


class _PreTokenized(tokenizers.Tokenizer):
    """Tokens are already normalized and whitespace-free."""

    def tokenize(self, text: str) -> list[str]:
        return text.split()


_TOKENIZER = _PreTokenized()
_SCORERS: dict[str, rouge_scorer.RougeScorer] = {
    rouge_type: rouge_scorer.RougeScorer([rouge_type], use_stemmer=False, tokenizer=_TOKENIZER)
    for rouge_type in ("rouge1", "rouge2", "rougeL", "rougeLsum")
}


def _score(rouge_type: str, hypothesis: str, reference: str) -> scoring.Score:
    # rouge_score takes (target, prediction)
    return _SCORERS[rouge_type].score(reference, hypothesis)[rouge_type]


def rouge_n_score(h_tokens: Sequence[str], r_tokens: Sequence[str], n: int) -> scoring.Score:
    """Precision, recall and F1 of clipped n-gram overlap (n = 1 or 2)."""
    if n not in (1, 2):
        raise InvalidArgumentError(f"ROUGE-N supports n = 1 or 2, got {n}")
    return _score(f"rouge{n}", " ".join(h_tokens), " ".join(r_tokens))


def rouge_n(h_tokens: Sequence[str], r_tokens: Sequence[str], n: int) -> float:
    """ROUGE-N F1; 0 when either side has no n-grams."""
    return rouge_n_score(h_tokens, r_tokens, n).fmeasure


def rouge_l(h_tokens: Sequence[str], r_tokens: Sequence[str]) -> float:
    """ROUGE-L F1 from the longest common subsequence of the token streams."""
    return _score("rougeL", " ".join(h_tokens), " ".join(r_tokens)).fmeasure


def rouge_lsum(
    h_sentences: Sequence[Sequence[str]], r_sentences: Sequence[Sequence[str]]
) -> float:
    """Summary-level ROUGE-L F1 (union LCS over sentence pairs)."""
    hypothesis = "\n".join(" ".join(sentence) for sentence in h_sentences)
    reference = "\n".join(" ".join(sentence) for sentence in r_sentences)
    return _score("rougeLsum", hypothesis, reference).fmeasure
