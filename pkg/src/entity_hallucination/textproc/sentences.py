"""Rule-based sentence splitting."""
import re

# Terminal punctuation followed by whitespace or end of text. A period glued
# to the next word ("definitely.materials") is not a boundary.
_BOUNDARY = re.compile(r"[.!?]+(?=\s|$)")

# Words whose trailing period does not end a sentence
ABBREVIATIONS: frozenset[str] = frozenset({
    "fig", "figs", "eq", "eqs", "ref", "refs", "dr", "mr", "mrs", "ms",
    "prof", "vs", "approx", "e.g", "i.e", "cf",
})


def _ends_with_abbreviation(prefix: str) -> bool:
    words = prefix.split()
    if not words:
        return False
    last = words[-1].lower().lstrip("([{\"'")
    if last in ABBREVIATIONS:
        return True
    return last == "al" and len(words) > 1 and words[-2].lower() == "et"


def split_sentences(raw: str) -> list[str]:
    """Split text into sentences at '.', '!' and '?'.

    A boundary needs whitespace (or the end of text) after the delimiter. A
    single period after a guarded abbreviation ("fig.", "et al.") is skipped.
    Sentences are returned stripped; joining them drops only whitespace.

    Examples:
        split_sentences("a b. c d.")          # ["a b.", "c d."]
        split_sentences("fig. 1 shows x.")    # ["fig. 1 shows x."]
    """
    sentences: list[str] = []
    start = 0

    for match in _BOUNDARY.finditer(raw):
        if match.group() == "." and _ends_with_abbreviation(raw[start:match.start()]):
            continue
        piece = raw[start:match.end()].strip()
        if piece:
            sentences.append(piece)
        start = match.end()

    tail = raw[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences
