"""Pytest configuration and shared fixtures."""
import json
from pathlib import Path
from typing import Callable

import pytest

from src.entity_hallucination.entities.extractors import AnnotationExtractor, HeuristicExtractor
from src.entity_hallucination.matching.policy import MatchPolicy
from src.entity_hallucination.textproc.stopwords import StopwordSet, load_stopwords

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def stopwords() -> StopwordSet:
    """Built-in English stop-word list."""
    return load_stopwords()


@pytest.fixture
def policy() -> MatchPolicy:
    """Default match policy."""
    return MatchPolicy()


@pytest.fixture
def heuristic(stopwords: StopwordSet) -> HeuristicExtractor:
    return HeuristicExtractor(stopwords)


@pytest.fixture
def annotations() -> AnnotationExtractor:
    return AnnotationExtractor()


@pytest.fixture
def write_corpus(tmp_path: Path) -> Callable[..., Path]:
    """Write records as a JSON Lines corpus.

    Args:
        tmp_path: Pytest temporary directory

    Returns:
        Function taking a list of dicts (and an optional file name) and returning the path
    """
    def _write(records: list[dict], name: str = "corpus.jsonl") -> Path:
        path = tmp_path / name
        with open(path, "w", encoding="utf-8") as f:
            for record in records:
                f.write(json.dumps(record) + "\n")
        return path

    return _write


@pytest.fixture
def case_study() -> dict:
    """Published entity lists of one case-study article and its summaries."""
    with open(FIXTURES / "case_study_entities.json", encoding="utf-8") as f:
        return json.load(f)


@pytest.fixture
def mock_settings(monkeypatch):
    """Override settings for testing.

    Args:
        monkeypatch: Pytest monkeypatch fixture

    Returns:
        Settings instance with small batches and a single worker
    """
    from src.entity_hallucination.config import settings

    monkeypatch.setattr(settings, "batch_size", 4)
    monkeypatch.setattr(settings, "jobs", 1)
    return settings
