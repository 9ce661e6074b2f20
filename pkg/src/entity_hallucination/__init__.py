"""Entity-level hallucination metrics and mitigation transforms for summarization corpora."""

__version__ = "0.1.0"
