"""Corpus streaming: JSONL reading/writing and the ordered parallel runner."""
