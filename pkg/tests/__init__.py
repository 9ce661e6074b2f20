"""Test package for entity-hallucination."""
