"""Subcommand handlers."""

from src.entity_hallucination.handlers import commands

__all__ = ["commands"]
