"""Partial n-gram matching of entities against texts and key sets."""
