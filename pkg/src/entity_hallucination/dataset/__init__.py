"""Corpus transforms: cleaning, length budgets, filtering, JAENS targets, statistics."""
