"""Text normalization, tokenization, sentence splitting and stop words."""
