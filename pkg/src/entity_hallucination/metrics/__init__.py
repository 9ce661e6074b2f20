"""Entity-level factual-consistency metrics, ROUGE and corpus aggregation."""
