"""Entity mentions and inventories, and the extractors that produce them."""
