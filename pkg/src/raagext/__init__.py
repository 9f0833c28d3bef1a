"""Right-angled Artin group embeddings through extension graphs."""
