"""Exact computations with nil-DAHA, Heisenberg normal forms and Darboux embeddings."""
