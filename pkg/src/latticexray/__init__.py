__all__ = ["cli", "lattice_core", "projection", "search", "theorems", "verification"]
