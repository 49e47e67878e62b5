"""Weight-conjecture invariants of saturated fusion systems."""

__version__ = "0.1.0"
