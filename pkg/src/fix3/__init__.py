"""Verification engine for permutation groups in which every 4-point
stabilizer is trivial but some 3-point stabilizer is not."""

__version__ = "0.1.0"
