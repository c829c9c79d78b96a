"""Exact verification of the computable identities behind the quintic open mirror story."""

__version__ = "0.1.0"
