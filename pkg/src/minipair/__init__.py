"""Minimal-pair generation and LM acceptability evaluation toolkit."""

__version__ = "0.1.0"
