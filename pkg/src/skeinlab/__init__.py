"""Exact link invariants: Jones, Homflypt, and the two-variable theta invariant."""

__version__ = "0.1.0"
