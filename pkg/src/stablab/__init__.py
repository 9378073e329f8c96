"""Exact symbolic toolkit: stable envelopes, geometric R-matrices, quantum
connections, a truncated quantum Heisenberg algebra, and hyperplane
arrangement groupoids, all over exact multivariate rational-function fields."""

__version__ = "0.1.0"
