"""Macdonald piece polynomials, HHL, nabla and the Loehr-Warrington formula in exact arithmetic."""

__version__ = "0.1.0"
