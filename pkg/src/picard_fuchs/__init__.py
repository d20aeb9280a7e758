"""Exact Griffiths-Dwork Picard-Fuchs computations and modular identity checks."""

__version__ = "0.1.0"
