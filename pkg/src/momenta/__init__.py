"""Exact moment/cumulant calculus over partitions, permutations and random measures."""

from fractions import Fraction

from .errors import DomainError, PoleError, VerificationError

__all__ = ["Fraction", "DomainError", "PoleError", "VerificationError"]
__version__ = "0.1.0"
