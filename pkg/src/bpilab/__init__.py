"""Exact character theory and pi-character sets for small permutation groups."""
from __future__ import annotations

from .primes import PrimeSet
from .permgrp import Permutation, PermGroup, group_from_generators

__version__ = "0.1.0"

__all__ = ["PrimeSet", "Permutation", "PermGroup", "group_from_generators", "__version__"]
