"""Flexible enumeration schemes for permutation pattern classes."""

from .discovery import SearchBounds, discover, find_rule, nonviable, verify_case
from .oracle import EnumSequence, brute_sequence
from .perms import Basis, avoids_all, contains, downfix_split, reduce, symmetry_class
from .scheme import Scheme, enumerate_terms, find_term, validate

__all__ = [
    "Basis",
    "EnumSequence",
    "Scheme",
    "SearchBounds",
    "avoids_all",
    "brute_sequence",
    "contains",
    "discover",
    "downfix_split",
    "enumerate_terms",
    "find_rule",
    "find_term",
    "nonviable",
    "reduce",
    "symmetry_class",
    "validate",
    "verify_case",
]
__version__ = "0.1.0"
