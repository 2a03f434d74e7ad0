"""Lexicographic subshifts, kneading entropy and renormalisation for doubling-map holes."""
from .entropy import EntropyResult, entropy_of, kneading_series, renewal_entropy
from .renorm import Classification, Hole, classify
from .seq import EPSeq, admissible, expand, lex_cmp, mirror, shift

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "EPSeq",
    "EntropyResult",
    "Hole",
    "admissible",
    "classify",
    "entropy_of",
    "expand",
    "kneading_series",
    "lex_cmp",
    "mirror",
    "renewal_entropy",
    "shift",
]
