"""Python surface for the cigrate migration core."""

from ._core import (
    cosine_similarity,
    crystal_bleu,
    detect_dialect,
    exact_match,
    extract_yaml,
    lint,
    migrate,
    normalize,
    tokenize,
)

__all__ = [
    "cosine_similarity",
    "crystal_bleu",
    "detect_dialect",
    "exact_match",
    "extract_yaml",
    "lint",
    "migrate",
    "normalize",
    "tokenize",
]
